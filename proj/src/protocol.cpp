// Copyright 2026 The reap-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reap_sim/protocol.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>

namespace reap_sim
{

namespace
{

[[noreturn]] void fail(const std::string & code, const std::string & message)
{
  throw RemoteError(code, message);
}

[[noreturn]] void sys_fail(const std::string & what)
{
  throw std::runtime_error(what + ": " + std::strerror(errno));
}

std::uint64_t need_u64(const Json & payload, const char * key)
{
  if (!payload.contains(key) || !payload.at(key).is_number_unsigned()) {
    fail("invalid-request", std::string("'") + key + "' must be a non-negative integer");
  }
  return payload.at(key).get<std::uint64_t>();
}

}  // namespace

std::shared_ptr<const Scenario> ScenarioCatalog::get(const std::string & name)
{
  namespace fs = std::filesystem;
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(name); it != cache_.end()) {
    return it->second;
  }
  std::shared_ptr<const Scenario> sc;
  if (!dir_.empty() && name.find("..") == std::string::npos) {
    for (const auto & candidate : {fs::path(dir_) / (name + ".json"), fs::path(dir_) / name}) {
      if (fs::is_regular_file(candidate)) {
        sc = std::make_shared<const Scenario>(load_scenario_file(candidate.string()));
        break;
      }
    }
  }
  if (!sc) {
    sc = std::make_shared<const Scenario>(presets::by_name(name));
  }
  cache_.emplace(name, sc);
  return sc;
}

LineSocket::~LineSocket() { close(); }

LineSocket::LineSocket(LineSocket && other) noexcept
: fd_(other.fd_), buf_(std::move(other.buf_)), pos_(other.pos_)
{
  other.fd_ = -1;
}

LineSocket & LineSocket::operator=(LineSocket && other) noexcept
{
  if (this != &other) {
    close();
    fd_ = other.fd_;
    buf_ = std::move(other.buf_);
    pos_ = other.pos_;
    other.fd_ = -1;
  }
  return *this;
}

void LineSocket::close()
{
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void LineSocket::shutdown()
{
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
  }
}

LineSocket::ReadStatus LineSocket::read_line(std::string & line, std::size_t max_line)
{
  bool oversize = false;
  char chunk[65536];
  for (;;) {
    const auto nl = buf_.find('\n', pos_);
    if (nl != std::string::npos) {
      if (oversize) {
        pos_ = nl + 1;
        return ReadStatus::kOversize;
      }
      line.assign(buf_, pos_, nl - pos_);
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      pos_ = nl + 1;
      if (pos_ > (std::size_t{1} << 20)) {
        buf_.erase(0, pos_);
        pos_ = 0;
      }
      return ReadStatus::kLine;
    }
    if (buf_.size() - pos_ > max_line) {
      oversize = true;
      buf_.clear();
      pos_ = 0;
    }
    if (fd_ < 0) {
      return ReadStatus::kClosed;
    }
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      return ReadStatus::kClosed;
    }
    buf_.append(chunk, static_cast<std::size_t>(n));
  }
}

bool LineSocket::write_line(std::string_view line)
{
  if (fd_ < 0) {
    return false;
  }
  std::string frame;
  frame.reserve(line.size() + 1);
  frame.append(line);
  frame.push_back('\n');
  std::size_t sent = 0;
  while (sent < frame.size()) {
    const ssize_t n = ::send(fd_, frame.data() + sent, frame.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      return false;
    }
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

LineSocket connect_tcp(const std::string & host, std::uint16_t port)
{
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo * res = nullptr;
  const std::string service = std::to_string(port);
  if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw std::runtime_error("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo * p = res; p; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
    if (fd < 0) {
      continue;
    }
    if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) {
      break;
    }
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) {
    sys_fail("cannot connect to " + host + ":" + service);
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return LineSocket(fd);
}

Listener::Listener(std::uint16_t port, bool any_interface)
{
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) {
    sys_fail("socket");
  }
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(any_interface ? INADDR_ANY : INADDR_LOOPBACK);
  if (::bind(fd_, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0) {
    const int err = errno;
    ::close(fd_);
    errno = err;
    sys_fail("cannot bind port " + std::to_string(port));
  }
  if (::listen(fd_, 64) != 0) {
    sys_fail("listen");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

Listener::~Listener()
{
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

LineSocket Listener::accept()
{
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return LineSocket(fd);
    }
    if (errno != EINTR) {
      return LineSocket(-1);
    }
  }
}

void Listener::shutdown() { ::shutdown(fd_, SHUT_RDWR); }

Json ok_response(const Json & id, Json payload)
{
  return {{"id", id}, {"ok", true}, {"payload", std::move(payload)}};
}

Json error_response(const Json & id, const std::string & code, const std::string & message)
{
  return {{"id", id}, {"ok", false}, {"error", {{"code", code}, {"message", message}}}};
}

std::string Session::handle_line(std::string_view line)
{
  Json request;
  try {
    request = Json::parse(line);
  } catch (const Json::parse_error & e) {
    return error_response(nullptr, "parse-error", e.what()).dump();
  }
  return handle(request).dump();
}

Json Session::handle(const Json & request)
{
  const Json id = request.is_object() && request.contains("id") ? request.at("id") : Json(nullptr);
  if (!request.is_object() || !request.contains("cmd") || !request.at("cmd").is_string()) {
    return error_response(id, "invalid-request", "request must be an object with a string 'cmd'");
  }
  const Json payload = request.contains("payload") ? request.at("payload") : Json::object();
  if (!payload.is_object()) {
    return error_response(id, "invalid-request", "'payload' must be an object");
  }
  try {
    return ok_response(id, dispatch(request.at("cmd").get<std::string>(), payload));
  } catch (const RemoteError & e) {
    return error_response(id, e.code(), e.what());
  } catch (const Error & e) {
    return error_response(id, to_string(e.code()), e.what());
  } catch (const Json::exception & e) {
    return error_response(id, "invalid-request", e.what());
  } catch (const std::exception & e) {
    return error_response(id, "internal-error", e.what());
  }
}

Session::Slot & Session::find(const Json & payload)
{
  const auto id = need_u64(payload, "env_id");
  auto it = envs_.find(id);
  if (it == envs_.end()) {
    fail("no-such-env", "no environment " + std::to_string(id) + " on this connection");
  }
  return it->second;
}

Json Session::dispatch(const std::string & cmd, const Json & payload)
{
  if (cmd == "spec") {
    return env_spec(ctx_.config);
  }
  if (cmd == "make") {
    if (!payload.contains("scenario") || !payload.at("scenario").is_string()) {
      fail("invalid-request", "'scenario' must be a string");
    }
    EnvConfig cfg = ctx_.config;
    if (payload.contains("config")) {
      cfg = env_config_from_json(payload.at("config"), cfg);
    }
    const std::uint64_t seed = payload.contains("seed") ? need_u64(payload, "seed") : 0;
    auto env = std::make_unique<Env>(ctx_.catalog->get(payload.at("scenario").get<std::string>()), cfg);
    const std::uint64_t id = ctx_.next_env_id.fetch_add(1);
    envs_.emplace(id, Slot{std::move(env), Rng(seed)});
    return {{"env_id", id}};
  }
  if (cmd == "reset") {
    Slot & slot = find(payload);
    const std::uint64_t seed = payload.contains("seed") ? need_u64(payload, "seed") : slot.seeds.next_u64();
    ResetOptions opts;
    if (payload.contains("options")) {
      const Json & o = payload.at("options");
      if (!o.is_object()) {
        fail("invalid-request", "'options' must be an object");
      }
      if (o.contains("slot_id")) {
        opts.slot_id = o.at("slot_id").get<int>();
      }
      if (o.contains("fixed_start")) {
        opts.fixed_start = state_from_json(o.at("fixed_start"));
      }
    }
    const Observation obs = slot.env->reset(seed, opts);
    const auto & hint = slot.env->expert_hint();
    return {
      {"seed", seed},
      {"slot_id", slot.env->target_slot_id()},
      {"state", to_json(slot.env->state())},
      {"expert_action", hint ? to_json(*hint) : Json(nullptr)},
      {"observation", to_json(obs)}};
  }
  if (cmd == "step") {
    Slot & slot = find(payload);
    if (!payload.contains("action")) {
      fail("invalid-request", "'action' is required");
    }
    return to_json(slot.env->step(action_from_json(payload.at("action"))));
  }
  if (cmd == "render") {
    return to_json(find(payload).env->render_bev());
  }
  if (cmd == "close") {
    find(payload);
    envs_.erase(payload.at("env_id").get<std::uint64_t>());
    return Json::object();
  }
  fail("unknown-command", "unknown command '" + cmd + "'");
}

Server::Server(EnvConfig config, std::shared_ptr<ScenarioCatalog> catalog)
{
  config.validate();
  ctx_.config = std::move(config);
  ctx_.catalog = catalog ? std::move(catalog) : std::make_shared<ScenarioCatalog>();
}

Server::~Server() { stop(); }

std::uint16_t Server::start(std::uint16_t port, bool any_interface)
{
  listener_ = std::make_unique<Listener>(port, any_interface);
  acceptor_ = std::thread([this] { accept_loop(); });
  return listener_->port();
}

void Server::accept_loop()
{
  while (!stopping_) {
    LineSocket s = listener_->accept();
    if (!s.is_open()) {
      if (stopping_) {
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
      continue;
    }
    auto sock = std::make_shared<LineSocket>(std::move(s));
    std::lock_guard lock(mutex_);
    live_.insert(sock);
    workers_.emplace_back([this, sock] { serve_connection(sock); });
  }
}

void Server::serve_connection(std::shared_ptr<LineSocket> sock)
{
  Session session(ctx_);
  std::string line;
  for (;;) {
    const auto st = sock->read_line(line);
    if (st == LineSocket::ReadStatus::kClosed) {
      break;
    }
    const std::string reply = st == LineSocket::ReadStatus::kOversize
                                ? error_response(nullptr, "oversize-line", "request line too long").dump()
                                : session.handle_line(line);
    if (!sock->write_line(reply)) {
      break;
    }
  }
  std::lock_guard lock(mutex_);
  sock->shutdown();
  live_.erase(sock);
}

void Server::wait()
{
  while (!stopping_) {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

void Server::stop()
{
  if (stopping_.exchange(true)) {
    return;
  }
  if (listener_) {
    listener_->shutdown();
  }
  if (acceptor_.joinable()) {
    acceptor_.join();
  }
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mutex_);
    for (const auto & s : live_) {
      s->shutdown();
    }
    workers.swap(workers_);
  }
  for (auto & t : workers) {
    t.join();
  }
}

Client::Client(const std::string & host, std::uint16_t port) : sock_(connect_tcp(host, port)) {}

std::string Client::read_raw()
{
  std::string line;
  if (sock_.read_line(line) != LineSocket::ReadStatus::kLine) {
    throw Error(ErrorCode::kParseError, "connection closed by server");
  }
  return line;
}

Json Client::request(const std::string & cmd, const Json & payload)
{
  const std::int64_t id = next_id_++;
  const Json req = {{"id", id}, {"cmd", cmd}, {"payload", payload}};
  if (!sock_.write_line(req.dump())) {
    throw Error(ErrorCode::kParseError, "connection closed by server");
  }
  Json resp = Json::parse(read_raw());
  if (!resp.is_object() || resp.value("id", Json(nullptr)) != Json(id)) {
    throw Error(ErrorCode::kParseError, "response id does not match request");
  }
  return resp;
}

Json Client::call(const std::string & cmd, const Json & payload)
{
  Json resp = request(cmd, payload);
  if (!resp.value("ok", false)) {
    const Json & e = resp.at("error");
    throw RemoteError(e.value("code", std::string("unknown")), e.value("message", std::string{}));
  }
  return resp.at("payload");
}

}  // namespace reap_sim
