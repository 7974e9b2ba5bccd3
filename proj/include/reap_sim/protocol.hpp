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

#ifndef REAP_SIM__PROTOCOL_HPP_
#define REAP_SIM__PROTOCOL_HPP_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "reap_sim/env.hpp"
#include "reap_sim/json_io.hpp"

namespace reap_sim
{

/// Scenario lookup by name: `<dir>/<name>.json`, then `<dir>/<name>`, then
/// the built-in presets. Loaded scenarios are cached and shared read-only.
class ScenarioCatalog
{
public:
  explicit ScenarioCatalog(std::string dir = {}) : dir_(std::move(dir)) {}
  std::shared_ptr<const Scenario> get(const std::string & name);

private:
  std::string dir_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Scenario>> cache_;
};

/// Newline-delimited frames over a connected socket. Lines longer than
/// max_line are consumed and reported as oversize.
class LineSocket
{
public:
  enum class ReadStatus { kLine, kOversize, kClosed };

  explicit LineSocket(int fd = -1) : fd_(fd) {}
  ~LineSocket();
  LineSocket(const LineSocket &) = delete;
  LineSocket & operator=(const LineSocket &) = delete;
  LineSocket(LineSocket && other) noexcept;
  LineSocket & operator=(LineSocket && other) noexcept;

  ReadStatus read_line(std::string & line, std::size_t max_line = std::size_t{1} << 26);
  /// Appends the newline. Returns false when the peer is gone.
  bool write_line(std::string_view line);
  void close();
  void shutdown();
  int fd() const { return fd_; }
  bool is_open() const { return fd_ >= 0; }

private:
  int fd_;
  std::string buf_;
  std::size_t pos_{0};
};

LineSocket connect_tcp(const std::string & host, std::uint16_t port);

/// Bound, listening socket on 127.0.0.1 unless `any_interface`.
class Listener
{
public:
  Listener(std::uint16_t port, bool any_interface = false);
  ~Listener();
  Listener(const Listener &) = delete;
  Listener & operator=(const Listener &) = delete;

  std::uint16_t port() const { return port_; }
  /// Blocks; returns a closed socket after shutdown().
  LineSocket accept();
  void shutdown();

private:
  int fd_{-1};
  std::uint16_t port_{0};
};

Json ok_response(const Json & id, Json payload);
Json error_response(const Json & id, const std::string & code, const std::string & message);

struct ServerContext
{
  EnvConfig config;
  std::shared_ptr<ScenarioCatalog> catalog;
  std::atomic<std::uint64_t> next_env_id{1};
};

/// Per-connection command dispatcher. Environments created on a session are
/// only reachable through it.
class Session
{
public:
  explicit Session(ServerContext & ctx) : ctx_(ctx) {}

  /// Handles one request line and returns the response line. Never throws
  /// for bad input.
  std::string handle_line(std::string_view line);
  Json handle(const Json & request);
  std::size_t env_count() const { return envs_.size(); }

private:
  struct Slot
  {
    std::unique_ptr<Env> env;
    Rng seeds;
  };
  Json dispatch(const std::string & cmd, const Json & payload);
  Slot & find(const Json & payload);

  ServerContext & ctx_;
  std::map<std::uint64_t, Slot> envs_;
};

class Server
{
public:
  Server(EnvConfig config, std::shared_ptr<ScenarioCatalog> catalog);
  ~Server();

  /// Binds and starts accepting in the background. Port 0 picks a free port;
  /// the bound port is returned.
  std::uint16_t start(std::uint16_t port, bool any_interface = false);
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

private:
  void accept_loop();
  void serve_connection(std::shared_ptr<LineSocket> sock);

  ServerContext ctx_;
  std::unique_ptr<Listener> listener_;
  std::thread acceptor_;
  std::mutex mutex_;
  std::vector<std::thread> workers_;
  std::set<std::shared_ptr<LineSocket>> live_;
  std::atomic<bool> stopping_{false};
};

/// Error response received by a client; code() is the wire error code.
class RemoteError : public std::runtime_error
{
public:
  RemoteError(std::string code, const std::string & message)
  : std::runtime_error(code + ": " + message), code_(std::move(code))
  {
  }
  const std::string & code() const { return code_; }

private:
  std::string code_;
};

/// Blocking request/response client for the environment protocol.
class Client
{
public:
  Client(const std::string & host, std::uint16_t port);

  /// Sends {id, cmd, payload}; returns the full response object. Throws
  /// parse-error when the connection drops.
  Json request(const std::string & cmd, const Json & payload = Json::object());
  /// Like request but unwraps the payload and throws RemoteError on ok = false.
  Json call(const std::string & cmd, const Json & payload = Json::object());
  /// Raw frame access for framing tests.
  bool send_raw(std::string_view line) { return sock_.write_line(line); }
  std::string read_raw();

private:
  LineSocket sock_;
  std::int64_t next_id_{1};
};

}  // namespace reap_sim

#endif  // REAP_SIM__PROTOCOL_HPP_
