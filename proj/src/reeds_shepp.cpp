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

#include "reap_sim/reeds_shepp.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace reap_sim
{

const char * to_string(SegmentKind kind)
{
  switch (kind) {
    case SegmentKind::kLeft:
      return "L";
    case SegmentKind::kStraight:
      return "S";
    case SegmentKind::kRight:
      return "R";
  }
  return "?";
}

namespace
{

// All words are solved in the normalized frame: start at the origin with
// heading 0, unit turning radius, goal at (x, y, phi).

constexpr double kZero = 10 * std::numeric_limits<double>::epsilon();
constexpr double kHalfPi = 0.5 * kPi;
constexpr SegmentKind L = SegmentKind::kLeft;
constexpr SegmentKind S = SegmentKind::kStraight;
constexpr SegmentKind R = SegmentKind::kRight;

// Maps into [-pi, pi] like the reference construction.
double mod2pi(double x)
{
  double v = std::fmod(x, kTwoPi);
  if (v < -kPi) {
    v += kTwoPi;
  } else if (v > kPi) {
    v -= kTwoPi;
  }
  return v;
}

void polar(double x, double y, double & r, double & theta)
{
  r = std::sqrt(x * x + y * y);
  theta = std::atan2(y, x);
}

void tau_omega(double u, double v, double xi, double eta, double phi, double & tau, double & omega)
{
  const double delta = mod2pi(u - v);
  const double a = std::sin(u) - std::sin(delta);
  const double b = std::cos(u) - std::cos(delta) - 1.0;
  const double t1 = std::atan2(eta * a - xi * b, xi * a + eta * b);
  const double t2 = 2.0 * (std::cos(delta) - std::cos(v) - std::cos(u)) + 3.0;
  tau = (t2 < 0.0) ? mod2pi(t1 + kPi) : mod2pi(t1);
  omega = mod2pi(tau - u + v - phi);
}

// L+ S+ L+
bool lp_sp_lp(double x, double y, double phi, double & t, double & u, double & v)
{
  polar(x - std::sin(phi), y - 1.0 + std::cos(phi), u, t);
  if (t >= -kZero) {
    v = mod2pi(phi - t);
    return v >= -kZero;
  }
  return false;
}

// L+ S+ R+
bool lp_sp_rp(double x, double y, double phi, double & t, double & u, double & v)
{
  double t1 = 0.0;
  double u1 = 0.0;
  polar(x + std::sin(phi), y - 1.0 - std::cos(phi), u1, t1);
  u1 = u1 * u1;
  if (u1 >= 4.0) {
    u = std::sqrt(u1 - 4.0);
    const double theta = std::atan2(2.0, u);
    t = mod2pi(t1 + theta);
    v = mod2pi(t - phi);
    return t >= -kZero && v >= -kZero;
  }
  return false;
}

// L+ R- L
bool lp_rm_l(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x - std::sin(phi);
  const double eta = y - 1.0 + std::cos(phi);
  double u1 = 0.0;
  double theta = 0.0;
  polar(xi, eta, u1, theta);
  if (u1 <= 4.0) {
    u = -2.0 * std::asin(0.25 * u1);
    t = mod2pi(theta + 0.5 * u + kPi);
    v = mod2pi(phi - t + u);
    return t >= -kZero && u <= kZero;
  }
  return false;
}

// L+ R+ L- R-
bool lp_rup_lum_rm(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  const double rho = 0.25 * (2.0 + std::sqrt(xi * xi + eta * eta));
  if (rho <= 1.0) {
    u = std::acos(rho);
    tau_omega(u, -u, xi, eta, phi, t, v);
    return t >= -kZero && v <= kZero;
  }
  return false;
}

// L+ R- L- R+
bool lp_rum_lum_rp(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  const double rho = (20.0 - xi * xi - eta * eta) / 16.0;
  if (rho >= 0.0 && rho <= 1.0) {
    u = -std::acos(rho);
    if (u >= -kHalfPi) {
      tau_omega(u, u, xi, eta, phi, t, v);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

// L+ R-(pi/2) S- L-
bool lp_rm_sm_lm(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x - std::sin(phi);
  const double eta = y - 1.0 + std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(xi, eta, rho, theta);
  if (rho >= 2.0) {
    const double r = std::sqrt(rho * rho - 4.0);
    u = 2.0 - r;
    t = mod2pi(theta + std::atan2(r, -2.0));
    v = mod2pi(phi - kHalfPi - t);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

// L+ R-(pi/2) S- R-
bool lp_rm_sm_rm(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(-eta, xi, rho, theta);
  if (rho >= 2.0) {
    t = theta;
    u = 2.0 - rho;
    v = mod2pi(t + kHalfPi - phi);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

// L+ R-(pi/2) S- L-(pi/2) R+
bool lp_rm_s_lm_rp(double x, double y, double phi, double & t, double & u, double & v)
{
  const double xi = x + std::sin(phi);
  const double eta = y - 1.0 - std::cos(phi);
  double rho = 0.0;
  double theta = 0.0;
  polar(xi, eta, rho, theta);
  if (rho >= 2.0) {
    u = 4.0 - std::sqrt(rho * rho - 4.0);
    if (u <= kZero) {
      t = mod2pi(std::atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta));
      v = mod2pi(t - phi);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

struct Word
{
  std::array<SegmentKind, 5> kinds{};
  std::array<double, 5> lengths{};
  int count{0};
  double total{std::numeric_limits<double>::infinity()};
};

class Search
{
public:
  Search(double x, double y, double phi)
  : x_(x),
    y_(y),
    phi_(phi),
    xb_(x * std::cos(phi) + y * std::sin(phi)),
    yb_(x * std::sin(phi) - y * std::cos(phi))
  {
  }

  Word run()
  {
    csc();
    ccc();
    cccc();
    ccsc();
    ccscc();
    return best_;
  }

private:
  using Solver = bool (*)(double, double, double, double &, double &, double &);
  // Builds the word from the solved (t, u, v) for the canonical orientation.
  using Builder = Word (*)(double, double, double);

  void consider(Word w, bool flip, bool reflect, bool reverse)
  {
    if (flip) {
      for (int i = 0; i < w.count; ++i) {
        w.lengths[i] = -w.lengths[i];
      }
    }
    if (reflect) {
      for (int i = 0; i < w.count; ++i) {
        if (w.kinds[i] == L) {
          w.kinds[i] = R;
        } else if (w.kinds[i] == R) {
          w.kinds[i] = L;
        }
      }
    }
    if (reverse) {
      std::reverse(w.kinds.begin(), w.kinds.begin() + w.count);
      std::reverse(w.lengths.begin(), w.lengths.begin() + w.count);
    }
    w.total = 0.0;
    for (int i = 0; i < w.count; ++i) {
      w.total += std::abs(w.lengths[i]);
    }
    if (w.total < best_.total) {
      best_ = w;
    }
  }

  // Tries a solver under time flip and reflection, optionally also on the
  // reversed problem.
  void family(Solver solve, Builder build, bool with_reverse)
  {
    const int passes = with_reverse ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      const bool rev = pass == 1;
      const double x = rev ? xb_ : x_;
      const double y = rev ? yb_ : y_;
      double t = 0.0;
      double u = 0.0;
      double v = 0.0;
      if (solve(x, y, phi_, t, u, v)) {
        consider(build(t, u, v), false, false, rev);
      }
      if (solve(-x, y, -phi_, t, u, v)) {
        consider(build(t, u, v), true, false, rev);
      }
      if (solve(x, -y, -phi_, t, u, v)) {
        consider(build(t, u, v), false, true, rev);
      }
      if (solve(-x, -y, phi_, t, u, v)) {
        consider(build(t, u, v), true, true, rev);
      }
    }
  }

  static Word word3(SegmentKind a, SegmentKind b, SegmentKind c, double t, double u, double v)
  {
    Word w;
    w.kinds = {a, b, c, S, S};
    w.lengths = {t, u, v, 0.0, 0.0};
    w.count = 3;
    return w;
  }

  static Word word4(
    SegmentKind a, SegmentKind b, SegmentKind c, SegmentKind d, double l0, double l1, double l2,
    double l3)
  {
    Word w;
    w.kinds = {a, b, c, d, S};
    w.lengths = {l0, l1, l2, l3, 0.0};
    w.count = 4;
    return w;
  }

  void csc()
  {
    family(lp_sp_lp, [](double t, double u, double v) { return word3(L, S, L, t, u, v); }, false);
    family(lp_sp_rp, [](double t, double u, double v) { return word3(L, S, R, t, u, v); }, false);
  }

  void ccc()
  {
    family(lp_rm_l, [](double t, double u, double v) { return word3(L, R, L, t, u, v); }, true);
  }

  void cccc()
  {
    family(
      lp_rup_lum_rm,
      [](double t, double u, double v) { return word4(L, R, L, R, t, u, -u, v); }, false);
    family(
      lp_rum_lum_rp,
      [](double t, double u, double v) { return word4(L, R, L, R, t, u, u, v); }, false);
  }

  void ccsc()
  {
    family(
      lp_rm_sm_lm,
      [](double t, double u, double v) { return word4(L, R, S, L, t, -kHalfPi, u, v); }, true);
    family(
      lp_rm_sm_rm,
      [](double t, double u, double v) { return word4(L, R, S, R, t, -kHalfPi, u, v); }, true);
  }

  void ccscc()
  {
    family(
      lp_rm_s_lm_rp,
      [](double t, double u, double v) {
        Word w;
        w.kinds = {L, R, S, L, R};
        w.lengths = {t, -kHalfPi, u, -kHalfPi, v};
        w.count = 5;
        return w;
      },
      false);
  }

  double x_;
  double y_;
  double phi_;
  double xb_;
  double yb_;
  Word best_;
};

constexpr double kDropLength = 1e-10;

}  // namespace

RsPath rs_shortest_path(const VehicleState & start, const VehicleState & goal, double r_min)
{
  if (!(r_min > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "turning radius must be positive");
  }
  const double dx = goal.x - start.x;
  const double dy = goal.y - start.y;
  const double c = std::cos(start.psi);
  const double s = std::sin(start.psi);
  const double x = (c * dx + s * dy) / r_min;
  const double y = (-s * dx + c * dy) / r_min;
  const double phi = normalize_angle(goal.psi - start.psi);

  const Word w = Search(x, y, phi).run();

  RsPath path;
  path.r_min = r_min;
  for (int i = 0; i < w.count; ++i) {
    if (std::abs(w.lengths[i]) < kDropLength) {
      continue;
    }
    const double len = w.lengths[i] * r_min;
    if (
      !path.segments.empty() && path.segments.back().kind == w.kinds[i] &&
      (path.segments.back().signed_length > 0.0) == (len > 0.0)) {
      path.segments.back().signed_length += len;
    } else {
      path.segments.push_back({w.kinds[i], len});
    }
  }
  for (const auto & seg : path.segments) {
    path.total_length += std::abs(seg.signed_length);
  }
  return path;
}

VehicleState rs_endpoint(const RsPath & path, const VehicleState & start)
{
  VehicleState s = start;
  for (const auto & seg : path.segments) {
    s = advance_arc(s, seg.signed_length, path.curvature(seg.kind));
  }
  return s;
}

std::vector<VehicleState> rs_sample(const RsPath & path, const VehicleState & start, double step)
{
  if (!(step > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "sampling step must be positive");
  }
  std::vector<VehicleState> out{start};
  VehicleState seg_start = start;
  for (const auto & seg : path.segments) {
    const double kappa = path.curvature(seg.kind);
    const int k = std::max(1, static_cast<int>(std::ceil(std::abs(seg.signed_length) / step)));
    for (int j = 1; j <= k; ++j) {
      out.push_back(advance_arc(seg_start, seg.signed_length * j / k, kappa));
    }
    seg_start = out.back();
  }
  return out;
}

}  // namespace reap_sim
