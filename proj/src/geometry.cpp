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

#include "reap_sim/geometry.hpp"

#include <algorithm>
#include <limits>

namespace reap_sim
{

const char * to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kInvalidParameter:
      return "invalid-parameter";
    case ErrorCode::kDegenerateSlot:
      return "degenerate-slot";
    case ErrorCode::kDegenerateRect:
      return "degenerate-rect";
    case ErrorCode::kOutOfMap:
      return "out-of-map";
    case ErrorCode::kParseError:
      return "parse-error";
    case ErrorCode::kValidationError:
      return "validation-error";
    case ErrorCode::kSpawnFailure:
      return "spawn-failure";
    case ErrorCode::kEpisodeTerminated:
      return "episode-terminated";
    case ErrorCode::kEmptyBuffer:
      return "empty-buffer";
    case ErrorCode::kMalformedTrace:
      return "malformed-trace";
  }
  return "unknown";
}

double polygon_area(std::span<const Vec2> poly)
{
  const std::size_t n = poly.size();
  if (n < 3) {
    return 0.0;
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += poly[i].cross(poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Polygon clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip)
{
  Polygon output(subject.begin(), subject.end());
  const std::size_t m = clip.size();
  for (std::size_t e = 0; e < m && !output.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 b = clip[(e + 1) % m];
    const Vec2 edge = b - a;
    // Inside means left of (or on) the directed edge a->b.
    const auto side = [&](const Vec2 & p) { return edge.cross(p - a); };

    Polygon input;
    input.swap(output);
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 cur = input[i];
      const Vec2 prev = input[(i + n - 1) % n];
      const double sc = side(cur);
      const double sp = side(prev);
      if (sc >= 0.0) {
        if (sp < 0.0) {
          output.push_back(prev + (cur - prev) * (sp / (sp - sc)));
        }
        output.push_back(cur);
      } else if (sp >= 0.0) {
        output.push_back(prev + (cur - prev) * (sp / (sp - sc)));
      }
    }
  }
  return output;
}

std::array<Vec2, 2> bounding_box(std::span<const Vec2> pts)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  Vec2 lo{inf, inf};
  Vec2 hi{-inf, -inf};
  for (const auto & p : pts) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return {lo, hi};
}

}  // namespace reap_sim
