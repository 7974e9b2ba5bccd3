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

#include <gtest/gtest.h>

#include <random>

#include "reap_sim/codec.hpp"
#include "reap_sim/common.hpp"

namespace reap_sim
{
namespace
{

std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

TEST(Base64, KnownVectors)
{
  EXPECT_EQ(base64_encode(bytes("")), "");
  EXPECT_EQ(base64_encode(bytes("f")), "Zg==");
  EXPECT_EQ(base64_encode(bytes("fo")), "Zm8=");
  EXPECT_EQ(base64_encode(bytes("foo")), "Zm9v");
  EXPECT_EQ(base64_encode(bytes("foobar")), "Zm9vYmFy");
  EXPECT_EQ(base64_decode("Zm9vYg=="), bytes("foob"));
}

TEST(Base64, RejectsGarbage)
{
  EXPECT_THROW(base64_decode("Zm9"), Error);
  EXPECT_THROW(base64_decode("Zm9v!A=="), Error);
}

TEST(Base64, RandomRoundTrip)
{
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint8_t> b(rng() % 100);
    for (auto & x : b) {
      x = static_cast<std::uint8_t>(rng());
    }
    EXPECT_EQ(base64_decode(base64_encode(b)), b);
  }
}

TEST(F32le, RoundTripAndLayout)
{
  const std::vector<float> v{1.0f, -0.5f, 3.25e-7f};
  EXPECT_EQ(decode_f32le(encode_f32le(v)), v);
  // 1.0f is 00 00 80 3f little-endian.
  EXPECT_EQ(base64_decode(encode_f32le(std::vector<float>{1.0f})), (std::vector<std::uint8_t>{0, 0, 0x80, 0x3f}));
  EXPECT_THROW(decode_f32le(base64_encode(bytes("abc"))), Error);
}

TEST(Fnv, KnownValues)
{
  EXPECT_EQ(fnv1a64(bytes("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64(bytes("a")), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace reap_sim
