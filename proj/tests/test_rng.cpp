// Copyright 2026 The quditlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quditlab/rng.hpp"

#include <set>
#include <vector>

#include "doctest.h"

using quditlab::Philox4x32;

TEST_CASE("philox known answers") {
  // Reference vectors for the Philox4x32-10 function.
  auto r0 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(r0[0] == 0x6627e8d5u);
  CHECK(r0[1] == 0xe169c58du);
  CHECK(r0[2] == 0xbc57ac4cu);
  CHECK(r0[3] == 0x9b00dbd8u);

  auto r1 = Philox4x32::block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(r1[0] == 0x408f276du);
  CHECK(r1[1] == 0x41c83b0eu);
  CHECK(r1[2] == 0xa20bc7c6u);
  CHECK(r1[3] == 0x6d5451fdu);

  auto r2 = Philox4x32::block(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(r2[0] == 0xd16cfe09u);
  CHECK(r2[1] == 0x94fdccebu);
  CHECK(r2[2] == 0x5001e420u);
  CHECK(r2[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(42, 7);
  Philox4x32 b(42, 7);
  Philox4x32 c(42, 8);
  Philox4x32 d(43, 7);
  bool c_differs = false;
  bool d_differs = false;
  for (int i = 0; i < 64; i++) {
    uint32_t va = a.next_u32();
    CHECK(va == b.next_u32());
    c_differs = c_differs || va != c.next_u32();
    d_differs = d_differs || va != d.next_u32();
  }
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("substreams are reproducible and distinct") {
  Philox4x32 root(12345);
  Philox4x32 s1 = root.substream(3, 4);
  Philox4x32 s2 = root.substream(3, 4);
  Philox4x32 s3 = root.substream(4, 3);
  Philox4x32 s4 = root.substream(3, 5);
  bool s3_differs = false;
  bool s4_differs = false;
  for (int i = 0; i < 64; i++) {
    uint32_t v = s1.next_u32();
    CHECK(v == s2.next_u32());
    s3_differs = s3_differs || v != s3.next_u32();
    s4_differs = s4_differs || v != s4.next_u32();
  }
  CHECK(s3_differs);
  CHECK(s4_differs);
  // Drawing from the root must not change what its substreams produce.
  Philox4x32 root2(12345);
  for (int i = 0; i < 17; i++) {
    root2.next_u32();
  }
  Philox4x32 s5 = root2.substream(3, 4);
  Philox4x32 s6 = root.substream(3, 4);
  for (int i = 0; i < 16; i++) {
    CHECK(s5.next_u32() == s6.next_u32());
  }
}

TEST_CASE("next_double lies in [0, 1) and is well spread") {
  Philox4x32 rng(2026);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; i++) {
    double x = rng.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  // Mean of U[0,1) is 1/2 with standard error ~ 1/sqrt(12 n) ~ 0.002.
  CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("next_below is unbiased over small ranges") {
  Philox4x32 rng(99);
  std::vector<long> counts(5, 0);
  const long n = 50000;
  for (long i = 0; i < n; i++) {
    uint64_t v = rng.next_below(5);
    REQUIRE(v < 5);
    counts[static_cast<size_t>(v)]++;
  }
  for (long c : counts) {
    // Each bin expects 10000 with sigma ~ 89; allow 6 sigma.
    CHECK(std::abs(c - n / 5) < 550);
  }
  CHECK(rng.next_below(1) == 0);
}

TEST_CASE("next_u64 stitches two u32 draws deterministically") {
  Philox4x32 a(7);
  Philox4x32 b(7);
  uint32_t hi = b.next_u32();
  uint32_t lo = b.next_u32();
  uint64_t expected = (static_cast<uint64_t>(hi) << 32) | lo;
  CHECK(a.next_u64() == expected);
}

TEST_CASE("splitmix64 reference values") {
  // First two outputs of the standard sequence seeded at 0.
  CHECK(quditlab::splitmix64(0) == 0xe220a8397b1dcdafull);
  CHECK(quditlab::splitmix64(0x9E3779B97F4A7C15ull) == 0x6e789e6aa1b965f4ull);
  CHECK(quditlab::splitmix64(1) != quditlab::splitmix64(2));
}
