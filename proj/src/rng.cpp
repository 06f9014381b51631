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

#include <stdexcept>

namespace quditlab {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

constexpr uint32_t PHILOX_M0 = 0xD2511F53u;
constexpr uint32_t PHILOX_M1 = 0xCD9E8D57u;
constexpr uint32_t PHILOX_W0 = 0x9E3779B9u;
constexpr uint32_t PHILOX_W1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t &hi, uint32_t &lo) {
  uint64_t p = static_cast<uint64_t>(a) * static_cast<uint64_t>(b);
  hi = static_cast<uint32_t>(p >> 32);
  lo = static_cast<uint32_t>(p);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32::block(
    const std::array<uint32_t, 4> &counter, const std::array<uint32_t, 2> &key) {
  std::array<uint32_t, 4> ctr = counter;
  uint32_t k0 = key[0];
  uint32_t k1 = key[1];
  for (int round = 0; round < 10; round++) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(PHILOX_M0, ctr[0], hi0, lo0);
    mulhilo(PHILOX_M1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += PHILOX_W0;
    k1 += PHILOX_W1;
  }
  return ctr;
}

Philox4x32::Philox4x32(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream) {}

Philox4x32 Philox4x32::substream(uint64_t a, uint64_t b) const {
  uint64_t mixed = splitmix64(stream_ ^ splitmix64(a ^ splitmix64(b)));
  return Philox4x32(seed_, mixed);
}

void Philox4x32::refill() {
  std::array<uint32_t, 4> counter = {
      static_cast<uint32_t>(block_index_),
      static_cast<uint32_t>(block_index_ >> 32),
      static_cast<uint32_t>(stream_),
      static_cast<uint32_t>(stream_ >> 32),
  };
  std::array<uint32_t, 2> key = {
      static_cast<uint32_t>(seed_),
      static_cast<uint32_t>(seed_ >> 32),
  };
  buffer_ = block(counter, key);
  block_index_++;
  buffer_pos_ = 0;
}

uint32_t Philox4x32::next_u32() {
  if (buffer_pos_ >= 4) {
    refill();
  }
  return buffer_[buffer_pos_++];
}

uint64_t Philox4x32::next_u64() {
  uint64_t hi = next_u32();
  uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double Philox4x32::next_double() {
  // 53 bits: 0x1p-53 * [0, 2^53).
  uint64_t bits = next_u64() >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

uint64_t Philox4x32::next_below(uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("next_below: n must be positive");
  }
  uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) {
      return r % n;
    }
  }
}

}  // namespace quditlab
