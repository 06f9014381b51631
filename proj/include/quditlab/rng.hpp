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

#ifndef QUDITLAB_RNG_HPP
#define QUDITLAB_RNG_HPP

#include <array>
#include <cstdint>

namespace quditlab {

/// SplitMix64 finalizer. Used to derive well-separated stream identifiers
/// from small integers before they are fed into the counter-based generator.
uint64_t splitmix64(uint64_t x);

/// Philox4x32-10 counter-based pseudo-random generator.
///
/// The generator is a pure function of (key, counter): every 128-bit counter
/// value yields an independent block of four 32-bit words. Streams are
/// addressed as (seed, stream): the seed forms the 64-bit key and the stream
/// identifier occupies the high half of the counter, so distinct streams of
/// the same seed never overlap. This makes shot sampling reproducible and
/// trivially parallelizable: any (setting, shot-block) pair can be mapped to
/// its own stream without coordination.
class Philox4x32 {
 public:
  explicit Philox4x32(uint64_t seed, uint64_t stream = 0);

  /// Derives a child generator with a stream id mixed from (a, b).
  /// Children of distinct (a, b) pairs are statistically independent.
  Philox4x32 substream(uint64_t a, uint64_t b) const;

  /// The raw 4x32 block for a given block index. Stateless; exposed so known
  /// answer tests can pin the exact Philox4x32-10 function.
  static std::array<uint32_t, 4> block(const std::array<uint32_t, 4> &counter,
                                       const std::array<uint32_t, 2> &key);

  uint32_t next_u32();
  uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform integer in [0, n). Uses rejection sampling (no modulo bias).
  uint64_t next_below(uint64_t n);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  void refill();

  uint64_t seed_ = 0;
  uint64_t stream_ = 0;
  uint64_t block_index_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;  // empty
};

}  // namespace quditlab

#endif
