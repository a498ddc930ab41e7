//
// Copyright 2026 The hybrid_dp Authors
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
//

#ifndef HYBRID_DP_RNG_H_
#define HYBRID_DP_RNG_H_

#include <array>
#include <cstdint>

namespace hybrid_dp {

// A reproducible random stream identified by a 64-bit key.
//
// Streams form a tree: Derive(i) returns the child stream keyed by
// (key, i). The child depends only on the parent's key, never on how many
// numbers the parent has produced, so (seed, trial, user) addresses the same
// stream regardless of scheduling or thread count.
//
// Satisfies UniformRandomBitGenerator; the generator is xoshiro256** seeded
// from the key through SplitMix64.
class SeededRng {
 public:
  using result_type = uint64_t;

  explicit SeededRng(uint64_t seed);

  SeededRng Derive(uint64_t index) const;

  uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

 private:
  uint64_t key_;
  std::array<uint64_t, 4> state_;
};

// Well-known stream indices so that unrelated consumers never collide.
namespace streams {
inline constexpr uint64_t kData = 1;
inline constexpr uint64_t kCuratorNoise = 2;
inline constexpr uint64_t kUserNoise = 3;
inline constexpr uint64_t kInit = 4;
inline constexpr uint64_t kAssignment = 5;
inline constexpr uint64_t kPartition = 6;
}  // namespace streams

}  // namespace hybrid_dp

#endif  // HYBRID_DP_RNG_H_
