// Copyright 2026 The Authors.
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

#ifndef BROKER_RNG_HPP_
#define BROKER_RNG_HPP_

#include <array>
#include <cstdint>

namespace broker::rng {

// Counter-based Philox4x32-10. Every draw is addressed by
// (seed, stream, position), with no sequential state, so parallel code pulls
// identical numbers no matter how the loop is scheduled or how many threads
// run it. That property backs the bit-identical-output contract of the
// experiment harness.

namespace detail {

inline constexpr uint32_t kMul0 = 0xD2511F53u;
inline constexpr uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr uint32_t kWeyl1 = 0xBB67AE85u;

}  // namespace detail

inline std::array<uint32_t, 4> philox_block(uint64_t seed, uint64_t stream,
                                            uint64_t pos) {
  std::array<uint32_t, 4> c{static_cast<uint32_t>(pos),
                            static_cast<uint32_t>(pos >> 32),
                            static_cast<uint32_t>(stream),
                            static_cast<uint32_t>(stream >> 32)};
  uint32_t k0 = static_cast<uint32_t>(seed);
  uint32_t k1 = static_cast<uint32_t>(seed >> 32);
  for (int round = 0; round < 10; ++round) {
    const uint64_t p0 = static_cast<uint64_t>(detail::kMul0) * c[0];
    const uint64_t p1 = static_cast<uint64_t>(detail::kMul1) * c[2];
    c = {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ k0,
         static_cast<uint32_t>(p1),
         static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ k1,
         static_cast<uint32_t>(p0)};
    k0 += detail::kWeyl0;
    k1 += detail::kWeyl1;
  }
  return c;
}

inline uint64_t bits64(uint64_t seed, uint64_t stream, uint64_t pos) {
  const auto b = philox_block(seed, stream, pos);
  return (static_cast<uint64_t>(b[0]) << 32) | b[1];
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(uint64_t seed, uint64_t stream, uint64_t pos) {
  return static_cast<double>(bits64(seed, stream, pos) >> 11) * 0x1.0p-53;
}

// Stream ids are namespaced by purpose so independent parts of a run never
// consume the same counters. The low 56 bits are free for per-use indexing.
inline constexpr uint64_t kStreamCosts = uint64_t{1} << 56;
inline constexpr uint64_t kStreamMenuSim = uint64_t{2} << 56;
inline constexpr uint64_t kStreamEstimator = uint64_t{3} << 56;
inline constexpr uint64_t kStreamGenerator = uint64_t{4} << 56;
inline constexpr uint64_t kStreamIdentity = uint64_t{5} << 56;
inline constexpr uint64_t kStreamTest = uint64_t{9} << 56;

}  // namespace broker::rng

#endif  // BROKER_RNG_HPP_
