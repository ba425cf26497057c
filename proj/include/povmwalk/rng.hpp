// Copyright 2026 The povmwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMWALK_RNG_HPP
#define POVMWALK_RNG_HPP

#include <array>
#include <cstdint>

namespace povmwalk {

/// Counter-based random stream (Philox4x32-10, Salmon et al., SC'11).
///
/// A stream is addressed by (seed, stream index); campaigns assign stream
/// index = copy index, so every copy draws from its own reproducible stream
/// no matter how copies are scheduled across workers. The generator is
/// stateless apart from the block counter: block b of stream s under seed g
/// is always the same four 32-bit words.
///
/// Word convention (fixed, part of the output contract):
///   counter = (block lo32, block hi32, stream lo32, stream hi32)
///   key     = (seed lo32, seed hi32)
///   u64 pair per block: (x1<<32)|x0, then (x3<<32)|x2
///   uniform in [0,1): (u64 >> 11) * 2^-53
class PhiloxStream {
 public:
  PhiloxStream(uint64_t seed, uint64_t stream)
      : seed_(seed), stream_(stream), block_(0), buffered_(0) {}

  /// Next uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  uint64_t next_u64() {
    if (buffered_ == 0) {
      refill();
    }
    return buffer_[--buffered_];
  }

  /// Raw Philox4x32-10 block function; exposed for known-answer tests.
  static std::array<uint32_t, 4> block(std::array<uint32_t, 4> counter,
                                       std::array<uint32_t, 2> key) {
    for (int round = 0; round < 10; round++) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      uint64_t p0 = uint64_t{0xD2511F53u} * counter[0];
      uint64_t p1 = uint64_t{0xCD9E8D57u} * counter[2];
      counter = {static_cast<uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                 static_cast<uint32_t>(p1),
                 static_cast<uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                 static_cast<uint32_t>(p0)};
    }
    return counter;
  }

 private:
  void refill() {
    std::array<uint32_t, 4> x =
        block({static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
               static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)},
              {static_cast<uint32_t>(seed_), static_cast<uint32_t>(seed_ >> 32)});
    block_++;
    // Emitted in reverse so next_u64 pops (x1<<32)|x0 first.
    buffer_[1] = (uint64_t{x[1]} << 32) | x[0];
    buffer_[0] = (uint64_t{x[3]} << 32) | x[2];
    buffered_ = 2;
  }

  uint64_t seed_;
  uint64_t stream_;
  uint64_t block_;
  uint64_t buffer_[2];
  int buffered_;
};

}  // namespace povmwalk

#endif
