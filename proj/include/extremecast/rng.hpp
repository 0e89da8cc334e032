// Copyright 2026 The ExtremeCast Authors
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

#pragma once

// Reproducible random streams.
//
// Algorithm (fixed so other implementations can replay every stream):
//   label_hash = FNV-1a 64 over the UTF-8 bytes of the stream label
//                (offset 0xcbf29ce484222325, prime 0x100000001b3)
//   sm         = seed XOR label_hash
//   s[0..3]    = four successive splitmix64(sm) outputs
//   next()     = xoshiro256** over s
//   uniform01  = (next() >> 11) * 2^-53                      in [0, 1)
//   uniform    = lo + (hi - lo) * uniform01
//   gaussian   = mu + sigma * sqrt(-2 ln(1 - u1)) * cos(2 pi u2),
//                u1 then u2 drawn with uniform01, one variate per call
//   below(n)   = floor(uniform01 * n)
// A substream for item i uses the label "<label>#<i>".

#include <cstdint>
#include <string>
#include <string_view>

namespace extremecast {

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
 public:
  Rng(std::uint64_t seed, std::string stream_label);

  std::uint64_t next();
  double uniform01();
  double uniform(double lo, double hi);
  double gaussian(double mu, double sigma);
  std::size_t below(std::size_t n);

  // Independent stream for item `index` of this stream's family.
  Rng substream(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::uint64_t s_[4];
};

}  // namespace extremecast
