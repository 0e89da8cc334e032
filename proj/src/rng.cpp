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

#include "extremecast/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace extremecast {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::string stream_label) : seed_(seed), label_(std::move(stream_label)) {
  std::uint64_t sm = seed_ ^ fnv1a64(label_);
  for (auto& word : s_) word = splitmix64(sm);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform requires lo < hi");
  return lo + (hi - lo) * uniform01();
}

double Rng::gaussian(double mu, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian requires sigma >= 0");
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  if (sigma == 0.0) return mu;
  return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  auto k = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

Rng Rng::substream(std::uint64_t index) const {
  return Rng(seed_, label_ + "#" + std::to_string(index));
}

}  // namespace extremecast
