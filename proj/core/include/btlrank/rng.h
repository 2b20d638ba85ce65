// Copyright 2026 The btlrank Authors.
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

#ifndef BTLRANK_RNG_H_
#define BTLRANK_RNG_H_

#include <cstdint>
#include <random>

namespace btlrank {

// SplitMix64 finalizer; used to decorrelate user seeds and stream ids.
std::uint64_t SplitMix64(std::uint64_t x);

// Seedable, reproducible random source. Every stochastic operation in the
// library takes one of these explicitly; child streams are derived with
// Fork() so that independent tasks never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Deterministic child generator; identical (seed, stream, id) always yields
  // the same sequence regardless of how much the parent has been used.
  Rng Fork(std::uint64_t id) const;

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  bool Bernoulli(double p);
  int Binomial(int trials, double p);
  // Uniform integer in [0, bound).
  std::uint64_t UniformInt(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace btlrank

#endif  // BTLRANK_RNG_H_
