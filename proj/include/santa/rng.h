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
#ifndef SANTA_RNG_H_
#define SANTA_RNG_H_

#include <cstdint>
#include <random>

namespace santa {

struct RngSeed {
  uint64_t seed = 0;
};

// splitmix64 step; used to derive independent stream seeds.
uint64_t mix_seed(uint64_t x);
uint64_t derive_seed(uint64_t base, uint64_t stream);
uint64_t derive_seed(uint64_t base, uint64_t stream, uint64_t sub);

// Thin wrapper around mt19937_64 with platform independent draws. The
// standard distributions are implementation defined, so they are avoided.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }
  // Uniform in [0, n). Requires n >= 1.
  uint64_t uniform_index(uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double uniform_unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace santa

#endif  // SANTA_RNG_H_
