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
#include "santa/rng.h"

#include "santa/errors.h"

namespace santa {

uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return mix_seed(mix_seed(base) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

uint64_t derive_seed(uint64_t base, uint64_t stream, uint64_t sub) {
  return derive_seed(derive_seed(base, stream), sub);
}

uint64_t Rng::uniform_index(uint64_t n) {
  if (n == 0) throw ContractError("uniform_index(0)");
  if (n == 1) return 0;
  // Rejection sampling keeps the draw exactly uniform.
  const uint64_t threshold = (0 - n) % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return x % n;
}

double Rng::uniform_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace santa
