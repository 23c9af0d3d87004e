// Copyright 2026 The femtolearn Authors
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

#ifndef FEMTOLEARN_RANDOM_H_
#define FEMTOLEARN_RANDOM_H_

#include <cstdint>
#include <random>

namespace femtolearn {

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the floating-point draws below are derived from
// raw engine words so that streams are bit-identical across standard library
// implementations (std::*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (one draw per call; the pair's second
  // value is discarded to keep the stream position simple).
  double StandardNormal();

  std::uint64_t NextU64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent stream seeds from a base
// seed and a small tag (replicate index, sweep point, ...).
std::uint64_t MixSeed(std::uint64_t base, std::uint64_t tag);

}  // namespace femtolearn

#endif  // FEMTOLEARN_RANDOM_H_
