// Copyright 2026 The cellmosaic Authors
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

#include <cstdint>
#include <random>
#include <string_view>

namespace cellmosaic {

//! Seeded generator whose output sequence is identical on every platform.
//! The standard distributions are implementation-defined, so the helpers here
//! derive reals and bounded integers from the raw 64-bit engine output.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    //! Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    //! Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

//! Derives an independent stream seed from a base seed and a string salt.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace cellmosaic
