// Copyright 2026 The QAC Engine Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace qac {

/**
 * Seeded random stream used by every sampling path in the engine.
 *
 * The generator is the 64-bit Mersenne Twister (std::mt19937_64), whose
 * output sequence is fixed by the C++ standard, so a given seed yields the
 * same draws on every conforming platform. Real numbers are produced from
 * the top 53 bits of each draw instead of std::uniform_real_distribution,
 * whose algorithm is implementation-defined.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Seeded from the given value, or from std::random_device when empty.
    static Rng from_optional(std::optional<std::uint64_t> seed);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool operator==(const Rng &) const = default;

  private:
    std::mt19937_64 engine_;
};

std::uint64_t entropy_seed();

} // namespace qac
