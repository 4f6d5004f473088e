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

/**
 * @file
 * Performance-mapping helpers: a knob driven by an equal-superposition
 * circuit, a probabilistic event gate, and clamped range mapping.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qac/rng.hpp"
#include "qac/sampling.hpp"

namespace qac::control {

struct SuperpositionResult {
    std::string ket;
    double target = 0.0;
};

/// A result knob: each trigger samples H on every qubit, takes the top ket
/// and sets the target to ket / 2^n. The knob ramps linearly toward it.
class SuperpositionDevice {
  public:
    /// ArgumentError for 0 qubits or 0 shots, RangeError above the qubit cap.
    explicit SuperpositionDevice(std::size_t num_qubits, std::uint32_t ramp_ms = 0, std::uint64_t shots = 1024,
                                 std::optional<std::uint64_t> seed = std::nullopt);

    /// Samples a new target; the ramp restarts from the current value.
    SuperpositionResult trigger();

    /// Value `elapsed_ms` after the last trigger.
    double step_interpolation(std::uint64_t elapsed_ms);

    [[nodiscard]] double current_value() const noexcept { return current_; }
    [[nodiscard]] double target_value() const noexcept { return target_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::uint32_t ramp_ms() const noexcept { return ramp_ms_; }
    void set_ramp_ms(std::uint32_t ramp_ms) noexcept { ramp_ms_ = ramp_ms; }

  private:
    std::size_t num_qubits_;
    std::uint32_t ramp_ms_;
    std::uint64_t shots_;
    Rng rng_;
    ShotSampler sampler_;
    double ramp_from_ = 0.0;
    double current_ = 0.0;
    double target_ = 0.0;
};

/// Lets an event through with probability p (clamped to [0, 1]).
class ProbabilityGate {
  public:
    explicit ProbabilityGate(double p, std::optional<std::uint64_t> seed = std::nullopt);

    bool gate_event() { return rng_.uniform() < p_; }

    [[nodiscard]] double p() const noexcept { return p_; }
    void set_p(double p);

  private:
    double p_ = 0.0;
    Rng rng_;
};

/// Affine map from [in_lo, in_hi] to [out_lo, out_hi], clamped to the output
/// range. ArgumentError when in_lo == in_hi or any input is not finite.
[[nodiscard]] double map_range(double value, double in_lo, double in_hi, double out_lo, double out_hi);

} // namespace qac::control
