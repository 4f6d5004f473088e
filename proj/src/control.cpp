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

#include "qac/control.hpp"

#include <algorithm>
#include <cmath>

#include "qac/circuit.hpp"
#include "qac/errors.hpp"

namespace qac::control {

namespace {

QuantumCircuit superposition_circuit(std::size_t n) {
    if (n == 0)
        throw ArgumentError("the superposition device needs at least one qubit");
    QuantumCircuit c("superposition", n, n);
    for (std::size_t q = 0; q < n; ++q)
        c.append(gates::h(q));
    for (std::size_t q = 0; q < n; ++q)
        c.append(gates::measure(q, q));
    return c;
}

std::uint64_t checked_shots(std::uint64_t shots) {
    if (shots == 0)
        throw ArgumentError("the superposition device needs at least one shot");
    return shots;
}

} // namespace

SuperpositionDevice::SuperpositionDevice(std::size_t num_qubits, std::uint32_t ramp_ms, std::uint64_t shots,
                                         std::optional<std::uint64_t> seed)
    : num_qubits_(num_qubits), ramp_ms_(ramp_ms), shots_(checked_shots(shots)),
      rng_(Rng::from_optional(seed)), sampler_(superposition_circuit(num_qubits)) {}

SuperpositionResult SuperpositionDevice::trigger() {
    const std::string ket = top_outcome(sampler_.counts(shots_, rng_));
    std::uint64_t k = 0;
    for (char c : ket)
        k = (k << 1) | (c == '1' ? 1u : 0u);
    ramp_from_ = current_;
    target_ = std::ldexp(static_cast<double>(k), -static_cast<int>(num_qubits_));
    if (ramp_ms_ == 0)
        current_ = target_;
    return {ket, target_};
}

double SuperpositionDevice::step_interpolation(std::uint64_t elapsed_ms) {
    if (ramp_ms_ == 0 || elapsed_ms >= ramp_ms_)
        current_ = target_;
    else
        current_ = ramp_from_ + (target_ - ramp_from_) * (static_cast<double>(elapsed_ms) / ramp_ms_);
    return current_;
}

ProbabilityGate::ProbabilityGate(double p, std::optional<std::uint64_t> seed) : rng_(Rng::from_optional(seed)) {
    set_p(p);
}

void ProbabilityGate::set_p(double p) {
    if (std::isnan(p))
        throw ArgumentError("gate probability must be a number");
    p_ = std::clamp(p, 0.0, 1.0);
}

double map_range(double value, double in_lo, double in_hi, double out_lo, double out_hi) {
    for (double v : {value, in_lo, in_hi, out_lo, out_hi})
        if (!std::isfinite(v))
            throw ArgumentError("map_range arguments must be finite");
    if (in_lo == in_hi)
        throw ArgumentError("map_range input range is empty");
    const double t = (value - in_lo) / (in_hi - in_lo);
    const double out = out_lo + t * (out_hi - out_lo);
    return std::clamp(out, std::min(out_lo, out_hi), std::max(out_lo, out_hi));
}

} // namespace qac::control
