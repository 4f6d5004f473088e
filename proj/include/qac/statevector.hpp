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
 * Dense statevector and gate application kernel.
 *
 * Basis ordering: amplitude index i encodes qubit 0 as its least
 * significant bit, i.e. |q_{n-1} ... q_1 q_0>.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qac/circuit.hpp"
#include "qac/gate.hpp"

namespace qac {

class Statevector {
  public:
    /// |0...0> over `num_qubits` qubits (1..kMaxQubits).
    explicit Statevector(std::size_t num_qubits);

    /// Takes ownership of explicit amplitudes; size must be a power of two.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;
    [[nodiscard]] std::vector<double> probabilities() const;

    bool operator==(const Statevector &) const = default;

  private:
    Statevector() = default;

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// In-place application. Throws RangeError for bad indices, UnitarityError
/// for a non-unitary matrix, ArgumentError for measurement ops.
void apply_gate_inplace(Statevector &state, const GateOp &op);

[[nodiscard]] Statevector apply_gate(Statevector state, const GateOp &op);

/// Applies every non-measurement op, in order, to |0...0>.
[[nodiscard]] Statevector run_statevector(const QuantumCircuit &circuit);

/// 2x2 matrix of a single-qubit kind (including the rotations and the target
/// part of controlled kinds: cx -> X, crz -> RZ(angle), ...).
[[nodiscard]] Matrix target_matrix(const GateOp &op);

} // namespace qac
