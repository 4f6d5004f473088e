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

#include <cstddef>
#include <string>
#include <vector>

#include "qac/gate.hpp"

namespace qac {

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr std::size_t kMaxClbits = 64;

/**
 * Named, ordered gate program over a fixed number of qubits and classical
 * bits. Every mutation validates, so a QuantumCircuit value is always
 * structurally valid:
 *  - 1 <= num_qubits <= kMaxQubits, num_clbits <= kMaxClbits
 *  - every qubit and clbit index is in range
 *  - unitary matrices pass the 1e-6 unitarity check
 *  - no gate acts on a qubit after that qubit was measured
 */
class QuantumCircuit {
  public:
    QuantumCircuit(std::string name, std::size_t num_qubits, std::size_t num_clbits = 0);

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t num_clbits() const noexcept { return num_clbits_; }
    [[nodiscard]] const std::vector<GateOp> &ops() const noexcept { return ops_; }

    void set_name(std::string name) { name_ = std::move(name); }

    /// Throws ArgumentError, RangeError, NoClbitsError or UnitarityError;
    /// the circuit is unchanged on failure.
    QuantumCircuit &append(GateOp op);

    /// Appends every op of `other`. All-or-nothing: throws CompositionError
    /// if the sizes do not fit or the result would be invalid.
    QuantumCircuit &compose(const QuantumCircuit &other);

    [[nodiscard]] bool has_measurement() const noexcept;

    bool operator==(const QuantumCircuit &) const = default;

  private:
    void check(const GateOp &op, const std::vector<bool> &measured) const;

    std::string name_;
    std::size_t num_qubits_;
    std::size_t num_clbits_;
    std::vector<GateOp> ops_;
    std::vector<bool> measured_;
};

} // namespace qac
