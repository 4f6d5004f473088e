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

#include "qac/circuit.hpp"

#include <algorithm>
#include <string>

#include "qac/errors.hpp"

namespace qac {

QuantumCircuit::QuantumCircuit(std::string name, std::size_t num_qubits, std::size_t num_clbits)
    : name_(std::move(name)), num_qubits_(num_qubits), num_clbits_(num_clbits),
      measured_(num_qubits, false) {
    if (num_qubits == 0)
        throw ArgumentError("a circuit needs at least one qubit");
    if (num_qubits > kMaxQubits)
        throw RangeError("circuit '" + name_ + "' requests " + std::to_string(num_qubits) +
                         " qubits; the engine supports at most " + std::to_string(kMaxQubits));
    if (num_clbits > kMaxClbits)
        throw RangeError("circuit '" + name_ + "' requests " + std::to_string(num_clbits) +
                         " classical bits; the engine supports at most " +
                         std::to_string(kMaxClbits));
}

void QuantumCircuit::check(const GateOp &op, const std::vector<bool> &measured) const {
    op.validate();
    const std::string gate(gate_token(op.kind));
    if (op.kind == GateKind::Measure && num_clbits_ == 0)
        throw NoClbitsError("circuit '" + name_ + "' has no classical bits to store a measurement");
    for (std::size_t q : op.qubits)
        if (q >= num_qubits_)
            throw RangeError(gate + " on qubit " + std::to_string(q) + " is outside of range for '" +
                             name_ + "' (" + std::to_string(num_qubits_) + " qubit(s))");
    if (op.clbit && *op.clbit >= num_clbits_)
        throw RangeError("classical bit " + std::to_string(*op.clbit) + " is outside of range for '" +
                         name_ + "' (" + std::to_string(num_clbits_) + " classical bit(s))");
    if (op.kind == GateKind::Unitary) {
        double defect = op.matrix->unitarity_defect();
        if (defect > 1e-6)
            throw UnitarityError("matrix is not unitary (max |U^dagger U - I| = " +
                                 std::to_string(defect) + ")");
    }
    if (op.kind != GateKind::Measure)
        for (std::size_t q : op.qubits)
            if (measured[q])
                throw ArgumentError(gate + " on qubit " + std::to_string(q) +
                                    " follows its measurement; mid-circuit measurement is not supported");
}

QuantumCircuit &QuantumCircuit::append(GateOp op) {
    check(op, measured_);
    if (op.kind == GateKind::Measure)
        measured_[op.qubits.front()] = true;
    ops_.push_back(std::move(op));
    return *this;
}

QuantumCircuit &QuantumCircuit::compose(const QuantumCircuit &other) {
    if (other.num_qubits_ > num_qubits_ || other.num_clbits_ > num_clbits_)
        throw CompositionError("cannot add '" + other.name_ + "' (" +
                               std::to_string(other.num_qubits_) + " qubits, " +
                               std::to_string(other.num_clbits_) + " clbits) to '" + name_ + "' (" +
                               std::to_string(num_qubits_) + " qubits, " +
                               std::to_string(num_clbits_) + " clbits)");
    std::vector<bool> measured = measured_;
    for (const auto &op : other.ops_) {
        try {
            check(op, measured);
        } catch (const Error &e) {
            throw CompositionError("cannot add '" + other.name_ + "' to '" + name_ + "': " + e.what());
        }
        if (op.kind == GateKind::Measure)
            measured[op.qubits.front()] = true;
    }
    // Copy first: self-composition reads other.ops_ while growing ops_.
    std::vector<GateOp> incoming = other.ops_;
    ops_.insert(ops_.end(), std::make_move_iterator(incoming.begin()),
                std::make_move_iterator(incoming.end()));
    measured_ = std::move(measured);
    return *this;
}

bool QuantumCircuit::has_measurement() const noexcept {
    return std::any_of(ops_.begin(), ops_.end(),
                       [](const GateOp &op) { return op.kind == GateKind::Measure; });
}

} // namespace qac
