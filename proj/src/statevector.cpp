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

#include "qac/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qac/errors.hpp"

namespace qac {

Statevector::Statevector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0)
        throw ArgumentError("a statevector needs at least one qubit");
    if (num_qubits > kMaxQubits)
        throw RangeError("statevector of " + std::to_string(num_qubits) +
                         " qubits exceeds the engine cap of " + std::to_string(kMaxQubits));
    amps_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxQubits))
        throw ArgumentError("statevector length must be 2^n with 1 <= n <= " +
                            std::to_string(kMaxQubits));
    Statevector sv;
    sv.num_qubits_ = static_cast<std::size_t>(std::countr_zero(n));
    sv.amps_ = std::move(amplitudes);
    return sv;
}

double Statevector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_)
        acc += std::norm(a);
    return acc;
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i)
        out[i] = std::norm(amps_[i]);
    return out;
}

Matrix target_matrix(const GateOp &op) {
    using namespace std::complex_literals;
    const double r = 1.0 / std::numbers::sqrt2;
    const double theta = op.angle.value_or(0.0);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    switch (op.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::CCCX:
        return Matrix(2, {0.0, 1.0, 1.0, 0.0});
    case GateKind::Y:
        return Matrix(2, {0.0, -1i, 1i, 0.0});
    case GateKind::Z:
    case GateKind::CZ:
        return Matrix(2, {1.0, 0.0, 0.0, -1.0});
    case GateKind::H:
        return Matrix(2, {r, r, r, -r});
    case GateKind::S:
        return Matrix(2, {1.0, 0.0, 0.0, 1i});
    case GateKind::T:
        return Matrix(2, {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)});
    case GateKind::RX:
    case GateKind::CRX:
        return Matrix(2, {c, -1i * s, -1i * s, c});
    case GateKind::RY:
    case GateKind::CRY:
        return Matrix(2, {c, -s, s, c});
    case GateKind::RZ:
    case GateKind::CRZ:
        return Matrix(2, {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)});
    case GateKind::Swap:
    case GateKind::Unitary:
    case GateKind::Measure:
        break;
    }
    throw ArgumentError(std::string(gate_token(op.kind)) + " has no single-qubit target matrix");
}

namespace {

void apply_controlled_1q(std::span<Complex> amps, std::size_t control_mask, std::size_t target,
                         const Matrix &m) {
    const std::size_t tbit = std::size_t{1} << target;
    const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & tbit) || (i & control_mask) != control_mask)
            continue;
        const std::size_t j = i | tbit;
        const Complex a0 = amps[i], a1 = amps[j];
        amps[i] = m00 * a0 + m01 * a1;
        amps[j] = m10 * a0 + m11 * a1;
    }
}

void apply_swap(std::span<Complex> amps, std::size_t a, std::size_t b) {
    const std::size_t abit = std::size_t{1} << a, bbit = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i & abit) && !(i & bbit))
            std::swap(amps[i], amps[i ^ abit ^ bbit]);
}

void apply_dense(std::span<Complex> amps, std::span<const std::size_t> qubits, const Matrix &m) {
    const std::size_t d = m.dim();
    std::vector<std::size_t> offsets(d, 0);
    std::size_t mask = 0;
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < qubits.size(); ++j)
            if (l & (std::size_t{1} << j))
                offsets[l] |= std::size_t{1} << qubits[j];
    for (std::size_t q : qubits)
        mask |= std::size_t{1} << q;

    std::vector<Complex> in(d), out(d);
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & mask)
            continue;
        for (std::size_t l = 0; l < d; ++l)
            in[l] = amps[base | offsets[l]];
        for (std::size_t r = 0; r < d; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                acc += m(r, c) * in[c];
            out[r] = acc;
        }
        for (std::size_t l = 0; l < d; ++l)
            amps[base | offsets[l]] = out[l];
    }
}

} // namespace

void apply_gate_inplace(Statevector &state, const GateOp &op) {
    op.validate();
    if (op.kind == GateKind::Measure)
        throw ArgumentError("measurement is not a unitary gate");
    for (std::size_t q : op.qubits)
        if (q >= state.num_qubits())
            throw RangeError(std::string(gate_token(op.kind)) + " on qubit " + std::to_string(q) +
                             " is outside of range (" + std::to_string(state.num_qubits()) +
                             " qubit(s))");

    auto amps = state.amplitudes();
    switch (op.kind) {
    case GateKind::Swap:
        apply_swap(amps, op.qubits[0], op.qubits[1]);
        return;
    case GateKind::Unitary: {
        const double defect = op.matrix->unitarity_defect();
        if (defect > 1e-6)
            throw UnitarityError("matrix is not unitary (max |U^dagger U - I| = " +
                                 std::to_string(defect) + ")");
        apply_dense(amps, op.qubits, *op.matrix);
        return;
    }
    default:
        break;
    }
    std::size_t control_mask = 0;
    for (std::size_t i = 0; i + 1 < op.qubits.size(); ++i)
        control_mask |= std::size_t{1} << op.qubits[i];
    apply_controlled_1q(amps, control_mask, op.qubits.back(), target_matrix(op));
}

Statevector apply_gate(Statevector state, const GateOp &op) {
    apply_gate_inplace(state, op);
    return state;
}

Statevector run_statevector(const QuantumCircuit &circuit) {
    Statevector state(circuit.num_qubits());
    for (const auto &op : circuit.ops())
        if (op.kind != GateKind::Measure)
            apply_gate_inplace(state, op);
    return state;
}

} // namespace qac
