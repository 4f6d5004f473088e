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

#include "qac/gate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "qac/errors.hpp"

namespace qac {

Matrix::Matrix(std::size_t dim, std::vector<Complex> data) : dim_(dim), data_(std::move(data)) {
    if (data_.size() != dim_ * dim_)
        throw ArgumentError("matrix data has " + std::to_string(data_.size()) +
                            " entries, expected " + std::to_string(dim_ * dim_));
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_wire(std::span<const double> values) {
    const std::size_t n = values.size();
    // d*d with d = 2^k is 4^k; 2*d*d is 2*4^k. The two never coincide.
    auto power_of_four_root = [](std::size_t v) -> std::size_t {
        if (v == 0 || !std::has_single_bit(v) || (std::countr_zero(v) % 2) != 0)
            return 0;
        return std::size_t{1} << (std::countr_zero(v) / 2);
    };
    if (std::size_t d = power_of_four_root(n); d >= 2) {
        Matrix m(d);
        for (std::size_t i = 0; i < n; ++i)
            m.data_[i] = Complex(values[i], 0.0);
        return m;
    }
    if (n % 2 == 0) {
        if (std::size_t d = power_of_four_root(n / 2); d >= 2) {
            Matrix m(d);
            for (std::size_t i = 0; i < n / 2; ++i)
                m.data_[i] = Complex(values[2 * i], values[2 * i + 1]);
            return m;
        }
    }
    throw ArgumentError("unitary expects (2^k)^2 real values or 2*(2^k)^2 interleaved re/im values "
                        "with k >= 1, got " + std::to_string(n));
}

double Matrix::unitarity_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < dim_; ++k)
                acc += std::conj((*this)(k, i)) * (*this)(k, j);
            if (i == j)
                acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view token;
    std::size_t arity;
    bool parameterized;
};

constexpr std::array<GateInfo, 19> kGates{{
    {GateKind::X, "x", 1, false},
    {GateKind::Y, "y", 1, false},
    {GateKind::Z, "z", 1, false},
    {GateKind::H, "h", 1, false},
    {GateKind::S, "s", 1, false},
    {GateKind::T, "t", 1, false},
    {GateKind::RX, "rx", 1, true},
    {GateKind::RY, "ry", 1, true},
    {GateKind::RZ, "rz", 1, true},
    {GateKind::CX, "cx", 2, false},
    {GateKind::CZ, "cz", 2, false},
    {GateKind::CRX, "crx", 2, true},
    {GateKind::CRY, "cry", 2, true},
    {GateKind::CRZ, "crz", 2, true},
    {GateKind::CCX, "ccx", 3, false},
    {GateKind::CCCX, "cccx", 4, false},
    {GateKind::Swap, "swap", 2, false},
    {GateKind::Unitary, "unitary", 0, false},
    {GateKind::Measure, "m", 1, false},
}};

const GateInfo &info(GateKind kind) {
    return kGates[static_cast<std::size_t>(kind)];
}

} // namespace

std::string_view gate_token(GateKind kind) noexcept { return info(kind).token; }

std::optional<GateKind> gate_from_token(std::string_view token) noexcept {
    for (const auto &g : kGates)
        if (g.token == token)
            return g.kind;
    return std::nullopt;
}

bool is_parameterized(GateKind kind) noexcept { return info(kind).parameterized; }

std::size_t gate_arity(GateKind kind) noexcept { return info(kind).arity; }

void GateOp::validate() const {
    const std::string name(gate_token(kind));
    if (kind == GateKind::Unitary) {
        if (!matrix)
            throw ArgumentError("unitary gate without a matrix");
        if (qubits.empty() || matrix->dim() != (std::size_t{1} << std::min<std::size_t>(qubits.size(), 63)))
            throw ArgumentError("unitary matrix dimension " + std::to_string(matrix->dim()) +
                                " does not match " + std::to_string(qubits.size()) + " qubit(s)");
    } else {
        if (matrix)
            throw ArgumentError(name + " gate must not carry a matrix");
        if (qubits.size() != gate_arity(kind))
            throw ArgumentError(name + " expects " + std::to_string(gate_arity(kind)) +
                                " qubit(s), got " + std::to_string(qubits.size()));
    }
    if (is_parameterized(kind) != angle.has_value())
        throw ArgumentError(is_parameterized(kind) ? name + " requires an angle"
                                                   : name + " does not take an angle");
    if (angle && !std::isfinite(*angle))
        throw ArgumentError(name + " angle must be finite");
    if ((kind == GateKind::Measure) != clbit.has_value())
        throw ArgumentError(kind == GateKind::Measure ? "measurement requires a classical bit"
                                                      : name + " does not take a classical bit");
    for (std::size_t i = 0; i < qubits.size(); ++i)
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j])
                throw ArgumentError(name + " qubit indices must be distinct");
}

namespace gates {

GateOp single(GateKind kind, std::size_t qubit) {
    GateOp op{kind, {qubit}, {}, {}, {}};
    op.validate();
    return op;
}

GateOp rotation(GateKind kind, double angle, std::size_t qubit) {
    GateOp op{kind, {qubit}, angle, {}, {}};
    op.validate();
    return op;
}

GateOp controlled(GateKind kind, std::vector<std::size_t> qubits) {
    GateOp op{kind, std::move(qubits), {}, {}, {}};
    op.validate();
    return op;
}

GateOp controlled_rotation(GateKind kind, double angle, std::size_t control, std::size_t target) {
    GateOp op{kind, {control, target}, angle, {}, {}};
    op.validate();
    return op;
}

GateOp unitary(Matrix matrix, std::vector<std::size_t> qubits) {
    GateOp op{GateKind::Unitary, std::move(qubits), {}, std::move(matrix), {}};
    op.validate();
    return op;
}

GateOp measure(std::size_t qubit, std::size_t clbit) {
    GateOp op{GateKind::Measure, {qubit}, {}, {}, clbit};
    op.validate();
    return op;
}

} // namespace gates

} // namespace qac
