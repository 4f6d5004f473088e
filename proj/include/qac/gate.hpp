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
 * Gate operations: the instruction set of a QuantumCircuit.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qac {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Matrix(std::size_t dim, std::vector<Complex> data);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const double> entries);

    /// Build from the wire format: row-major interleaved (re, im) pairs of
    /// length 2*d*d, or an all-real list of length d*d. d must be a power of
    /// two. Throws ArgumentError on any other length.
    static Matrix from_wire(std::span<const double> values);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    [[nodiscard]] const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }
    [[nodiscard]] const std::vector<Complex> &data() const noexcept { return data_; }

    /// max |(U^dagger U - I)_ij|.
    [[nodiscard]] double unitarity_defect() const;
    [[nodiscard]] bool is_unitary(double tol = 1e-6) const { return unitarity_defect() <= tol; }

    bool operator==(const Matrix &) const = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

enum class GateKind {
    X, Y, Z, H, S, T,
    RX, RY, RZ,
    CX, CZ, CRX, CRY, CRZ,
    CCX, CCCX,
    Swap,
    Unitary,
    Measure,
};

/// Lower-case token used by the command language ("h", "cx", "m", ...).
std::string_view gate_token(GateKind kind) noexcept;
std::optional<GateKind> gate_from_token(std::string_view token) noexcept;

bool is_parameterized(GateKind kind) noexcept;

/// Required qubit count, or 0 for `unitary` whose arity comes from its matrix.
std::size_t gate_arity(GateKind kind) noexcept;

/**
 * One instruction. For controlled kinds the controls come first and the
 * target last (cx: {control, target}; cccx: {c0, c1, c2, target}). For
 * `unitary`, bit j of the matrix row index corresponds to qubits[j].
 */
struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<std::size_t> qubits;
    std::optional<double> angle;
    std::optional<Matrix> matrix;
    std::optional<std::size_t> clbit;

    /// Structural invariants (arity, distinct qubits, field presence).
    /// Throws ArgumentError. Does not check unitarity or ranges.
    void validate() const;

    bool operator==(const GateOp &) const = default;
};

namespace gates {
GateOp single(GateKind kind, std::size_t qubit);
GateOp rotation(GateKind kind, double angle, std::size_t qubit);
GateOp controlled(GateKind kind, std::vector<std::size_t> qubits);
GateOp controlled_rotation(GateKind kind, double angle, std::size_t control, std::size_t target);

inline GateOp x(std::size_t q) { return single(GateKind::X, q); }
inline GateOp y(std::size_t q) { return single(GateKind::Y, q); }
inline GateOp z(std::size_t q) { return single(GateKind::Z, q); }
inline GateOp h(std::size_t q) { return single(GateKind::H, q); }
inline GateOp s(std::size_t q) { return single(GateKind::S, q); }
inline GateOp t(std::size_t q) { return single(GateKind::T, q); }
inline GateOp rx(double theta, std::size_t q) { return rotation(GateKind::RX, theta, q); }
inline GateOp ry(double theta, std::size_t q) { return rotation(GateKind::RY, theta, q); }
inline GateOp rz(double theta, std::size_t q) { return rotation(GateKind::RZ, theta, q); }
inline GateOp cx(std::size_t c, std::size_t t) { return controlled(GateKind::CX, {c, t}); }
inline GateOp cz(std::size_t c, std::size_t t) { return controlled(GateKind::CZ, {c, t}); }
inline GateOp swap(std::size_t a, std::size_t b) { return controlled(GateKind::Swap, {a, b}); }
inline GateOp ccx(std::size_t c0, std::size_t c1, std::size_t t) {
    return controlled(GateKind::CCX, {c0, c1, t});
}
inline GateOp cccx(std::size_t c0, std::size_t c1, std::size_t c2, std::size_t t) {
    return controlled(GateKind::CCCX, {c0, c1, c2, t});
}
inline GateOp crx(double theta, std::size_t c, std::size_t t) {
    return controlled_rotation(GateKind::CRX, theta, c, t);
}
inline GateOp cry(double theta, std::size_t c, std::size_t t) {
    return controlled_rotation(GateKind::CRY, theta, c, t);
}
inline GateOp crz(double theta, std::size_t c, std::size_t t) {
    return controlled_rotation(GateKind::CRZ, theta, c, t);
}
GateOp unitary(Matrix matrix, std::vector<std::size_t> qubits);
GateOp measure(std::size_t qubit, std::size_t clbit);
} // namespace gates

} // namespace qac
