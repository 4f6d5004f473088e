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

// Test-only reference simulator. Every gate is lifted to a full 2^n x 2^n
// matrix via Kronecker products, projectors and basis permutations, then
// applied by a plain matrix-vector product. It shares no kernel code with
// the engine; only GateOp fields are read.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qac/circuit.hpp"

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;
using Mat = std::vector<std::vector<C>>;

inline Mat eye(std::size_t d) {
    Mat m(d, std::vector<C>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        m[i][i] = 1.0;
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    const std::size_t ra = a.size(), rb = b.size();
    Mat out(ra * rb, std::vector<C>(ra * rb, 0.0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l)
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
    return out;
}

inline Mat mul(const Mat &a, const Mat &b) {
    const std::size_t d = a.size();
    Mat out(d, std::vector<C>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            if (a[i][k] != C(0.0))
                for (std::size_t j = 0; j < d; ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Mat add(const Mat &a, const Mat &b, C scale_b = 1.0) {
    Mat out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            out[i][j] += scale_b * b[i][j];
    return out;
}

inline Vec mat_vec(const Mat &m, const Vec &v) {
    Vec out(v.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i] += m[i][j] * v[j];
    return out;
}

// Textbook single-qubit matrices.
inline Mat pauli_x() { return {{0, 1}, {1, 0}}; }
inline Mat pauli_y() { return {{0, C(0, -1)}, {C(0, 1), 0}}; }
inline Mat pauli_z() { return {{1, 0}, {0, -1}}; }
inline Mat hadamard() {
    const double r = std::sqrt(0.5);
    return {{r, r}, {r, -r}};
}
inline Mat phase_s() { return {{1, 0}, {0, C(0, 1)}}; }
inline Mat phase_t() { return {{1, 0}, {0, C(std::sqrt(0.5), std::sqrt(0.5))}}; }
inline Mat rot_x(double t) {
    return {{std::cos(t / 2), C(0, -std::sin(t / 2))}, {C(0, -std::sin(t / 2)), std::cos(t / 2)}};
}
inline Mat rot_y(double t) {
    return {{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}};
}
inline Mat rot_z(double t) {
    return {{std::exp(C(0, -t / 2)), 0}, {0, std::exp(C(0, t / 2))}};
}
inline Mat proj_one() { return {{0, 0}, {0, 1}}; }

/// U acting on qubit q of n; qubit 0 is the rightmost Kronecker factor.
inline Mat embed(const Mat &u, std::size_t q, std::size_t n) {
    Mat full = {{1.0}};
    for (std::size_t k = n; k-- > 0;)
        full = kron(full, k == q ? u : eye(2));
    return full;
}

/// I + P_controls (U_target - I), P_controls = product of |1><1| projectors.
inline Mat controlled(const std::vector<std::size_t> &controls, std::size_t target, const Mat &u,
                      std::size_t n) {
    Mat proj = eye(std::size_t{1} << n);
    for (std::size_t c : controls)
        proj = mul(proj, embed(proj_one(), c, n));
    const Mat delta = add(embed(u, target, n), eye(std::size_t{1} << n), -1.0);
    return add(eye(std::size_t{1} << n), mul(proj, delta));
}

/// SWAP = (II + XX + YY + ZZ) / 2.
inline Mat swap_gate(std::size_t a, std::size_t b, std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    Mat sum = eye(d);
    sum = add(sum, mul(embed(pauli_x(), a, n), embed(pauli_x(), b, n)));
    sum = add(sum, mul(embed(pauli_y(), a, n), embed(pauli_y(), b, n)));
    sum = add(sum, mul(embed(pauli_z(), a, n), embed(pauli_z(), b, n)));
    for (auto &row : sum)
        for (auto &x : row)
            x *= 0.5;
    return sum;
}

/// k-qubit matrix whose index bit j belongs to qubits[j]: embed on the low
/// k qubits as I (x) U, then conjugate with a basis permutation.
inline Mat multi_qubit(const Mat &u, const std::vector<std::size_t> &qubits, std::size_t n) {
    const std::size_t k = qubits.size();
    const std::size_t d = std::size_t{1} << n;
    const Mat low = kron(eye(std::size_t{1} << (n - k)), u);
    std::vector<std::size_t> position(n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < k; ++j) {
        position[j] = qubits[j];
        used[qubits[j]] = true;
    }
    std::size_t next = k;
    for (std::size_t q = 0; q < n; ++q)
        if (!used[q])
            position[next++] = q;
    Mat perm(d, std::vector<C>(d, 0.0));
    for (std::size_t x = 0; x < d; ++x) {
        std::size_t y = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x & (std::size_t{1} << j))
                y |= std::size_t{1} << position[j];
        perm[y][x] = 1.0;
    }
    Mat perm_t(d, std::vector<C>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            perm_t[i][j] = perm[j][i];
    return mul(perm, mul(low, perm_t));
}

inline Mat full_matrix(const qac::GateOp &op, std::size_t n) {
    using K = qac::GateKind;
    const double a = op.angle.value_or(0.0);
    const auto &q = op.qubits;
    switch (op.kind) {
    case K::X: return embed(pauli_x(), q[0], n);
    case K::Y: return embed(pauli_y(), q[0], n);
    case K::Z: return embed(pauli_z(), q[0], n);
    case K::H: return embed(hadamard(), q[0], n);
    case K::S: return embed(phase_s(), q[0], n);
    case K::T: return embed(phase_t(), q[0], n);
    case K::RX: return embed(rot_x(a), q[0], n);
    case K::RY: return embed(rot_y(a), q[0], n);
    case K::RZ: return embed(rot_z(a), q[0], n);
    case K::CX: return controlled({q[0]}, q[1], pauli_x(), n);
    case K::CZ: return controlled({q[0]}, q[1], pauli_z(), n);
    case K::CRX: return controlled({q[0]}, q[1], rot_x(a), n);
    case K::CRY: return controlled({q[0]}, q[1], rot_y(a), n);
    case K::CRZ: return controlled({q[0]}, q[1], rot_z(a), n);
    case K::CCX: return controlled({q[0], q[1]}, q[2], pauli_x(), n);
    case K::CCCX: return controlled({q[0], q[1], q[2]}, q[3], pauli_x(), n);
    case K::Swap: return swap_gate(q[0], q[1], n);
    case K::Unitary: {
        const auto &m = *op.matrix;
        Mat u(m.dim(), std::vector<C>(m.dim()));
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j)
                u[i][j] = m(i, j);
        return multi_qubit(u, q, n);
    }
    case K::Measure: break;
    }
    throw std::logic_error("oracle: measurement has no matrix");
}

/// Final state of `circuit` from |0...0>, measurements skipped.
inline Vec simulate(const qac::QuantumCircuit &circuit) {
    const std::size_t n = circuit.num_qubits();
    Vec state(std::size_t{1} << n, 0.0);
    state[0] = 1.0;
    for (const auto &op : circuit.ops())
        if (op.kind != qac::GateKind::Measure)
            state = mat_vec(full_matrix(op, n), state);
    return state;
}

} // namespace oracle
