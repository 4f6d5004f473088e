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
 * Circuit interchange: an OpenQASM 2.0 subset reader/writer and a Qiskit
 * script writer. These are view layers only; simulation never goes through
 * them.
 *
 * Accepted QASM subset:
 *  - `OPENQASM 2.0;`, `include "qelib1.inc";`
 *  - one `qreg`, at most one `creg`
 *  - gates x y z h s t rx ry rz cx cz crx cry crz ccx c3x swap, with
 *    parameter expressions over numbers, `pi`, + - * / ^, unary minus and
 *    sin/cos/tan/exp/ln/sqrt
 *  - `measure q[i] -> c[j];` and the whole-register form `measure q -> c;`
 *  - `barrier` (ignored), `//` line comments
 * Anything else (gate definitions, `if`, `reset`, `opaque`, unknown gates)
 * is a ParseError naming the offending construct.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qac/circuit.hpp"

namespace qac::qasm {

/// Canonical OpenQASM 2.0 text. The `creg` line is omitted for circuits
/// without classical bits. Throws UnsupportedExportError for `unitary` ops.
[[nodiscard]] std::string emit_qasm(const QuantumCircuit &circuit);

/// Throws ParseError (with line/column) on syntax errors and RangeError on
/// register overflow.
[[nodiscard]] QuantumCircuit parse_qasm(std::string_view text, std::string name = "qasm");

/// Self-contained Python/Qiskit script that rebuilds the circuit (unitaries
/// as explicit matrix literals) and prints counts for `shots` shots, or the
/// statevector when the circuit has no measurements.
[[nodiscard]] std::string emit_framework_code(const QuantumCircuit &circuit,
                                              std::uint64_t shots = 1024);

} // namespace qac::qasm
