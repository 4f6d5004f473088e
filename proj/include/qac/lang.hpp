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
 * The two textual front ends: session commands and minified circuits.
 *
 * Session commands (one message per line, `,` separates grouped messages):
 *
 *     QuantumCircuit <name> <nq> [<nc>] [<name> <nq> [<nc>] ...]
 *     <circuit> <gate> <args...>          e.g. "qc h 0", "qc m 0 0", "qc rx 0.5 1"
 *     <dst> add <src>
 *     Simulator <name> <circuit> <shots> [<sim_update 0|1>]
 *     <sim> get_counts|get_memory|get_statevector|get_qasm|get_qiskit [textbox]
 *     set console_output 0|1
 *     set seed <integer>
 *
 * Minified circuits are a list of strings: the qubit count, then one token
 * per gate of the form `<gate>[(<angle>)]<q1><q2>...` with one decimal digit
 * per qubit, e.g. `2 h0 cx01 rx(0.5)1`. All qubits are measured at the end.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qac/circuit.hpp"
#include "qac/registry.hpp"

namespace qac::lang {

enum class Verb { CreateCircuits, AppendGate, Compose, CreateSimulator, Retrieve, SetAttribute };

enum class RetrieveWhat { Counts, Memory, Statevector, Qasm, Qiskit };

struct CreateCircuits {
    std::vector<CircuitSpec> specs;
    bool operator==(const CreateCircuits &) const = default;
};

struct AppendGate {
    std::string circuit;
    std::string gate;
    std::vector<double> args;
    bool operator==(const AppendGate &) const = default;
};

struct Compose {
    std::string dst;
    std::string src;
    bool operator==(const Compose &) const = default;
};

struct CreateSimulator {
    std::string name;
    std::string circuit;
    std::int64_t shots = 0;
    bool sim_update = false;
    bool operator==(const CreateSimulator &) const = default;
};

struct Retrieve {
    std::string simulator;
    RetrieveWhat what = RetrieveWhat::Counts;
    bool textbox = false;
    bool operator==(const Retrieve &) const = default;
};

struct SetAttribute {
    enum class Name { ConsoleOutput, Seed } name = Name::ConsoleOutput;
    std::int64_t value = 0;
    bool operator==(const SetAttribute &) const = default;
};

using Payload = std::variant<CreateCircuits, AppendGate, Compose, CreateSimulator, Retrieve, SetAttribute>;

struct Command {
    Verb verb;
    Payload payload;
    /// Original token texts, so rendering keeps numbers exactly as written.
    std::vector<std::string> words;

    bool operator==(const Command &) const = default;
};

/// Splits a message box on commas; segments are trimmed and empty ones dropped.
[[nodiscard]] std::vector<std::string> split_message_groups(std::string_view text);

/// Throws ParseError with the offending token and its column.
[[nodiscard]] Command parse_command(std::string_view line);

/// Canonical text: the original tokens joined by single spaces.
[[nodiscard]] std::string render_command(const Command &command);

struct MinifiedCircuit {
    std::size_t num_qubits = 0;
    std::vector<std::string> tokens;
    std::vector<GateOp> ops;
};

/// Throws ParseError for malformed tokens (its column is the 1-based position
/// in the list) and RangeError for qubit digits past the declared count.
[[nodiscard]] MinifiedCircuit parse_minified(std::span<const std::string> spec);

/// Same, from whitespace- or comma-separated text.
[[nodiscard]] MinifiedCircuit parse_minified(std::string_view text);

/// `num_qubits` qubits and clbits, the gates, then measure q[i] -> c[i].
[[nodiscard]] QuantumCircuit expand(const MinifiedCircuit &minified, std::string name = "minified");

/// One message leaving the engine, e.g. selector "counts" with items
/// {"0","61","1","66"}. Textbox outputs carry the whole text as one item.
struct Output {
    std::string selector;
    std::vector<std::string> items;
    bool textbox = false;

    bool operator==(const Output &) const = default;
};

/// Text form: `selector item item ...`, or for textboxes a framed block.
[[nodiscard]] std::string format_output(const Output &output);

/// Runs commands against a registry.
class Session {
  public:
    explicit Session(LogSink sink = stderr_log_sink()) : registry_(std::move(sink)) {}

    /// Executes every comma-separated message on the line. Parse errors are
    /// logged and rethrown; registry errors are logged by the registry.
    std::vector<Output> execute_line(std::string_view line);

    std::vector<Output> execute(const Command &command);

    struct ScriptResult {
        std::vector<Output> outputs;
        std::size_t errors = 0;
    };

    /// Runs a script: one message per line, `#` starts a comment. Errors are
    /// counted and execution continues, unless `stop_on_error`.
    ScriptResult run_script(std::string_view script, bool stop_on_error = false);

    SessionRegistry &registry() noexcept { return registry_; }
    const SessionRegistry &registry() const noexcept { return registry_; }

  private:
    SessionRegistry registry_;
};

} // namespace qac::lang
