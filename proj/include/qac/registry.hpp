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
 * Named circuits and simulators with message-style semantics.
 *
 * A SessionRegistry is what one engine instance holds: any number of named
 * QuantumCircuits and Simulators. Every operation either succeeds or throws
 * a qac::Error after logging it, leaving the registry exactly as it was.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qac/circuit.hpp"
#include "qac/rng.hpp"
#include "qac/sampling.hpp"
#include "qac/statevector.hpp"

namespace qac {

enum class Severity { Info, Error };

struct LogEvent {
    Severity severity;
    std::string text;
};

using LogSink = std::function<void(const LogEvent &)>;

/// Writes `[qac:info] ...` / `[qac:error] ...` lines to standard error.
LogSink stderr_log_sink();

struct CircuitSpec {
    std::string name;
    std::int64_t num_qubits = 0;
    std::optional<std::int64_t> num_clbits;

    bool operator==(const CircuitSpec &) const = default;
};

struct SimulatorHandle {
    std::string name;
    std::string source_circuit;
    QuantumCircuit snapshot;
    std::uint64_t shots = 1;
    bool sim_update = false;
    std::uint64_t seed = 0;
    Rng stream{0};
    /// Set once the source circuit has been re-created; the snapshot is then
    /// frozen until the simulator itself is re-created.
    bool detached = false;

    bool operator==(const SimulatorHandle &) const = default;
};

enum class RetrieveKind { Counts, Memory, Statevector };

using Retrieved = std::variant<Counts, ShotMemory, Statevector>;

class SessionRegistry {
  public:
    explicit SessionRegistry(LogSink sink = stderr_log_sink());

    /// One circuit per spec; an existing name is reset.
    void create_circuits(std::span<const CircuitSpec> specs);

    /// Stores a ready-made circuit under its own name, with the same reset
    /// semantics as create_circuits.
    void store_circuit(QuantumCircuit circuit);

    /// `args` follows the message format: "h 0" -> {0}, "m 0 0" -> {q, c},
    /// "rx 0.5 1" -> {angle, q}, "crx 0.5 0 1" -> {angle, c, t},
    /// "unitary v1 ... vk" -> matrix wire values acting on qubits 0..k-1.
    void append_gate(std::string_view circuit, std::string_view gate, std::span<const double> args);

    void compose_circuits(std::string_view dst, std::string_view src);

    /// The stream seed is `seed`, else the registry default seed, else entropy.
    void create_simulator(std::string_view name, std::string_view circuit, std::int64_t shots,
                          bool sim_update, std::optional<std::uint64_t> seed = std::nullopt);

    /// Counts and memory draw a fresh run from the handle's stream each call.
    Retrieved retrieve(std::string_view simulator, RetrieveKind kind);
    Counts get_counts(std::string_view simulator);
    ShotMemory get_memory(std::string_view simulator);
    Statevector get_statevector(std::string_view simulator);
    std::string get_qasm(std::string_view simulator);
    std::string get_qiskit(std::string_view simulator);

    void set_console_output(bool enabled) noexcept { console_output_ = enabled; }
    [[nodiscard]] bool console_output() const noexcept { return console_output_; }

    void set_default_seed(std::optional<std::uint64_t> seed) noexcept { default_seed_ = seed; }
    [[nodiscard]] std::optional<std::uint64_t> default_seed() const noexcept { return default_seed_; }

    [[nodiscard]] const QuantumCircuit *circuit(std::string_view name) const;
    [[nodiscard]] const SimulatorHandle *simulator(std::string_view name) const;

    /// Report an error through this registry's log (used by front ends for
    /// failures that happen before a registry call, such as parse errors).
    void log_error(const std::string &text) const;

    /// Compares registry state; the log sink is ignored.
    bool operator==(const SessionRegistry &other) const;

  private:
    void info(const std::string &text) const;
    template <typename F> decltype(auto) guarded(F &&body);

    QuantumCircuit &find_circuit(std::string_view name);
    SimulatorHandle &find_simulator(std::string_view name);
    void refresh_followers(const std::string &circuit);
    void install(QuantumCircuit circuit);

    std::map<std::string, QuantumCircuit, std::less<>> circuits_;
    std::map<std::string, SimulatorHandle, std::less<>> simulators_;
    bool console_output_ = true;
    std::optional<std::uint64_t> default_seed_;
    LogSink sink_;
};

/// `state count state count ...`, the payload of a counts message.
[[nodiscard]] std::string format_counts_pairs(const Counts &counts);

} // namespace qac
