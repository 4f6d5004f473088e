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

#include "qac/registry.hpp"

#include <bit>
#include <cmath>
#include <iostream>

#include "qac/errors.hpp"
#include "qac/qasm.hpp"
#include "qac/text.hpp"

namespace qac {

LogSink stderr_log_sink() {
    return [](const LogEvent &e) {
        std::cerr << (e.severity == Severity::Info ? "[qac:info] " : "[qac:error] ") << e.text << '\n';
    };
}

std::string format_counts_pairs(const Counts &counts) {
    std::string out;
    for (const auto &[key, n] : counts.entries) {
        if (!out.empty())
            out += ' ';
        out += key + ' ' + std::to_string(n);
    }
    return out;
}

SessionRegistry::SessionRegistry(LogSink sink) : sink_(std::move(sink)) {}

void SessionRegistry::info(const std::string &text) const {
    if (console_output_ && sink_)
        sink_({Severity::Info, text});
}

void SessionRegistry::log_error(const std::string &text) const {
    if (sink_)
        sink_({Severity::Error, text});
}

template <typename F> decltype(auto) SessionRegistry::guarded(F &&body) {
    try {
        return body();
    } catch (const Error &e) {
        log_error(e.what());
        throw;
    }
}

bool SessionRegistry::operator==(const SessionRegistry &other) const {
    return circuits_ == other.circuits_ && simulators_ == other.simulators_ &&
           console_output_ == other.console_output_ && default_seed_ == other.default_seed_;
}

const QuantumCircuit *SessionRegistry::circuit(std::string_view name) const {
    auto it = circuits_.find(name);
    return it == circuits_.end() ? nullptr : &it->second;
}

const SimulatorHandle *SessionRegistry::simulator(std::string_view name) const {
    auto it = simulators_.find(name);
    return it == simulators_.end() ? nullptr : &it->second;
}

QuantumCircuit &SessionRegistry::find_circuit(std::string_view name) {
    auto it = circuits_.find(name);
    if (it == circuits_.end())
        throw NameError("no QuantumCircuit named '" + std::string(name) + "' has been set");
    return it->second;
}

SimulatorHandle &SessionRegistry::find_simulator(std::string_view name) {
    auto it = simulators_.find(name);
    if (it == simulators_.end())
        throw NameError("no Simulator named '" + std::string(name) + "' has been set");
    return it->second;
}

void SessionRegistry::refresh_followers(const std::string &circuit) {
    const auto &current = circuits_.at(circuit);
    for (auto &[name, sim] : simulators_)
        if (sim.sim_update && !sim.detached && sim.source_circuit == circuit)
            sim.snapshot = current;
}

void SessionRegistry::install(QuantumCircuit circuit) {
    const std::string name = circuit.name();
    const bool reset = circuits_.contains(name);
    circuits_.insert_or_assign(name, std::move(circuit));
    const auto &stored = circuits_.at(name);
    info("QuantumCircuit " + name + (reset ? " reset" : " created") + " with " +
         std::to_string(stored.num_qubits()) + " qubit(s) and " + std::to_string(stored.num_clbits()) +
         " classical bit(s)");
    if (!reset)
        return;
    for (auto &[sim_name, sim] : simulators_) {
        if (sim.source_circuit == name && !sim.detached) {
            sim.detached = true;
            info("warning: Simulator " + sim_name + " is detached from re-created circuit " + name +
                 " and keeps its last snapshot");
        }
    }
}

void SessionRegistry::store_circuit(QuantumCircuit circuit) {
    guarded([&] {
        if (circuit.name().empty())
            throw ArgumentError("QuantumCircuit name must not be empty");
        install(std::move(circuit));
    });
}

void SessionRegistry::create_circuits(std::span<const CircuitSpec> specs) {
    guarded([&] {
        if (specs.empty())
            throw ArgumentError("QuantumCircuit needs at least one name and size");
        std::vector<QuantumCircuit> built;
        for (const auto &spec : specs) {
            if (spec.name.empty())
                throw ArgumentError("QuantumCircuit name must not be empty");
            if (spec.num_qubits <= 0)
                throw ArgumentError("QuantumCircuit '" + spec.name + "' needs a positive qubit count");
            if (spec.num_clbits && *spec.num_clbits < 0)
                throw ArgumentError("QuantumCircuit '" + spec.name +
                                    "' needs a non-negative classical bit count");
            built.emplace_back(spec.name, static_cast<std::size_t>(spec.num_qubits),
                               static_cast<std::size_t>(spec.num_clbits.value_or(0)));
        }
        for (auto &c : built)
            install(std::move(c));
    });
}

namespace {

std::size_t index_arg(double v, std::string_view gate, const char *what) {
    if (v < 0)
        throw RangeError(std::string(gate) + ": " + what + " " + text::format_number(v) +
                         " is outside of range");
    if (v != std::floor(v) || v > 1e9)
        throw ArgumentError(std::string(gate) + ": " + what + " must be an integer, got " +
                            text::format_number(v));
    return static_cast<std::size_t>(v);
}

GateOp gate_from_message(const QuantumCircuit &circuit, std::string_view token,
                         std::span<const double> args) {
    auto kind = gate_from_token(token);
    if (!kind)
        throw ArgumentError("unknown gate '" + std::string(token) + "'");
    for (double v : args)
        if (!std::isfinite(v))
            throw ArgumentError(std::string(token) + ": arguments must be finite numbers");

    if (*kind == GateKind::Unitary) {
        Matrix m = Matrix::from_wire(args);
        const auto k = static_cast<std::size_t>(std::countr_zero(m.dim()));
        if (k > circuit.num_qubits())
            throw RangeError("unitary on " + std::to_string(k) + " qubits is outside of range for '" +
                             circuit.name() + "' (" + std::to_string(circuit.num_qubits()) +
                             " qubit(s))");
        std::vector<std::size_t> qubits(k);
        for (std::size_t i = 0; i < k; ++i)
            qubits[i] = i;
        return GateOp{GateKind::Unitary, std::move(qubits), {}, std::move(m), {}};
    }

    const bool angled = is_parameterized(*kind);
    const std::size_t want =
        *kind == GateKind::Measure ? 2 : gate_arity(*kind) + (angled ? 1 : 0);
    if (args.size() != want)
        throw ArgumentError(std::string(token) + " expects " + std::to_string(want) +
                            " argument(s), got " + std::to_string(args.size()));

    GateOp op;
    op.kind = *kind;
    std::size_t first = 0;
    if (angled) {
        op.angle = args[0];
        first = 1;
    }
    if (*kind == GateKind::Measure) {
        op.qubits = {index_arg(args[0], token, "qubit")};
        op.clbit = index_arg(args[1], token, "classical bit");
        return op;
    }
    for (std::size_t i = first; i < args.size(); ++i)
        op.qubits.push_back(index_arg(args[i], token, "qubit"));
    return op;
}

std::string describe(std::string_view gate, std::span<const double> args) {
    std::string out(gate);
    if (gate == "unitary")
        return out + " (" + std::to_string(args.size()) + " values)";
    for (double v : args)
        out += ' ' + text::format_number(v);
    return out;
}

} // namespace

void SessionRegistry::append_gate(std::string_view circuit_name, std::string_view gate,
                                  std::span<const double> args) {
    guarded([&] {
        QuantumCircuit &circuit = find_circuit(circuit_name);
        GateOp op = gate_from_message(circuit, gate, args);
        if (op.kind == GateKind::Measure && circuit.num_clbits() == 0)
            throw NoClbitsError("cannot add a measurement to '" + circuit.name() +
                                "': it has no classical bits to store it");
        circuit.append(std::move(op));
        refresh_followers(circuit.name());
        info(circuit.name() + ": added " + describe(gate, args));
    });
}

void SessionRegistry::compose_circuits(std::string_view dst_name, std::string_view src_name) {
    guarded([&] {
        QuantumCircuit &dst = find_circuit(dst_name);
        const QuantumCircuit &src = find_circuit(src_name);
        dst.compose(src);
        refresh_followers(dst.name());
        info(dst.name() + ": added the contents of " + std::string(src_name));
    });
}

void SessionRegistry::create_simulator(std::string_view name, std::string_view circuit_name,
                                       std::int64_t shots, bool sim_update,
                                       std::optional<std::uint64_t> seed) {
    guarded([&] {
        if (name.empty())
            throw ArgumentError("Simulator name must not be empty");
        const QuantumCircuit &source = find_circuit(circuit_name);
        if (shots <= 0)
            throw ArgumentError("Simulator shots must be positive");
        const std::uint64_t s = seed ? *seed : default_seed_ ? *default_seed_ : entropy_seed();
        SimulatorHandle handle{std::string(name), source.name(), source,
                               static_cast<std::uint64_t>(shots), sim_update, s, Rng(s), false};
        const bool reset = simulators_.contains(name);
        simulators_.insert_or_assign(std::string(name), std::move(handle));
        info("Simulator " + std::string(name) + (reset ? " reset" : " created") + " for " +
             source.name() + " with " + std::to_string(shots) + " shots" +
             (sim_update ? " (sim_update on)" : ""));
    });
}

Retrieved SessionRegistry::retrieve(std::string_view simulator_name, RetrieveKind kind) {
    return guarded([&]() -> Retrieved {
        SimulatorHandle &sim = find_simulator(simulator_name);
        switch (kind) {
        case RetrieveKind::Statevector: {
            auto sv = run_statevector(sim.snapshot);
            info(sim.name + ": statevector of " + sim.source_circuit);
            return sv;
        }
        case RetrieveKind::Counts:
        case RetrieveKind::Memory: {
            // Builds (and validates) before touching the stream.
            ShotSampler sampler(sim.snapshot);
            info(sim.name + ": running " + std::to_string(sim.shots) + " shots of " +
                 sim.source_circuit);
            if (kind == RetrieveKind::Counts)
                return sampler.counts(sim.shots, sim.stream);
            return sampler.memory(sim.shots, sim.stream);
        }
        }
        throw ArgumentError("unknown retrieval");
    });
}

Counts SessionRegistry::get_counts(std::string_view simulator) {
    return std::get<Counts>(retrieve(simulator, RetrieveKind::Counts));
}

ShotMemory SessionRegistry::get_memory(std::string_view simulator) {
    return std::get<ShotMemory>(retrieve(simulator, RetrieveKind::Memory));
}

Statevector SessionRegistry::get_statevector(std::string_view simulator) {
    return std::get<Statevector>(retrieve(simulator, RetrieveKind::Statevector));
}

std::string SessionRegistry::get_qasm(std::string_view simulator_name) {
    return guarded([&] {
        const SimulatorHandle &sim = find_simulator(simulator_name);
        auto text = qasm::emit_qasm(sim.snapshot);
        info(sim.name + ": converted " + sim.source_circuit + " to Qasm");
        return text;
    });
}

std::string SessionRegistry::get_qiskit(std::string_view simulator_name) {
    return guarded([&] {
        const SimulatorHandle &sim = find_simulator(simulator_name);
        auto text = qasm::emit_framework_code(sim.snapshot, sim.shots);
        info(sim.name + ": converted " + sim.source_circuit + " to Qiskit code");
        return text;
    });
}

} // namespace qac
