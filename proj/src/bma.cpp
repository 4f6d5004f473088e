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

#include "qac/bma.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qac::bma {

TransitionTable::TransitionTable(std::vector<Label> labels, std::vector<std::vector<int>> matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
    const std::size_t n = labels_.size();
    if (n < 2)
        throw ArgumentError("a transition table needs at least 2 labels, got " + std::to_string(n));
    std::set<std::string> seen;
    for (const auto &l : labels_) {
        if (l.name.empty())
            throw ArgumentError("label names must not be empty");
        if (!seen.insert(l.name).second)
            throw ArgumentError("duplicate label '" + l.name + "'");
        if (l.midi < 0 || l.midi > 127)
            throw ArgumentError("label '" + l.name + "' has MIDI note " + std::to_string(l.midi) +
                                " outside 0..127");
    }
    if (matrix_.size() != n)
        throw ArgumentError("matrix has " + std::to_string(matrix_.size()) + " rows for " +
                            std::to_string(n) + " labels");
    for (std::size_t i = 0; i < n; ++i) {
        const auto &row = matrix_[i];
        if (row.size() != n)
            throw ArgumentError("matrix row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(n));
        bool any = false;
        for (int v : row) {
            if (v != 0 && v != 1)
                throw ArgumentError("matrix row " + std::to_string(i) + " has a non-binary entry " +
                                    std::to_string(v));
            any |= v == 1;
        }
        if (!any)
            throw ArgumentError("matrix row for '" + labels_[i].name + "' allows no next pitch");
    }
}

std::size_t TransitionTable::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i].name == label)
            return i;
    throw NameError("no label named '" + std::string(label) + "' in the transition table");
}

TransitionTable parse_table_json(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ArgumentError(std::string("transition table is not valid JSON: ") + e.what());
    }
    try {
        std::vector<Label> labels;
        for (const auto &l : doc.at("labels"))
            labels.push_back({l.at("name").get<std::string>(), l.at("midi").get<int>()});
        auto matrix = doc.at("matrix").get<std::vector<std::vector<int>>>();
        return TransitionTable(std::move(labels), std::move(matrix));
    } catch (const json::exception &e) {
        throw ArgumentError(std::string("transition table schema: ") + e.what());
    }
}

TransitionTable load_table(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read transition table '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_table_json(ss.str());
}

std::vector<int> get_target_states(const TransitionTable &table, std::string_view current_label) {
    return table.matrix()[table.index_of(current_label)];
}

std::size_t states2qubits(std::size_t num_states) {
    if (num_states < 2)
        throw ArgumentError("BMA needs at least 2 states, got " + std::to_string(num_states));
    std::size_t n = 0;
    while ((std::size_t{1} << n) < num_states)
        ++n;
    return n;
}

std::size_t qubits_for_table(std::size_t num_labels) {
    return std::max<std::size_t>(2, states2qubits(num_labels));
}

namespace {

std::size_t popcount(const std::vector<int> &flags) {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

} // namespace

ProportionCheck check_proportion(const std::vector<int> &flags, std::size_t n) {
    // popcount / 2^n >= 1/2  <=>  2 * popcount >= 2^n
    const auto states = n >= 63 ? ~std::size_t{0} : std::size_t{1} << n;
    return 2 * popcount(flags) >= states ? ProportionCheck::Warning : ProportionCheck::Ok;
}

Matrix build_oracle_matrix(const std::vector<int> &flags, std::size_t n) {
    if (n == 0 || n > kMaxQubits)
        throw RangeError("oracle size of " + std::to_string(n) + " qubits is outside of range");
    const std::size_t dim = std::size_t{1} << n;
    if (flags.size() > dim)
        throw ArgumentError(std::to_string(flags.size()) + " target flags do not fit " + std::to_string(n) +
                            " qubits");
    if (popcount(flags) == 0)
        throw ArgumentError("the oracle needs at least one target state");
    std::vector<double> diag(dim, 1.0);
    for (std::size_t i = 0; i < flags.size(); ++i)
        if (flags[i] == 1)
            diag[i] = -1.0;
    return Matrix::diagonal(diag);
}

namespace {

void check_synthesis(const std::vector<int> &flags, std::size_t n) {
    if (n < 2 || n > 4)
        throw UnsupportedError("BMA circuits are synthesized for 2 to 4 qubits, not " + std::to_string(n));
    if (check_proportion(flags, n) == ProportionCheck::Warning)
        throw ProportionError(std::to_string(popcount(flags)) + " target states out of " +
                              std::to_string(std::size_t{1} << n) +
                              " is not less than half; one iteration cannot amplify them");
}

// The gate sequence after the oracle, shared by the circuit and the messages.
std::vector<GateOp> diffusion(std::size_t n) {
    std::vector<GateOp> ops;
    for (std::size_t q = 0; q < n; ++q)
        ops.push_back(gates::h(q));
    for (std::size_t q = 0; q < n; ++q)
        ops.push_back(gates::x(q));
    ops.push_back(gates::h(n - 1));
    switch (n) {
    case 2:
        ops.push_back(gates::cx(0, 1));
        break;
    case 3:
        ops.push_back(gates::ccx(0, 1, 2));
        break;
    default:
        ops.push_back(gates::cccx(0, 1, 2, 3));
        break;
    }
    ops.push_back(gates::h(n - 1));
    for (std::size_t q = 0; q < n; ++q)
        ops.push_back(gates::x(q));
    for (std::size_t q = 0; q < n; ++q)
        ops.push_back(gates::h(q));
    return ops;
}

std::vector<std::size_t> all_qubits(std::size_t n) {
    std::vector<std::size_t> qs(n);
    for (std::size_t i = 0; i < n; ++i)
        qs[i] = i;
    return qs;
}

} // namespace

QuantumCircuit build_bma_circuit(const std::vector<int> &flags, std::size_t n, std::string name) {
    check_synthesis(flags, n);
    QuantumCircuit c(std::move(name), n, n);
    for (std::size_t q = 0; q < n; ++q)
        c.append(gates::h(q));
    c.append(gates::unitary(build_oracle_matrix(flags, n), all_qubits(n)));
    for (auto &op : diffusion(n))
        c.append(std::move(op));
    for (std::size_t q = 0; q < n; ++q)
        c.append(gates::measure(q, q));
    return c;
}

std::vector<std::string> bma_session_messages(const std::vector<int> &flags, std::size_t n,
                                              std::uint64_t shots, const std::string &circuit,
                                              const std::string &simulator) {
    check_synthesis(flags, n);
    const auto ns = std::to_string(n);
    std::vector<std::string> out;
    out.push_back("QuantumCircuit " + circuit + " " + ns + " " + ns);
    out.push_back("Simulator " + simulator + " " + circuit + " " + std::to_string(shots) + " 1");

    // Consecutive single-gate messages are grouped like a message box.
    auto group = [&](const std::vector<GateOp> &ops) {
        std::string line;
        for (const auto &op : ops) {
            if (!line.empty())
                line += ", ";
            line += circuit + " " + std::string(gate_token(op.kind));
            for (auto q : op.qubits)
                line += " " + std::to_string(q);
            if (op.kind == GateKind::Measure)
                line += " " + std::to_string(*op.clbit);
        }
        out.push_back(line);
    };

    std::vector<GateOp> hs;
    for (std::size_t q = 0; q < n; ++q)
        hs.push_back(gates::h(q));
    group(hs);

    const Matrix oracle = build_oracle_matrix(flags, n);
    std::string u = circuit + " unitary";
    for (std::size_t r = 0; r < oracle.dim(); ++r)
        for (std::size_t c = 0; c < oracle.dim(); ++c)
            u += oracle(r, c).real() < 0 ? " -1" : oracle(r, c).real() > 0 ? " 1" : " 0";
    out.push_back(u);

    group(diffusion(n));

    std::vector<GateOp> ms;
    for (std::size_t q = 0; q < n; ++q)
        ms.push_back(gates::measure(q, q));
    group(ms);
    return out;
}

namespace {

std::size_t state_value(const std::string &bits) {
    std::size_t v = 0;
    for (char c : bits)
        v = (v << 1) | (c == '1' ? 1u : 0u);
    return v;
}

NoteChoice choice_for(std::size_t index, const std::string &state, std::uint64_t count,
                      const std::vector<Label> &labels) {
    return {index, labels[index].name, labels[index].midi, state, count};
}

} // namespace

NoteChoice calc_next_note(const Counts &counts, const std::vector<Label> &labels) {
    if (counts.entries.empty())
        throw ArgumentError("no counts to choose a note from");
    const std::string *best = nullptr;
    std::uint64_t best_count = 0;
    std::size_t best_value = 0;
    for (const auto &[key, n] : counts.entries) {
        const std::size_t v = state_value(key);
        if (!best || n > best_count || (n == best_count && v < best_value)) {
            best = &key;
            best_count = n;
            best_value = v;
        }
    }
    if (best_value >= labels.size())
        throw ResampleSignal("state " + *best + " has no label (" + std::to_string(labels.size()) +
                                 " labels); resample",
                             best_value);
    return choice_for(best_value, *best, best_count, labels);
}

NoteChoice best_labelled_note(const Counts &counts, const std::vector<Label> &labels) {
    Counts labelled;
    for (const auto &[key, n] : counts.entries)
        if (state_value(key) < labels.size())
            labelled.entries.emplace(key, n);
    if (labelled.entries.empty())
        throw ArgumentError("no labelled state was measured");
    return calc_next_note(labelled, labels);
}

std::string format_event(const NoteEvent &e) {
    return std::to_string(e.t_ms) + "," + std::to_string(e.midi) + "," + e.label + "," + e.winning_state +
           "," + std::to_string(e.winning_count);
}

SequenceResult run_sequencer(const TransitionTable &table, const SequencerConfig &config,
                             const std::function<void(const NoteEvent &)> &on_event) {
    if (config.shots == 0)
        throw ArgumentError("sequencer shots must be positive");
    if (config.period_ms == 0)
        throw ArgumentError("sequencer period must be positive");
    std::size_t current = table.index_of(config.start_label);

    SequenceResult result;
    Rng rng = Rng::from_optional(config.seed);
    const std::size_t n = qubits_for_table(table.size());
    std::vector<std::optional<QuantumCircuit>> circuits(table.size());
    const auto start = std::chrono::steady_clock::now();

    for (std::size_t k = 0; k < config.num_loops; ++k) {
        if (config.realtime)
            std::this_thread::sleep_until(start + std::chrono::milliseconds(k * config.period_ms));
        try {
            if (!circuits[current])
                circuits[current] = build_bma_circuit(table.matrix()[current], n);
            ShotSampler sampler(*circuits[current]);

            std::size_t resamples = 0;
            NoteChoice choice;
            for (;;) {
                const Counts counts = sampler.counts(config.shots, rng);
                try {
                    choice = calc_next_note(counts, table.labels());
                    break;
                } catch (const ResampleSignal &) {
                    if (resamples == kMaxResamples) {
                        choice = best_labelled_note(counts, table.labels());
                        break;
                    }
                    ++resamples;
                }
            }
            NoteEvent ev{k * config.period_ms, choice.midi, choice.label, choice.state, choice.count, resamples};
            if (on_event)
                on_event(ev);
            result.events.push_back(std::move(ev));
            current = choice.index;
        } catch (const Error &e) {
            result.error_kind = e.kind();
            result.error_message = e.what();
            break;
        }
    }
    return result;
}

} // namespace qac::bma
