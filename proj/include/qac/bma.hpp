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
 * Basak-Miranda pitch sequencing: a first-order Markov chain whose next
 * pitch is picked by one Grover iteration over the allowed transitions.
 *
 * Table files are JSON:
 *
 *     {"labels": [{"name": "C", "midi": 60}, ...],
 *      "matrix": [[0, 0, 1, ...], ...]}
 *
 * Row i lists the pitches allowed to follow label i (1 = allowed).
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qac/circuit.hpp"
#include "qac/errors.hpp"
#include "qac/gate.hpp"
#include "qac/rng.hpp"
#include "qac/sampling.hpp"

namespace qac::bma {

struct Label {
    std::string name;
    int midi = 0;

    bool operator==(const Label &) const = default;
};

class TransitionTable {
  public:
    /// Throws ArgumentError unless: at least 2 labels with unique non-empty
    /// names and MIDI notes in 0..127, a square 0/1 matrix of that size, and
    /// at least one allowed successor per row.
    TransitionTable(std::vector<Label> labels, std::vector<std::vector<int>> matrix);

    [[nodiscard]] const std::vector<Label> &labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<std::vector<int>> &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }

    /// Throws NameError for unknown labels.
    [[nodiscard]] std::size_t index_of(std::string_view label) const;

    [[nodiscard]] bool allows(std::size_t from, std::size_t to) const { return matrix_.at(from).at(to) == 1; }

    bool operator==(const TransitionTable &) const = default;

  private:
    std::vector<Label> labels_;
    std::vector<std::vector<int>> matrix_;
};

/// Throws ArgumentError on malformed JSON or schema violations.
[[nodiscard]] TransitionTable parse_table_json(std::string_view json_text);

/// Throws IoError if the file cannot be read.
[[nodiscard]] TransitionTable load_table(const std::string &path);

/// One flag per label: the table row for `current_label`.
[[nodiscard]] std::vector<int> get_target_states(const TransitionTable &table, std::string_view current_label);

/// ceil(log2(num_states)); ArgumentError below 2.
[[nodiscard]] std::size_t states2qubits(std::size_t num_states);

/// Qubits used for a table: states2qubits, lifted to at least 2.
[[nodiscard]] std::size_t qubits_for_table(std::size_t num_labels);

enum class ProportionCheck { Ok, Warning };

/// Warning iff popcount(flags) / 2^n >= 1/2.
[[nodiscard]] ProportionCheck check_proportion(const std::vector<int> &flags, std::size_t n);

/// diag(+-1) of size 2^n: -1 where a flag is set, +1 elsewhere and on the
/// padded tail. ArgumentError when no flag is set or flags exceed 2^n.
[[nodiscard]] Matrix build_oracle_matrix(const std::vector<int> &flags, std::size_t n);

/// H-all, oracle, diffusion, measure-all. Throws UnsupportedError for n
/// outside 2..4 and ProportionError when the targets are half or more of
/// the 2^n states.
[[nodiscard]] QuantumCircuit build_bma_circuit(const std::vector<int> &flags, std::size_t n,
                                               std::string name = "bma");

/// The same construction as session messages, ending with a simulator:
/// "QuantumCircuit qc n n", "qc h 0, qc h 1, ...", "qc unitary ...", ...,
/// "Simulator sim qc shots 1".
[[nodiscard]] std::vector<std::string> bma_session_messages(const std::vector<int> &flags, std::size_t n,
                                                            std::uint64_t shots, const std::string &circuit = "qc",
                                                            const std::string &simulator = "sim");

struct NoteChoice {
    std::size_t index = 0;
    std::string label;
    int midi = 0;
    std::string state;
    std::uint64_t count = 0;

    bool operator==(const NoteChoice &) const = default;
};

/// Winner = highest tally, ties to the smallest state value. Throws
/// ResampleSignal when the winner has no label (a padded state), and
/// ArgumentError for empty counts.
[[nodiscard]] NoteChoice calc_next_note(const Counts &counts, const std::vector<Label> &labels);

/// Highest-tally state that has a label; the fallback after repeated
/// padded-state wins. ArgumentError if no labelled state was observed.
[[nodiscard]] NoteChoice best_labelled_note(const Counts &counts, const std::vector<Label> &labels);

struct SequencerConfig {
    std::string start_label;
    std::size_t num_loops = 0;
    std::uint32_t period_ms = 150;
    std::uint64_t shots = 100;
    std::optional<std::uint64_t> seed;
    /// Sleep so event k is emitted at k * period_ms of wall time.
    bool realtime = false;
};

struct NoteEvent {
    std::uint64_t t_ms = 0;
    int midi = 0;
    std::string label;
    std::string winning_state;
    std::uint64_t winning_count = 0;
    /// Padded-state wins that were re-drawn before this note.
    std::size_t resamples = 0;

    bool operator==(const NoteEvent &) const = default;
};

/// `t_ms,midi,label,state,count`
[[nodiscard]] std::string format_event(const NoteEvent &event);

struct SequenceResult {
    std::vector<NoteEvent> events;
    /// Set when synthesis failed; `events` holds the notes produced before.
    std::optional<ErrorKind> error_kind;
    std::string error_message;
};

inline constexpr std::size_t kMaxResamples = 8;

/// Runs the loop; `on_event` (if set) sees each event as it is produced.
SequenceResult run_sequencer(const TransitionTable &table, const SequencerConfig &config,
                             const std::function<void(const NoteEvent &)> &on_event = {});

} // namespace qac::bma
