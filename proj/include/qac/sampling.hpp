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
 * Shot sampling: counts and per-shot memory.
 *
 * Measurements sit at the end of each qubit's history, so sampling is a pure
 * post-processing step over the final statevector. Bitstring keys put the
 * highest-index classical bit leftmost; clbits that no measurement writes
 * read 0.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qac/circuit.hpp"
#include "qac/rng.hpp"
#include "qac/statevector.hpp"

namespace qac {

struct Counts {
    std::map<std::string, std::uint64_t> entries;
    std::uint64_t shots = 0;

    bool operator==(const Counts &) const = default;
};

struct ShotMemory {
    std::vector<std::string> records;

    bool operator==(const ShotMemory &) const = default;
};

[[nodiscard]] Counts aggregate(const ShotMemory &memory);

/// Probability of each reachable classical pattern (bit j = clbit j).
struct OutcomeDistribution {
    std::size_t num_clbits = 0;
    std::vector<std::uint64_t> patterns; // ascending
    std::vector<double> probabilities;   // parallel to patterns
};

[[nodiscard]] OutcomeDistribution outcome_distribution(const QuantumCircuit &circuit,
                                                       const Statevector &state);

[[nodiscard]] std::string pattern_to_bitstring(std::uint64_t pattern, std::size_t num_clbits);

/// Reusable sampler; build once, draw many times.
class ShotSampler {
  public:
    /// Throws NoClbitsError / NoMeasureError.
    explicit ShotSampler(const QuantumCircuit &circuit);
    ShotSampler(const QuantumCircuit &circuit, const Statevector &state);

    [[nodiscard]] const OutcomeDistribution &distribution() const noexcept { return dist_; }

    /// Index into distribution().patterns for one shot.
    std::size_t draw(Rng &rng) const;

    Counts counts(std::uint64_t shots, Rng &rng) const;
    ShotMemory memory(std::uint64_t shots, Rng &rng) const;

  private:
    OutcomeDistribution dist_;
    std::vector<double> cumulative_;
};

/// Throws NoClbitsError, NoMeasureError, or ArgumentError for shots == 0.
[[nodiscard]] Counts sample_counts(const QuantumCircuit &circuit, std::uint64_t shots,
                                   std::optional<std::uint64_t> seed = std::nullopt);
[[nodiscard]] Counts sample_counts(const QuantumCircuit &circuit, std::uint64_t shots, Rng &rng);

[[nodiscard]] ShotMemory sample_memory(const QuantumCircuit &circuit, std::uint64_t shots,
                                       std::optional<std::uint64_t> seed = std::nullopt);
[[nodiscard]] ShotMemory sample_memory(const QuantumCircuit &circuit, std::uint64_t shots,
                                       Rng &rng);

/// Key with the highest tally; ties go to the smallest binary value.
[[nodiscard]] std::string top_outcome(const Counts &counts);

} // namespace qac
