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

#include "qac/sampling.hpp"

#include <algorithm>
#include <utility>

#include "qac/errors.hpp"

namespace qac {

Counts aggregate(const ShotMemory &memory) {
    Counts counts;
    for (const auto &record : memory.records)
        ++counts.entries[record];
    counts.shots = memory.records.size();
    return counts;
}

std::string pattern_to_bitstring(std::uint64_t pattern, std::size_t num_clbits) {
    std::string out(num_clbits, '0');
    for (std::size_t c = 0; c < num_clbits; ++c)
        if (pattern & (std::uint64_t{1} << c))
            out[num_clbits - 1 - c] = '1';
    return out;
}

OutcomeDistribution outcome_distribution(const QuantumCircuit &circuit, const Statevector &state) {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    // Last measurement into a clbit wins.
    std::vector<std::size_t> source(circuit.num_clbits(), kNone);
    for (const auto &op : circuit.ops())
        if (op.kind == GateKind::Measure)
            source[*op.clbit] = op.qubits.front();

    std::vector<std::pair<std::uint64_t, double>> weighted;
    weighted.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double p = std::norm(state[i]);
        if (p == 0.0)
            continue;
        std::uint64_t pattern = 0;
        for (std::size_t c = 0; c < source.size(); ++c)
            if (source[c] != kNone && ((i >> source[c]) & 1U))
                pattern |= std::uint64_t{1} << c;
        weighted.emplace_back(pattern, p);
    }
    std::sort(weighted.begin(), weighted.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });

    OutcomeDistribution dist;
    dist.num_clbits = circuit.num_clbits();
    for (const auto &[pattern, p] : weighted) {
        if (!dist.patterns.empty() && dist.patterns.back() == pattern) {
            dist.probabilities.back() += p;
        } else {
            dist.patterns.push_back(pattern);
            dist.probabilities.push_back(p);
        }
    }
    return dist;
}

namespace {
void require_measurable(const QuantumCircuit &circuit) {
    if (circuit.num_clbits() == 0)
        throw NoClbitsError("cannot sample circuit '" + circuit.name() +
                            "': circuits without classical bits have no results");
    if (!circuit.has_measurement())
        throw NoMeasureError("cannot run a simulation of '" + circuit.name() +
                             "' without measurement gates");
}

void require_shots(std::uint64_t shots) {
    if (shots == 0)
        throw ArgumentError("shots must be positive");
}
} // namespace

ShotSampler::ShotSampler(const QuantumCircuit &circuit)
    : ShotSampler((require_measurable(circuit), circuit), run_statevector(circuit)) {}

ShotSampler::ShotSampler(const QuantumCircuit &circuit, const Statevector &state) {
    require_measurable(circuit);
    dist_ = outcome_distribution(circuit, state);
    cumulative_.resize(dist_.probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cumulative_.size(); ++i) {
        acc += dist_.probabilities[i];
        cumulative_[i] = acc;
    }
}

std::size_t ShotSampler::draw(Rng &rng) const {
    const double x = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
}

Counts ShotSampler::counts(std::uint64_t shots, Rng &rng) const {
    require_shots(shots);
    std::vector<std::uint64_t> tally(dist_.patterns.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s)
        ++tally[draw(rng)];
    Counts counts;
    counts.shots = shots;
    for (std::size_t i = 0; i < tally.size(); ++i)
        if (tally[i] > 0)
            counts.entries.emplace(pattern_to_bitstring(dist_.patterns[i], dist_.num_clbits), tally[i]);
    return counts;
}

ShotMemory ShotSampler::memory(std::uint64_t shots, Rng &rng) const {
    require_shots(shots);
    std::vector<std::string> keys;
    keys.reserve(dist_.patterns.size());
    for (auto pattern : dist_.patterns)
        keys.push_back(pattern_to_bitstring(pattern, dist_.num_clbits));
    ShotMemory memory;
    memory.records.reserve(shots);
    for (std::uint64_t s = 0; s < shots; ++s)
        memory.records.push_back(keys[draw(rng)]);
    return memory;
}

Counts sample_counts(const QuantumCircuit &circuit, std::uint64_t shots, Rng &rng) {
    require_measurable(circuit);
    require_shots(shots);
    return ShotSampler(circuit).counts(shots, rng);
}

Counts sample_counts(const QuantumCircuit &circuit, std::uint64_t shots,
                     std::optional<std::uint64_t> seed) {
    Rng rng = Rng::from_optional(seed);
    return sample_counts(circuit, shots, rng);
}

ShotMemory sample_memory(const QuantumCircuit &circuit, std::uint64_t shots, Rng &rng) {
    require_measurable(circuit);
    require_shots(shots);
    return ShotSampler(circuit).memory(shots, rng);
}

ShotMemory sample_memory(const QuantumCircuit &circuit, std::uint64_t shots,
                         std::optional<std::uint64_t> seed) {
    Rng rng = Rng::from_optional(seed);
    return sample_memory(circuit, shots, rng);
}

std::string top_outcome(const Counts &counts) {
    if (counts.entries.empty())
        throw ArgumentError("counts are empty");
    // Keys share one length, so map order is ascending binary value and the
    // first maximum found is the smallest.
    auto best = counts.entries.begin();
    for (auto it = counts.entries.begin(); it != counts.entries.end(); ++it)
        if (it->second > best->second)
            best = it;
    return best->first;
}

} // namespace qac
