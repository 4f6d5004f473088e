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
 * Shots-scaling benchmark. Each timed repetition builds the circuit,
 * simulates it and samples the requested shots; one untimed warm-up run
 * precedes every shots level. Rows report the median of the repetitions.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qac/circuit.hpp"

namespace qac::bench {

struct BenchSpec {
    /// Empty means the built-in 1-qubit h+measure circuit.
    std::string qasm_path;
    std::vector<std::uint64_t> shots_list;
    std::size_t repetitions = 5;
    /// Empty means no CSV file.
    std::string csv_path;
    std::optional<std::uint64_t> seed;
};

struct BenchRow {
    std::uint64_t shots = 0;
    double median_ms = 0.0;
    double min_ms = 0.0;
    double max_ms = 0.0;
    std::vector<double> times_ms;
};

/// One qubit, one clbit, h then measure.
[[nodiscard]] QuantumCircuit h_measure_circuit();

/// ArgumentError for an empty shots list, zero shots or fewer than 3
/// repetitions; IoError when the QASM file or the CSV path is unusable.
[[nodiscard]] std::vector<BenchRow> run_bench(const BenchSpec &spec);

/// Header `shots,median_ms,min_ms,max_ms` and one line per row.
[[nodiscard]] std::string format_csv(const std::vector<BenchRow> &rows);

} // namespace qac::bench
