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

#include "qac/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "qac/errors.hpp"
#include "qac/qasm.hpp"
#include "qac/sampling.hpp"
#include "qac/text.hpp"

namespace qac::bench {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

} // namespace

QuantumCircuit h_measure_circuit() {
    QuantumCircuit c("h_measure", 1, 1);
    c.append(gates::h(0));
    c.append(gates::measure(0, 0));
    return c;
}

std::vector<BenchRow> run_bench(const BenchSpec &spec) {
    if (spec.shots_list.empty())
        throw ArgumentError("the shots list is empty");
    for (auto s : spec.shots_list)
        if (s == 0)
            throw ArgumentError("shots must be positive");
    if (spec.repetitions < 3)
        throw ArgumentError("at least 3 repetitions are required");

    const std::string qasm_text = spec.qasm_path.empty() ? std::string() : read_file(spec.qasm_path);
    std::ofstream csv;
    if (!spec.csv_path.empty()) {
        csv.open(spec.csv_path, std::ios::trunc);
        if (!csv)
            throw IoError("cannot write '" + spec.csv_path + "'");
    }

    Rng rng = Rng::from_optional(spec.seed);
    auto once = [&](std::uint64_t shots) {
        const QuantumCircuit circuit = qasm_text.empty() ? h_measure_circuit() : qasm::parse_qasm(qasm_text);
        (void)ShotSampler(circuit).counts(shots, rng);
    };

    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    for (auto shots : spec.shots_list) {
        once(shots);
        BenchRow row;
        row.shots = shots;
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            const auto t0 = clock::now();
            once(shots);
            row.times_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
        }
        row.median_ms = median(row.times_ms);
        row.min_ms = *std::min_element(row.times_ms.begin(), row.times_ms.end());
        row.max_ms = *std::max_element(row.times_ms.begin(), row.times_ms.end());
        rows.push_back(std::move(row));
    }
    if (csv.is_open()) {
        csv << format_csv(rows);
        if (!csv.flush())
            throw IoError("cannot write '" + spec.csv_path + "'");
    }
    return rows;
}

std::string format_csv(const std::vector<BenchRow> &rows) {
    std::string out = "shots,median_ms,min_ms,max_ms\n";
    for (const auto &r : rows)
        out += std::to_string(r.shots) + "," + text::format_number(r.median_ms) + "," +
               text::format_number(r.min_ms) + "," + text::format_number(r.max_ms) + "\n";
    return out;
}

} // namespace qac::bench
