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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "oracle/dense_oracle.hpp"
#include "qac/errors.hpp"
#include "qac/sampling.hpp"
#include "qac/statevector.hpp"
#include "support/generators.hpp"

using namespace qac;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void expect_amplitudes(const Statevector &sv, const std::vector<Complex> &expected, double tol) {
    ASSERT_EQ(sv.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_LE(std::abs(sv[i] - expected[i]), tol) << "amplitude " << i;
}

QuantumCircuit bell(bool measured) {
    QuantumCircuit c("bell", 2, measured ? 2 : 0);
    c.append(gates::h(0)).append(gates::cx(0, 1));
    if (measured)
        c.append(gates::measure(0, 0)).append(gates::measure(1, 1));
    return c;
}

} // namespace

TEST(ApplyGate, HadamardOnGround) {
    auto sv = apply_gate(Statevector(1), gates::h(0));
    expect_amplitudes(sv, {0.70710678118654752, 0.70710678118654752}, 1e-12);
}

TEST(ApplyGate, BitFlip) {
    auto sv = apply_gate(Statevector(1), gates::x(0));
    expect_amplitudes(sv, {0.0, 1.0}, 0.0);
}

TEST(ApplyGate, BellStateMatchesOracle) {
    // The oracle's 4x4 product is the frozen reference: [1/sqrt2, 0, 0, 1/sqrt2].
    const auto reference = oracle::simulate(bell(false));
    EXPECT_NEAR(reference[0].real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(std::abs(reference[1]) + std::abs(reference[2]), 0.0, 1e-15);
    EXPECT_NEAR(reference[3].real(), kInvSqrt2, 1e-15);

    auto sv = apply_gate(apply_gate(Statevector(2), gates::h(0)), gates::cx(0, 1));
    expect_amplitudes(sv, {kInvSqrt2, 0.0, 0.0, kInvSqrt2}, 1e-12);
}

TEST(ApplyGate, QubitZeroIsLeastSignificant) {
    auto sv = apply_gate(Statevector(3), gates::x(1));
    EXPECT_EQ(sv[2], Complex(1.0));
}

TEST(ApplyGate, RejectsNonUnitaryMatrix) {
    GateOp op{GateKind::Unitary, {0}, {}, Matrix(2, {1.0, 1.0, 0.0, 1.0}), {}};
    EXPECT_THROW(apply_gate(Statevector(1), op), UnitarityError);
}

TEST(ApplyGate, AcceptsNearlyUnitaryWithinTolerance) {
    GateOp op{GateKind::Unitary, {0}, {}, Matrix(2, {1.0 + 1e-8, 0.0, 0.0, 1.0}), {}};
    EXPECT_NO_THROW(apply_gate(Statevector(1), op));
}

TEST(ApplyGate, RejectsOutOfRangeQubit) {
    EXPECT_THROW(apply_gate(Statevector(2), gates::h(2)), RangeError);
    EXPECT_THROW(apply_gate(Statevector(2), gates::cx(0, 5)), RangeError);
}

TEST(ApplyGate, RejectsMeasurement) {
    EXPECT_THROW(apply_gate(Statevector(1), gates::measure(0, 0)), ArgumentError);
}

TEST(ApplyGate, InvolutionsRestoreInput) {
    testgen::Engine rng(11);
    testgen::CircuitOptions opt;
    opt.min_qubits = 3;
    opt.max_qubits = 4;
    for (int trial = 0; trial < 20; ++trial) {
        const auto prep = testgen::random_circuit(rng, opt);
        const auto start = run_statevector(prep);
        const std::size_t n = prep.num_qubits();
        const std::vector<GateOp> involutions = {gates::x(0),      gates::h(n - 1),
                                                 gates::z(1),      gates::cx(0, n - 1),
                                                 gates::swap(1, 2), gates::y(2),
                                                 gates::ccx(0, 1, 2), gates::cz(2, 0)};
        for (const auto &g : involutions) {
            auto twice = apply_gate(apply_gate(start, g), g);
            for (std::size_t i = 0; i < start.size(); ++i)
                ASSERT_LE(std::abs(twice[i] - start[i]), 1e-12) << gate_token(g.kind);
        }
    }
}

TEST(ApplyGate, NormPreservedOnRandomCircuits) {
    testgen::Engine rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = testgen::random_circuit(rng, {});
        Statevector sv(c.num_qubits());
        for (const auto &op : c.ops()) {
            apply_gate_inplace(sv, op);
            ASSERT_NEAR(sv.norm_squared(), 1.0, 1e-9);
        }
    }
}

TEST(RunStatevector, EmptyCircuitIsGround) {
    expect_amplitudes(run_statevector(QuantumCircuit("e", 2)), {1.0, 0.0, 0.0, 0.0}, 0.0);
}

TEST(RunStatevector, SkipsMeasurements) {
    QuantumCircuit c("c", 1, 1);
    c.append(gates::h(0)).append(gates::measure(0, 0));
    expect_amplitudes(run_statevector(c), {kInvSqrt2, kInvSqrt2}, 1e-12);
}

TEST(RunStatevector, MatchesDenseOracle) {
    testgen::Engine rng(2026);
    for (int trial = 0; trial < 60; ++trial) {
        const auto c = testgen::random_circuit(rng, {});
        const auto sv = run_statevector(c);
        const auto ref = oracle::simulate(c);
        for (std::size_t i = 0; i < ref.size(); ++i)
            ASSERT_LE(std::abs(sv[i] - ref[i]), 1e-9) << "trial " << trial << " amp " << i;
    }
}

TEST(Circuit, EnforcesSizeLimits) {
    EXPECT_THROW(QuantumCircuit("a", 0), ArgumentError);
    EXPECT_THROW(QuantumCircuit("a", 21), RangeError);
    EXPECT_NO_THROW(QuantumCircuit("a", 20));
}

TEST(Circuit, AppendValidatesAndStaysUnchangedOnError) {
    QuantumCircuit c("c", 2, 1);
    c.append(gates::h(0));
    const auto before = c;
    EXPECT_THROW(c.append(gates::h(2)), RangeError);
    EXPECT_THROW(c.append(gates::measure(0, 1)), RangeError);
    EXPECT_EQ(c, before);
    QuantumCircuit no_bits("q", 1);
    EXPECT_THROW(no_bits.append(gates::measure(0, 0)), NoClbitsError);
}

TEST(Circuit, RejectsGateAfterMeasurement) {
    QuantumCircuit c("c", 2, 2);
    c.append(gates::measure(0, 0));
    EXPECT_THROW(c.append(gates::h(0)), ArgumentError);
    EXPECT_THROW(c.append(gates::cx(1, 0)), ArgumentError);
    EXPECT_NO_THROW(c.append(gates::h(1)));
}

TEST(GateOp, StructuralValidation) {
    EXPECT_THROW(gates::cx(1, 1), ArgumentError);
    GateOp missing_angle{GateKind::RX, {0}, {}, {}, {}};
    EXPECT_THROW(missing_angle.validate(), ArgumentError);
    GateOp wrong_dim{GateKind::Unitary, {0, 1}, {}, Matrix::identity(2), {}};
    EXPECT_THROW(wrong_dim.validate(), ArgumentError);
}

TEST(Matrix, WireFormats) {
    const std::vector<double> real = {1, 0, 0, -1};
    EXPECT_EQ(Matrix::from_wire(real), Matrix::diagonal(std::vector<double>{1, -1}));
    const std::vector<double> interleaved = {0, 0, 0, -1, 0, 1, 0, 0}; // Y
    const auto y = Matrix::from_wire(interleaved);
    EXPECT_EQ(y(0, 1), Complex(0, -1));
    EXPECT_EQ(y(1, 0), Complex(0, 1));
    EXPECT_THROW(Matrix::from_wire(std::vector<double>(5, 0.0)), ArgumentError);
    EXPECT_THROW(Matrix::from_wire(std::vector<double>(1, 1.0)), ArgumentError);
}

TEST(SampleCounts, HadamardAt127Shots) {
    QuantumCircuit c("qc", 1, 1);
    c.append(gates::h(0)).append(gates::measure(0, 0));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto counts = sample_counts(c, 127, seed);
        ASSERT_EQ(counts.shots, 127u);
        std::uint64_t total = 0;
        for (const auto &[key, n] : counts.entries) {
            EXPECT_TRUE(key == "0" || key == "1");
            // binomial(127, 0.5): mean 63.5, sigma 5.63 -> +-4 sigma = [41, 86]
            EXPECT_GE(n, 41u);
            EXPECT_LE(n, 86u);
            total += n;
        }
        EXPECT_EQ(total, 127u);
    }
}

TEST(SampleCounts, BellOnlyCorrelatedOutcomes) {
    auto counts = sample_counts(bell(true), 100000, 5);
    for (const auto &[key, n] : counts.entries)
        EXPECT_TRUE(key == "00" || key == "11") << key;
    EXPECT_EQ(counts.entries.size(), 2u);
}

TEST(SampleCounts, DeterministicOutcome) {
    QuantumCircuit c("c", 1, 1);
    c.append(gates::x(0)).append(gates::measure(0, 0));
    auto counts = sample_counts(c, 33, 1);
    EXPECT_EQ(counts.entries, (std::map<std::string, std::uint64_t>{{"1", 33}}));
}

TEST(SampleCounts, KeyOrderAndUnmeasuredClbits) {
    // x on qubit 1 measured into clbit 2 of 3: key "100"; clbits 0,1 read 0.
    QuantumCircuit c("c", 2, 3);
    c.append(gates::x(1)).append(gates::measure(1, 2)).append(gates::measure(0, 0));
    auto counts = sample_counts(c, 10, 0);
    EXPECT_EQ(counts.entries, (std::map<std::string, std::uint64_t>{{"100", 10}}));
}

TEST(SampleCounts, Errors) {
    QuantumCircuit no_bits("a", 1);
    EXPECT_THROW((void)sample_counts(no_bits, 10, 0), NoClbitsError);
    QuantumCircuit no_measure("b", 1, 1);
    no_measure.append(gates::h(0));
    EXPECT_THROW((void)sample_counts(no_measure, 10, 0), NoMeasureError);
    QuantumCircuit ok("c", 1, 1);
    ok.append(gates::measure(0, 0));
    EXPECT_THROW((void)sample_counts(ok, 0, 0), ArgumentError);
}

TEST(SampleCounts, FixedSeedIsBitIdentical) {
    testgen::Engine rng(8);
    testgen::CircuitOptions opt;
    opt.measure_all = true;
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = testgen::random_circuit(rng, opt);
        EXPECT_EQ(sample_counts(c, 500, 99), sample_counts(c, 500, 99));
        EXPECT_EQ(sample_memory(c, 500, 99), sample_memory(c, 500, 99));
    }
}

TEST(SampleCounts, FrequenciesWithinFourSigma) {
    QuantumCircuit c("c", 2, 2);
    c.append(gates::ry(1.0, 0)).append(gates::h(1)).append(gates::crz(0.3, 1, 0))
        .append(gates::measure(0, 0)).append(gates::measure(1, 1));
    const auto probs = run_statevector(c).probabilities();
    const std::uint64_t shots = 1'000'000;
    auto counts = sample_counts(c, shots, 42);
    for (std::size_t i = 0; i < 4; ++i) {
        const double p = probs[i];
        const double freq = static_cast<double>(counts.entries[pattern_to_bitstring(i, 2)]) / shots;
        EXPECT_LE(std::abs(freq - p), 4.0 * std::sqrt(p * (1 - p) / shots)) << i;
    }
}

TEST(SampleMemory, Examples) {
    QuantumCircuit flip("c", 1, 1);
    flip.append(gates::x(0)).append(gates::measure(0, 0));
    EXPECT_EQ(sample_memory(flip, 3, 0).records, (std::vector<std::string>{"1", "1", "1"}));

    QuantumCircuit had("c", 1, 1);
    had.append(gates::h(0)).append(gates::measure(0, 0));
    for (std::uint64_t seed : {1u, 17u, 12345u})
        EXPECT_EQ(aggregate(sample_memory(had, 127, seed)), sample_counts(had, 127, seed));

    for (const auto &r : sample_memory(bell(true), 10, 4).records)
        EXPECT_TRUE(r == "00" || r == "11");
}

TEST(TopOutcome, TieGoesToSmallestValue) {
    Counts c{{{"00", 50}, {"11", 50}}, 100};
    EXPECT_EQ(top_outcome(c), "00");
    Counts d{{{"00", 10}, {"10", 60}, {"11", 30}}, 100};
    EXPECT_EQ(top_outcome(d), "10");
}
