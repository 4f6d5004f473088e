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
#include <set>

#include "gtest/gtest.h"

#include "qac/control.hpp"
#include "qac/errors.hpp"

using namespace qac;
using namespace qac::control;

TEST(Superposition, TargetIsKetOverTwoToTheN) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        SuperpositionDevice d(2, 0, 64, seed);
        auto r = d.trigger();
        std::uint64_t k = std::stoull(r.ket, nullptr, 2);
        EXPECT_EQ(r.target, static_cast<double>(k) / 4.0);
        if (r.ket == "11")
            EXPECT_EQ(r.target, 0.75);
        EXPECT_EQ(d.current_value(), r.target);
    }
}

TEST(Superposition, QuantizationForSmallRegisters) {
    for (std::size_t n = 1; n <= 6; ++n) {
        SuperpositionDevice d(n, 0, 256, 1000 + n);
        std::set<double> seen;
        const double scale = std::ldexp(1.0, static_cast<int>(n));
        for (int i = 0; i < 400; ++i) {
            const double v = d.trigger().target;
            const double k = v * scale;
            EXPECT_EQ(k, std::floor(k));
            EXPECT_GE(k, 0.0);
            EXPECT_LT(k, scale);
            seen.insert(v);
        }
        if (n <= 4)
            EXPECT_EQ(seen.size(), static_cast<std::size_t>(scale)) << "n=" << n;
    }
}

TEST(Superposition, OneQubitReachesBothValues) {
    std::set<double> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SuperpositionDevice d(1, 0, 100000, seed);
        const double v = d.trigger().target;
        EXPECT_TRUE(v == 0.0 || v == 0.5);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 2u);
}

TEST(Superposition, RampMidpointAndCompletion) {
    // Trigger until a ramp runs from 0 to 0.75, so the example is literal.
    SuperpositionDevice fresh(2, 1000, 64, 3);
    double from = 0.0;
    for (;;) {
        auto t = fresh.trigger();
        if (from == 0.0 && t.target == 0.75) {
            EXPECT_EQ(fresh.step_interpolation(500), 0.375);
            EXPECT_EQ(fresh.step_interpolation(1000), 0.75);
            EXPECT_EQ(fresh.step_interpolation(5000), 0.75);
            break;
        }
        from = fresh.step_interpolation(1000);
    }
}

TEST(Superposition, ZeroRampJumps) {
    SuperpositionDevice d(3, 0, 32, 8);
    for (int i = 0; i < 10; ++i) {
        auto r = d.trigger();
        EXPECT_EQ(d.step_interpolation(0), r.target);
        EXPECT_EQ(d.step_interpolation(123), r.target);
    }
}

TEST(Superposition, RampsAreMonotoneAndRetriggerIsContinuous) {
    SuperpositionDevice d(5, 400, 64, 21);
    for (int trial = 0; trial < 50; ++trial) {
        const double before = d.current_value();
        d.trigger();
        EXPECT_EQ(d.current_value(), before);
        const double from = d.step_interpolation(0);
        EXPECT_EQ(from, before);
        const double target = d.target_value();
        double prev = from;
        // Retrigger part-way through on odd trials.
        const std::uint64_t stop = trial % 2 ? 150 : 400;
        for (std::uint64_t t = 10; t <= stop; t += 10) {
            const double v = d.step_interpolation(t);
            if (target >= from)
                EXPECT_GE(v, prev);
            else
                EXPECT_LE(v, prev);
            EXPECT_GE(v, std::min(from, target));
            EXPECT_LE(v, std::max(from, target));
            prev = v;
        }
    }
}

TEST(Superposition, Validation) {
    EXPECT_THROW(SuperpositionDevice(0), ArgumentError);
    EXPECT_THROW(SuperpositionDevice(21), RangeError);
    EXPECT_THROW(SuperpositionDevice(2, 0, 0), ArgumentError);
}

TEST(ProbabilityGate, Extremes) {
    ProbabilityGate never(0.0, 1), always(1.0, 1), clamped_low(-3.0, 1), clamped_high(7.0, 1);
    for (int i = 0; i < 10000; ++i) {
        EXPECT_FALSE(never.gate_event());
        EXPECT_TRUE(always.gate_event());
        EXPECT_FALSE(clamped_low.gate_event());
        EXPECT_TRUE(clamped_high.gate_event());
    }
    EXPECT_EQ(clamped_high.p(), 1.0);
    EXPECT_THROW(ProbabilityGate(std::nan("")), ArgumentError);
}

TEST(ProbabilityGate, PassRatesWithinFourSigma) {
    for (double p : {0.25, 0.5, 0.75}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            ProbabilityGate g(p, seed);
            int passes = 0;
            for (int i = 0; i < 10000; ++i)
                passes += g.gate_event() ? 1 : 0;
            const double sigma = std::sqrt(10000 * p * (1 - p));
            EXPECT_LE(std::abs(passes - 10000 * p), 4 * sigma) << "p=" << p << " seed=" << seed;
        }
    }
}

TEST(MapRange, Examples) {
    EXPECT_EQ(map_range(63.5, 0, 127, 0, 1), 0.5);
    EXPECT_EQ(map_range(127, 0, 127, 0, 1), 1.0);
    EXPECT_EQ(map_range(200, 0, 127, 0, 1), 1.0);
    EXPECT_EQ(map_range(-5, 0, 127, 0, 1), 0.0);
    EXPECT_EQ(map_range(0.25, 0, 1, 1, 0), 0.75);
    EXPECT_EQ(map_range(2, 0, 1, 1, 0), 0.0);
    EXPECT_THROW((void)map_range(1, 3, 3, 0, 1), ArgumentError);
    EXPECT_THROW((void)map_range(INFINITY, 0, 1, 0, 1), ArgumentError);
}
