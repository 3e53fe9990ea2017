// Copyright 2026 The noisetol Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"

namespace nt = noisetol;
using nt::Gate;
using nt::GateKind;

TEST(CircuitStats, EmptyCircuit) {
    const auto s = nt::circuit_stats(nt::Circuit(1));
    EXPECT_EQ(s.single_qubit_gates, 0U);
    EXPECT_EQ(s.two_qubit_gates, 0U);
    EXPECT_EQ(s.gate_count, 0U);
    EXPECT_EQ(s.error_locations, 0U);
}

TEST(CircuitStats, ThreeHadamardsTwoCx) {
    nt::Circuit c(3);
    c.add(Gate::h(0)).add(Gate::h(1)).add(Gate::h(2));
    c.add(Gate::cx(0, 1)).add(Gate::cx(1, 2));
    const auto s = nt::circuit_stats(c);
    EXPECT_EQ(s.single_qubit_gates, 3U);
    EXPECT_EQ(s.two_qubit_gates, 2U);
    EXPECT_EQ(s.gate_count, 5U);
    EXPECT_EQ(s.error_locations, 21U);
}

TEST(CircuitStats, CountsMatrixGates) {
    nt::Rng rng(1);
    nt::Circuit c(2);
    c.add(Gate::unitary1(0, nt::test::random_unitary2(rng)));
    c.add(Gate::unitary2(0, 1, nt::haar_unitary4(rng)));
    const auto s = nt::circuit_stats(c);
    EXPECT_EQ(s.single_qubit_gates, 1U);
    EXPECT_EQ(s.two_qubit_gates, 1U);
    EXPECT_EQ(s.error_locations, 9U);
}

TEST(Validate, DuplicateQubit) {
    nt::Circuit c(2);
    c.add(Gate::cx(0, 0));
    const auto v = nt::validate(c);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].message(), "duplicate qubit at gate 0");
}

TEST(Validate, QubitOutOfRange) {
    nt::Circuit c(2);
    c.add(Gate::h(5));
    const auto v = nt::validate(c);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].rule, "qubit index out of range");
    EXPECT_EQ(v[0].gate_index, 0U);
}

TEST(Validate, BellIsClean) {
    EXPECT_TRUE(nt::validate(nt::test::bell_circuit()).empty());
    EXPECT_NO_THROW(nt::require_valid(nt::test::bell_circuit()));
}

TEST(Validate, ReportsEveryBreach) {
    nt::Circuit c(2);
    c.add(Gate::h(0)).add(Gate::rz(1, std::numeric_limits<double>::quiet_NaN()));
    c.add(Gate::swap(1, 1)).add(Gate::x(9));
    const auto v = nt::validate(c);
    ASSERT_EQ(v.size(), 3U);
    EXPECT_EQ(v[0].message(), "non-finite rotation angle at gate 1");
    EXPECT_EQ(v[1].message(), "duplicate qubit at gate 2");
    EXPECT_EQ(v[2].message(), "qubit index out of range at gate 3");
    EXPECT_THROW(nt::require_valid(c), nt::InvalidCircuit);
}

TEST(Validate, NonUnitaryMatrix) {
    nt::Circuit c(1);
    c.add(Gate::unitary1(0, {1.0, 1.0, 0.0, 1.0}));
    const auto v = nt::validate(c);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].rule, "matrix is not unitary");
}

TEST(Validate, WrongMatrixSize) {
    nt::Circuit c(2);
    c.add(Gate::unitary2(0, 1, {1.0, 0.0, 0.0, 1.0}));
    const auto v = nt::validate(c);
    ASSERT_EQ(v.size(), 1U);
    EXPECT_EQ(v[0].rule, "matrix has wrong dimension");
}

TEST(Validate, ZeroWidth) {
    nt::Circuit c;
    c.width = 0;
    const auto v = nt::validate(c);
    ASSERT_FALSE(v.empty());
    EXPECT_FALSE(v[0].gate_index.has_value());
}

TEST(GateMatrix, UnitaryForEveryKind) {
    nt::Rng rng(4);
    for (int k = 0; k < 14; ++k) {
        const auto kind = static_cast<GateKind>(k);
        Gate g;
        if (kind == GateKind::U1Q) {
            g = Gate::unitary1(0, nt::test::random_unitary2(rng));
        } else if (kind == GateKind::U2Q) {
            g = Gate::unitary2(0, 1, nt::haar_unitary4(rng));
        } else if (nt::arity(kind) == 2) {
            g = Gate::two(kind, 0, 1);
        } else {
            g = Gate::single(kind, 0, 1.234);
        }
        const auto m = nt::gate_matrix(g);
        const std::size_t dim = nt::arity(kind) == 2 ? 4 : 2;
        ASSERT_EQ(m.size(), dim * dim);
        EXPECT_LT(nt::unitarity_defect(m, dim), 1e-14) << nt::gate_name(kind);
    }
}

TEST(GateNames, Lowercase) {
    EXPECT_EQ(nt::gate_name(GateKind::CX), "cx");
    EXPECT_EQ(nt::gate_name(GateKind::SWAP), "swap");
    EXPECT_EQ(nt::gate_name(GateKind::RZ), "rz");
}

TEST(Circuit, SameStructureComparesGatesAndWidth) {
    auto a = nt::test::bell_circuit();
    auto b = nt::test::bell_circuit();
    b.name = "other";
    EXPECT_TRUE(a.same_structure(b));
    b.width = 3;
    EXPECT_FALSE(a.same_structure(b));
}
