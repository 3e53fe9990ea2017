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

#include "test_support.hpp"

namespace nt = noisetol;
using nt::Gate;
using nt::Pauli;
using nt::StateVector;
using nt::test::cd;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector make_state(std::vector<nt::Complex> amps) {
    return StateVector(std::move(amps));
}

void expect_amplitudes(const StateVector &s, const std::vector<cd> &expected,
                       double tol = 1e-12) {
    ASSERT_EQ(s.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(s[k].real(), expected[k].real(), tol) << "amplitude " << k;
        EXPECT_NEAR(s[k].imag(), expected[k].imag(), tol) << "amplitude " << k;
    }
}

} // namespace

TEST(ZeroState, SmallWidths) {
    expect_amplitudes(nt::zero_state(1), {1, 0});
    expect_amplitudes(nt::zero_state(2), {1, 0, 0, 0});
}

TEST(ZeroState, RejectsHugeWidth) {
    EXPECT_THROW((void)nt::zero_state(40), nt::WidthTooLarge);
    EXPECT_THROW((void)nt::zero_state(0), nt::InvalidArgument);
}

TEST(ZeroState, BudgetBoundsWidth) {
    const nt::MemoryBudget small{1024};
    EXPECT_EQ(nt::max_width(small), 6U);
    EXPECT_NO_THROW((void)nt::zero_state(6, small));
    EXPECT_THROW((void)nt::zero_state(7, small), nt::WidthTooLarge);
    EXPECT_EQ(nt::max_width<float>(small), 7U);
}

TEST(StateVectorCtor, RejectsNonPowerOfTwo) {
    EXPECT_THROW(make_state({1, 0, 0}), nt::InvalidArgument);
    EXPECT_THROW(make_state({1}), nt::InvalidArgument);
}

TEST(ApplyGate, HadamardOnZero) {
    auto s = nt::apply_gate(nt::zero_state(1), Gate::h(0));
    expect_amplitudes(s, {kInvSqrt2, kInvSqrt2});
}

TEST(ApplyGate, ZeroRotationIsIdentity) {
    nt::Rng rng(3);
    auto c = nt::test::random_circuit(rng, 3, 12);
    auto s = nt::run(c);
    auto t = nt::apply_gate(s, Gate::rz(1, 0.0));
    EXPECT_EQ(s, t);
}

TEST(ApplyGate, OutOfRangeQubit) {
    EXPECT_THROW((void)nt::apply_gate(nt::zero_state(2), Gate::h(2)),
                 nt::QubitOutOfRange);
    EXPECT_THROW((void)nt::apply_gate(nt::zero_state(2), Gate::cx(0, 3)),
                 nt::QubitOutOfRange);
}

TEST(ApplyGate, CxOperandOrder) {
    // control q0 set: |01> (index 1) -> |11> (index 3)
    auto s = make_state({0, 1, 0, 0});
    s.apply(Gate::cx(0, 1));
    expect_amplitudes(s, {0, 0, 0, 1});
    // control q1 clear leaves index 1 alone
    auto t = make_state({0, 1, 0, 0});
    t.apply(Gate::cx(1, 0));
    expect_amplitudes(t, {0, 1, 0, 0});
}

TEST(ApplyGate, U2QLocalIndexConvention) {
    // matrix maps local |0> -> local |1> (bit(a)=1); with a = q1 that is index 2
    std::vector<nt::Complex> m(16, 0.0);
    m[1 * 4 + 0] = 1;
    m[0 * 4 + 1] = 1;
    m[2 * 4 + 2] = 1;
    m[3 * 4 + 3] = 1;
    auto s = nt::zero_state(2);
    s.apply(Gate::unitary2(1, 0, m));
    expect_amplitudes(s, {0, 0, 1, 0});
}

TEST(ApplyGate, EachKindMatchesOracle) {
    nt::Rng rng(11);
    for (int kind = 0; kind < 14; ++kind) {
        nt::Circuit c(3);
        c.add(Gate::h(0)).add(Gate::ry(1, 0.7)).add(Gate::rx(2, -1.3));
        auto k = static_cast<nt::GateKind>(kind);
        switch (k) {
        case nt::GateKind::RX:
        case nt::GateKind::RY:
        case nt::GateKind::RZ:
            c.add(Gate::single(k, 2, 0.4321));
            break;
        case nt::GateKind::U1Q:
            c.add(Gate::unitary1(1, nt::test::random_unitary2(rng)));
            break;
        case nt::GateKind::U2Q:
            c.add(Gate::unitary2(2, 0, nt::haar_unitary4(rng)));
            break;
        default:
            if (nt::arity(k) == 2) {
                c.add(Gate::two(k, 2, 1));
            } else {
                c.add(Gate::single(k, 1));
            }
        }
        EXPECT_LT(nt::test::max_deviation(nt::run(c), nt::test::oracle_run(c)),
                  1e-12)
            << nt::gate_name(k);
    }
}

TEST(ApplyGate, RandomCircuitsMatchDenseOracle) {
    nt::Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const auto width = 1 + rng.below(4);
        const auto gates = 1 + rng.below(20);
        auto c = nt::test::random_circuit(rng, width, gates);
        EXPECT_LT(nt::test::max_deviation(nt::run(c), nt::test::oracle_run(c)),
                  1e-10);
    }
}

TEST(ApplyGate, PreservesNorm) {
    nt::Rng rng(7);
    auto c = nt::test::random_circuit(rng, 5, 200);
    EXPECT_NEAR(nt::run(c).norm_squared(), 1.0, 1e-12);
}

TEST(ApplyPauli, SingleQubitRows) {
    const cd a0(0.6, 0.1), a1(-0.2, 0.77);
    auto s = make_state({a0, a1});
    expect_amplitudes(nt::apply_pauli(s, Pauli::X, 0), {a1, a0}, 0);
    expect_amplitudes(nt::apply_pauli(s, Pauli::Z, 0), {a0, -a1}, 0);
    expect_amplitudes(nt::apply_pauli(s, Pauli::Y, 0),
                      {cd(0, -1) * a1, cd(0, 1) * a0}, 0);
}

TEST(ApplyPauli, XOnBothQubitsReversesAmplitudes) {
    const cd a(0.1, 0.2), b(0.3, -0.1), c(-0.5, 0.4), d(0.2, 0.6);
    auto s = make_state({a, b, c, d});
    s.apply_pauli(Pauli::X, 0);
    s.apply_pauli(Pauli::X, 1);
    expect_amplitudes(s, {d, c, b, a}, 0);
}

TEST(ApplyPauli, YIsIXZ) {
    nt::Rng rng(5);
    auto s = nt::run(nt::test::random_circuit(rng, 3, 15));
    auto y = nt::apply_pauli(s, Pauli::Y, 1);
    auto xz = nt::apply_pauli(nt::apply_pauli(s, Pauli::Z, 1), Pauli::X, 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(std::abs(y[k] - cd(0, 1) * xz[k]), 0.0, 1e-15);
    }
}

TEST(ApplyPauli, OutOfRange) {
    EXPECT_THROW((void)nt::apply_pauli(nt::zero_state(2), Pauli::Z, 2),
                 nt::QubitOutOfRange);
}

TEST(Run, BellReference) {
    expect_amplitudes(nt::run(nt::test::bell_circuit()),
                      {kInvSqrt2, 0, 0, kInvSqrt2});
}

// X|+> = |+>, so a bit flip between H and CX leaves the Bell state intact.
TEST(Run, BellWithXAfterHadamard) {
    const nt::Injections inj{{0, {{Pauli::X, 0}}}};
    const auto c = nt::test::bell_circuit();
    const auto s = nt::run(c, inj);
    EXPECT_LT(nt::test::max_deviation(s, nt::test::oracle_run(c, inj)), 1e-14);
    expect_amplitudes(s, {kInvSqrt2, 0, 0, kInvSqrt2});
}

TEST(Run, BellWithXOnTargetAfterCx) {
    const nt::Injections inj{{1, {{Pauli::X, 1}}}};
    const auto c = nt::test::bell_circuit();
    const auto s = nt::run(c, inj);
    EXPECT_LT(nt::test::max_deviation(s, nt::test::oracle_run(c, inj)), 1e-14);
    expect_amplitudes(s, {0, kInvSqrt2, kInvSqrt2, 0});
}

TEST(Run, InjectionsMatchOracle) {
    nt::Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = nt::test::random_circuit(rng, 3, 10);
        nt::Injections inj;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (rng.uniform() < 0.4) {
                const auto ops = c.gates[i].operands();
                inj[i].push_back({nt::kPaulis[rng.below(3)], ops[rng.below(ops.size())]});
            }
        }
        EXPECT_LT(nt::test::max_deviation(nt::run(c, inj), nt::test::oracle_run(c, inj)),
                  1e-10);
    }
}

TEST(Run, InjectionPastEnd) {
    const auto c = nt::test::bell_circuit();
    EXPECT_THROW((void)nt::run(c, {{2, {{Pauli::X, 0}}}}), nt::InvalidInjection);
}

TEST(Run, InjectionOnNonOperand) {
    nt::Circuit c(2);
    c.add(Gate::h(0));
    EXPECT_THROW((void)nt::run(c, {{0, {{Pauli::X, 1}}}}), nt::InvalidInjection);
}

TEST(Distribution, Examples) {
    auto plus = nt::distribution(nt::apply_gate(nt::zero_state(1), Gate::h(0)));
    EXPECT_NEAR(plus[0], 0.5, 1e-15);
    EXPECT_NEAR(plus[1], 0.5, 1e-15);
    auto bell = nt::distribution(nt::run(nt::test::bell_circuit()));
    EXPECT_NEAR(bell[0], 0.5, 1e-15);
    EXPECT_EQ(bell[1], 0.0);
    EXPECT_EQ(bell[2], 0.0);
    EXPECT_NEAR(bell[3], 0.5, 1e-15);
    auto one = nt::distribution(nt::apply_gate(nt::zero_state(1), Gate::x(0)));
    EXPECT_EQ(one[0], 0.0);
    EXPECT_EQ(one[1], 1.0);
}

TEST(Precision, SinglePrecisionTracksDouble) {
    nt::Rng rng(8);
    auto c = nt::test::random_circuit(rng, 4, 40);
    auto f = nt::basic_zero_state<float>(4);
    auto d = nt::zero_state(4);
    for (const auto &g : c.gates) {
        f.apply(g);
        d.apply(g);
    }
    for (std::size_t k = 0; k < d.size(); ++k) {
        EXPECT_NEAR(f[k].real(), d[k].real(), 1e-5);
        EXPECT_NEAR(f[k].imag(), d[k].imag(), 1e-5);
    }
}
