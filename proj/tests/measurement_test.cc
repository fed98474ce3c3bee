// Copyright 2026 The jointmeas Authors
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

#include "jointmeas/measurement.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "test_support.h"

namespace jointmeas {
namespace {

using testing::random_ket;

const Observable &sx() {
    static const Observable o = pauli(Axis::x);
    return o;
}
const Observable &sz() {
    static const Observable o = pauli(Axis::z);
    return o;
}

// Random observable diag(l0, l1) in a random orthonormal basis.
Observable random_local(std::mt19937_64 &gen, double l0, double l1) {
    Ket u = random_ket(gen, 2);
    ComplexVector v{-std::conj(u[1]), std::conj(u[0])};
    ComplexMatrix m = Complex(l0) * ComplexMatrix::projector(u.vector()) + Complex(l1) * ComplexMatrix::projector(v);
    for (std::size_t i = 0; i < 2; i++) {
        m(i, i) = m(i, i).real();
    }
    m(1, 0) = std::conj(m(0, 1));
    return Observable(m, "random");
}

double total_probability(const std::vector<MeasurementRecord> &records) {
    double total = 0;
    for (const auto &r : records) total += r.probability;
    return total;
}

TEST(Distribution, SingletLocalJointZZ) {
    auto records = exact_distribution(bell_states().psi_minus, sz(), sz(), Semantics::local_joint);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].outcome.label(), "(-1,+1)");
    EXPECT_EQ(records[1].outcome.label(), "(+1,-1)");
    EXPECT_NEAR(records[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(records[1].probability, 0.5, 1e-15);
    EXPECT_NEAR(fidelity(records[1].post_state, Ket::basis("+-")), 1.0, 1e-15);
}

TEST(Distribution, SingletLudersZZIsNonDemolition) {
    Ket singlet = bell_states().psi_minus;
    auto records = exact_distribution(singlet, sz(), sz(), Semantics::luders);
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].outcome.label(), "-1");
    EXPECT_NEAR(records[0].probability, 1.0, 1e-15);
    EXPECT_GT(fidelity(records[0].post_state, singlet), 1.0 - 1e-12);
}

TEST(Distribution, LocalJointXXOnProductState) {
    auto records = exact_distribution(Ket::basis("-+"), sx(), sx(), Semantics::local_joint);
    ASSERT_EQ(records.size(), 4u);
    for (const auto &r : records) {
        EXPECT_NEAR(r.probability, 0.25, 1e-12);
        EXPECT_EQ(schmidt_rank(r.post_state, 1), 1);
    }
}

TEST(Distribution, ProbabilityConservation) {
    std::mt19937_64 gen(31);
    for (int i = 0; i < 50; i++) {
        Ket psi = random_ket(gen, 8);
        Observable a = random_local(gen, -1, 1);
        Observable b = random_local(gen, -1, 1);
        for (Semantics sem : {Semantics::luders, Semantics::local_joint}) {
            auto records = exact_distribution(psi, a, b, sem, {2, 0});
            EXPECT_NEAR(total_probability(records), 1.0, 1e-12);
        }
    }
}

TEST(Distribution, LudersIsIdempotent) {
    std::mt19937_64 gen(32);
    for (int i = 0; i < 20; i++) {
        Ket psi = random_ket(gen, 4);
        for (const auto &r : exact_distribution(psi, sz(), sz(), Semantics::luders)) {
            auto again = exact_distribution(r.post_state, sz(), sz(), Semantics::luders);
            ASSERT_EQ(again.size(), 1u);
            EXPECT_TRUE(again[0].outcome.matches(r.outcome));
            EXPECT_GT(fidelity(again[0].post_state, r.post_state), 1.0 - 1e-12);
        }
    }
}

TEST(Distribution, LocalJointDemolishesEntanglement) {
    std::mt19937_64 gen(33);
    for (int i = 0; i < 20; i++) {
        Ket psi = random_ket(gen, 4);
        for (const auto &r : exact_distribution(psi, sx(), sz(), Semantics::local_joint)) {
            EXPECT_EQ(schmidt_rank(r.post_state, 1), 1);
        }
    }
}

TEST(Distribution, SemanticsAgreeWithoutCorrelationDegeneracy) {
    std::mt19937_64 gen(34);
    for (int i = 0; i < 50; i++) {
        Observable a = random_local(gen, 1, 2);
        Observable b = random_local(gen, 3, 5);  // products 3, 5, 6, 10 are distinct
        Ket psi = random_ket(gen, 4);
        auto luders = exact_distribution(psi, a, b, Semantics::luders);
        auto local = exact_distribution(psi, a, b, Semantics::local_joint);
        ASSERT_EQ(luders.size(), local.size());
        for (const auto &l : local) {
            JointOutcome pair = l.outcome.joint_value();
            bool found = false;
            for (const auto &r : luders) {
                if (r.outcome.matches(Outcome::scalar(pair.left * pair.right), 1e-9)) {
                    found = true;
                    EXPECT_NEAR(r.probability, l.probability, 1e-10);
                    EXPECT_GT(fidelity(r.post_state, l.post_state), 1.0 - 1e-10);
                }
            }
            EXPECT_TRUE(found);
        }
    }
}

TEST(Distribution, MarginalsMatchSingleParticleMeasurement) {
    // Summing the local-joint table over the right outcome gives the
    // distribution of a lone left measurement (identity on the right).
    std::mt19937_64 gen(35);
    Observable identity(ComplexMatrix::identity(2), "id");
    for (int i = 0; i < 20; i++) {
        Ket psi = random_ket(gen, 4);
        auto joint = exact_distribution(psi, sx(), sz(), Semantics::local_joint);
        auto lone = exact_distribution(psi, sx(), identity, Semantics::local_joint);
        for (const auto &m : lone) {
            double left = m.outcome.joint_value().left;
            double sum = 0;
            for (const auto &r : joint) {
                if (r.outcome.joint_value().left == left) sum += r.probability;
            }
            EXPECT_NEAR(sum, m.probability, 1e-12);
        }
    }
}

TEST(Distribution, LudersOrderInvarianceForCommutingOperators) {
    std::mt19937_64 gen(36);
    std::vector<MeasurementStep> zx{{sz(), sz()}, {sx(), sx()}};
    std::vector<MeasurementStep> xz{{sx(), sx()}, {sz(), sz()}};
    for (int i = 0; i < 50; i++) {
        Ket psi = random_ket(gen, 4);
        auto cmp = ensembles_equal(channel_ensemble(psi, zx, Semantics::luders),
                                   channel_ensemble(psi, xz, Semantics::luders), 1e-12);
        EXPECT_TRUE(cmp.equal);
        EXPECT_LT(cmp.mixture_distance, 1e-12);
        EXPECT_EQ(cmp.only_first, 0u);
        EXPECT_EQ(cmp.only_second, 0u);
    }
}

TEST(Distribution, InputValidation) {
    Ket psi = bell_states().psi_minus;
    EXPECT_THROW(exact_distribution(psi, sz(), sz(), Semantics::luders, {0, 0}), std::invalid_argument);
    EXPECT_THROW(exact_distribution(psi, sz(), sz(), Semantics::luders, {0, 2}), std::invalid_argument);
    Observable wide(ComplexMatrix::identity(4), "id4");
    EXPECT_THROW(exact_distribution(psi, wide, sz(), Semantics::luders), std::invalid_argument);
    EXPECT_THROW(parse_semantics("copenhagen"), std::invalid_argument);
    EXPECT_EQ(parse_semantics("local-joint"), Semantics::local_joint);
}

TEST(Sampling, SameSeedSameOutcome) {
    std::mt19937_64 gen(37);
    Ket psi = random_ket(gen, 4);
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        auto a = sample(psi, sx(), sz(), Semantics::local_joint, {}, seed);
        auto b = sample(psi, sx(), sz(), Semantics::local_joint, {}, seed);
        EXPECT_TRUE(a.outcome.matches(b.outcome));
    }
}

TEST(Sampling, FrequenciesWithinThreeSigma) {
    Ket psi = Ket::from_amplitudes({0.6, 0, 0, 0.8});
    auto exact = exact_distribution(psi, sz(), sz(), Semantics::local_joint);
    ASSERT_EQ(exact.size(), 2u);
    const int n = 20000;
    int first = 0;
    for (std::uint32_t t = 0; t < n; t++) {
        CounterRng rng(99, stream_id(StreamDomain::measurement, t));
        if (sample(psi, sz(), sz(), Semantics::local_joint, {}, rng).outcome.matches(exact[0].outcome)) first++;
    }
    double p = exact[0].probability;
    EXPECT_NEAR(static_cast<double>(first) / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(PickBranch, CumulativeSearch) {
    std::vector<double> p{0.25, 0.5, 0.25};
    EXPECT_EQ(pick_branch(p, 0.0), 0u);
    EXPECT_EQ(pick_branch(p, 0.2499), 0u);
    EXPECT_EQ(pick_branch(p, 0.25), 1u);
    EXPECT_EQ(pick_branch(p, 0.9999999), 2u);
    EXPECT_THROW(pick_branch(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST(Sequential, TrajectoryRecordsEveryStep) {
    std::vector<MeasurementStep> steps{{sz(), sz()}, {sx(), sx()}};
    Trajectory t = sequential(bell_states().psi_minus, steps, Semantics::local_joint, 4);
    ASSERT_EQ(t.records.size(), 2u);
    EXPECT_EQ(schmidt_rank(t.final_state, 1), 1);
    EXPECT_FALSE(t.records[0].outcome.is_scalar());
}

TEST(Ensemble, ValidationAndMerging) {
    EXPECT_THROW(Ensemble({}), std::invalid_argument);
    EXPECT_THROW(Ensemble({{0.5, Ket::basis("+")}}), std::invalid_argument);
    Ensemble e({{0.25, Ket::basis("+")}, {0.25, Ket::from_amplitudes({-1, 0})}, {0.5, Ket::basis("-")}});
    Ensemble m = e.merged();
    ASSERT_EQ(m.members().size(), 2u);
    EXPECT_NEAR(m.members()[0].weight, 0.5, 1e-15);
    EXPECT_LT(frobenius_distance(e.mixture(), 0.5 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(Ensemble, LocalJointChannelOrderSupportsAreDisjoint) {
    std::vector<MeasurementStep> zx{{sz(), sz()}, {sx(), sx()}};
    std::vector<MeasurementStep> xz{{sx(), sx()}, {sz(), sz()}};
    Ket singlet = bell_states().psi_minus;
    auto cmp = ensembles_equal(channel_ensemble(singlet, zx, Semantics::local_joint),
                               channel_ensemble(singlet, xz, Semantics::local_joint), 1e-12);
    EXPECT_TRUE(cmp.disjoint_supports());
    EXPECT_EQ(cmp.only_first, 4u);
    EXPECT_EQ(cmp.only_second, 4u);
    // Both orders end in a uniform mixture over an orthonormal product basis.
    EXPECT_LT(cmp.mixture_distance, 1e-12);
}

}  // namespace
}  // namespace jointmeas
