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

#ifndef JOINTMEAS_MEASUREMENT_H
#define JOINTMEAS_MEASUREMENT_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jointmeas/hilbert.h"
#include "jointmeas/rng.h"

namespace jointmeas {

/// How a joint measurement A (x) B on two particles updates the state.
///
/// luders:      project onto the whole eigenspace of the product eigenvalue
///              a_i b_j, keeping coherence inside degenerate eigenspaces.
/// local_joint: record the pair (a_i, b_j) and collapse each particle onto its
///              own local eigenvector.
enum class Semantics { luders, local_joint };

std::string_view semantics_name(Semantics sem);
/// Accepts "luders" and "local-joint". Throws std::invalid_argument otherwise.
Semantics parse_semantics(std::string_view name);

/// Pair of local eigenvalues (Alice's, Bob's).
struct JointOutcome {
    double left;
    double right;
};

class Outcome {
   public:
    static Outcome scalar(double value) { return Outcome(value); }
    static Outcome joint(JointOutcome value) { return Outcome(value); }

    bool is_scalar() const { return std::holds_alternative<double>(value_); }
    double scalar_value() const { return std::get<double>(value_); }
    JointOutcome joint_value() const { return std::get<JointOutcome>(value_); }

    /// "-1" for a scalar, "(+1,-1)" for a joint outcome.
    std::string label() const;
    bool matches(const Outcome &other, double tol = 1e-9) const;

   private:
    explicit Outcome(std::variant<double, JointOutcome> value) : value_(value) {}
    std::variant<double, JointOutcome> value_;
};

struct MeasurementRecord {
    Outcome outcome;
    double probability;
    Ket post_state;
};

/// 0-based particle indices the left and right observables act on.
struct Subsystems {
    int left = 0;
    int right = 1;
};

/// Branches with probability at or below this are dropped.
inline constexpr double kBranchThreshold = 1e-12;

/// Every outcome with nonzero probability, with its normalized post-measurement
/// state. Particles outside `particles` are carried through untouched.
///
/// Luders records come in ascending eigenvalue order; local-joint records in
/// ascending (left, right) order.
///
/// Throws std::invalid_argument if the observables are not one-particle
/// operators, the particle indices overlap or fall outside the register, or
/// `psi` is not normalized.
std::vector<MeasurementRecord> exact_distribution(const Ket &psi, const Observable &a, const Observable &b,
                                                  Semantics sem, Subsystems particles = {});

/// Index of the branch selected by a uniform draw `u` in [0, 1).
std::size_t pick_branch(std::span<const double> probabilities, double u);

/// One draw from exact_distribution. The record's probability is the exact one.
MeasurementRecord sample(const Ket &psi, const Observable &a, const Observable &b, Semantics sem,
                         Subsystems particles, CounterRng &rng);
/// Same as above on stream 0 of `rng_seed`.
MeasurementRecord sample(const Ket &psi, const Observable &a, const Observable &b, Semantics sem,
                         Subsystems particles, std::uint64_t rng_seed);

struct MeasurementStep {
    Observable left;
    Observable right;
    Subsystems particles{};
};

struct Trajectory {
    std::vector<MeasurementRecord> records;
    Ket final_state;
};

/// Samples each step in turn, feeding every post-state into the next step.
Trajectory sequential(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem, CounterRng &rng);
Trajectory sequential(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem,
                      std::uint64_t rng_seed);

struct EnsembleMember {
    double weight;
    Ket state;
};

/// Weighted list of pure states standing for a mixture.
class Ensemble {
   public:
    /// Throws std::invalid_argument unless every weight is in (0, 1], the
    /// weights sum to 1 within 1e-10, and all states share one dimension.
    explicit Ensemble(std::vector<EnsembleMember> members);

    const std::vector<EnsembleMember> &members() const { return members_; }
    std::size_t dim() const { return members_.front().state.dim(); }

    /// sum_i w_i |s_i><s_i|
    ComplexMatrix mixture() const;
    /// Members whose states agree up to a global phase are merged into one.
    Ensemble merged(double fidelity_tol = 1e-10) const;

   private:
    std::vector<EnsembleMember> members_;
};

/// Exhaustive enumeration of every measurement trajectory; one member per
/// trajectory, weighted by its probability.
Ensemble channel_ensemble(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem);

struct EnsembleComparison {
    /// Induced mixtures agree within the tolerance.
    bool equal;
    double mixture_distance;
    /// Member states (after merging) present in both ensembles up to phase.
    std::size_t shared_members;
    std::size_t only_first;
    std::size_t only_second;

    bool disjoint_supports() const { return shared_members == 0; }
};

/// Compares the induced mixtures by Frobenius distance and reports how the
/// member supports overlap. Throws std::invalid_argument on dimension mismatch.
EnsembleComparison ensembles_equal(const Ensemble &first, const Ensemble &second, double tol);

}  // namespace jointmeas

#endif
