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

#ifndef JOINTMEAS_TELEPORT_H
#define JOINTMEAS_TELEPORT_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jointmeas/hilbert.h"
#include "jointmeas/measurement.h"
#include "jointmeas/rng.h"

namespace jointmeas {

/// a|+> + b|-> carried by particle 1.
struct InputState {
    Complex a;
    Complex b;

    /// Throws std::invalid_argument unless |a|^2 + |b|^2 = 1 within 1e-10.
    static InputState make(Complex a, Complex b);
    /// Haar-uniform draw: two uniforms from `rng`.
    static InputState random(CounterRng &rng);

    Ket ket() const;
};

/// The four Bell branches, in protocol order a, b, c, d.
enum class BellLabel { psi_minus, psi_plus, phi_minus, phi_plus };
inline constexpr std::array<BellLabel, 4> kBellBranches = {BellLabel::psi_minus, BellLabel::psi_plus,
                                                           BellLabel::phi_minus, BellLabel::phi_plus};

std::string_view bell_label_name(BellLabel label);
/// Accepts "psi-", "psi+", "phi-", "phi+".
BellLabel parse_bell_label(std::string_view name);
Ket bell_state(BellLabel label);

/// phi_1 (x) singlet_23, particles ordered 1, 2, 3.
Ket prepare(const InputState &input);

/// One term |Bell_12> (x) chi_3 of the Bell-basis rewriting. `particle3` is the
/// unnormalized coefficient <Bell_12|psi_123>.
struct BellBranch {
    BellLabel label;
    ComplexVector particle3;

    double weight() const { return particle3.norm(); }
};

/// Rewrites a three-particle state in the Bell basis of particles 1, 2. Pure
/// algebra: reassemble() gives the input back.
std::array<BellBranch, 4> bell_expand(const Ket &psi123);
ComplexVector reassemble(std::span<const BellBranch> branches);

/// |Bell><Bell| (x) 1 on particles 1, 2, 3, in kBellBranches order.
std::array<ComplexMatrix, 4> bell_projectors();

struct BellCollapse {
    BellLabel branch;
    double probability;
    Ket post_state;
};

/// Typed negative result: joint-eigenvalue semantics offers no measurement
/// whose eigenvectors are the Bell states, so a Bell-basis reduction cannot be
/// performed. Carries the numbers that back the claim.
struct SemanticsRefusal {
    std::string reason_code;
    std::string message;
    /// sz(x)sz on the singlet: post-state fidelity with the singlet under Luders.
    double luders_singlet_fidelity;
    /// Same measurement under local-joint: best post-state fidelity and branch count.
    double local_joint_best_singlet_fidelity;
    int local_joint_branch_count;
    /// Frobenius norm of the matrix commutator [sz(x)sz, sx(x)sx].
    double matrix_commutator_norm;
    /// zz-then-xx against xx-then-zz on the singlet under local-joint.
    bool channel_order_supports_disjoint;
    double channel_order_mixture_distance;
    /// What sz(x)sz on particles 1, 2 actually does to the given state under
    /// local-joint. Reported for reference; it does not implement the reduction.
    std::vector<MeasurementRecord> nearest_experiment;
};

SemanticsRefusal joint_eigenvalue_refusal(const Ket &psi123);

/// All four Luders branches of the Bell-basis measurement with their
/// probabilities and post-states.
std::vector<BellCollapse> bell_branch_distribution(const Ket &psi123);

using Step3Result = std::variant<BellCollapse, SemanticsRefusal>;

/// Bell-basis reduction of particles 1, 2. Under luders, samples a branch (or
/// takes `force` without sampling); under local_joint, returns a refusal.
/// Throws std::invalid_argument on a malformed state or a forced branch with
/// zero probability.
Step3Result step3_bell_measurement(const Ket &psi123, Semantics sem, CounterRng &rng,
                                   std::optional<BellLabel> force = std::nullopt);
Step3Result step3_bell_measurement(const Ket &psi123, Semantics sem, std::uint64_t rng_seed,
                                   std::optional<BellLabel> force = std::nullopt);

/// Conditional spin flip on particles 1, 2; particle 3 untouched.
Ket step4_disentangle(const Ket &state);

enum class Correction { identity, z, x, xz };
std::string_view correction_name(Correction c);
/// I, sz, sx, or sx*sz.
ComplexMatrix correction_matrix(Correction c);

/// Step-6 message: 0 encodes a +1 outcome, 1 a -1 outcome.
struct ClassicalBits {
    int particle1;  // x-basis result on particle 1
    int particle2;  // z-basis result on particle 2

    std::string str() const;
};

/// Bob's lookup table from the two classical bits to his correction.
Correction correction_for(ClassicalBits bits);

struct Readout {
    ClassicalBits bits;
    Correction correction;
    Ket final_particle3;
};

/// Measures particle 1 in the x basis and particle 2 in the z basis, then
/// applies the correction selected by the bits to particle 3.
/// Throws std::invalid_argument when the state is not (within 1e-8) a product
/// of an x eigenstate, a z eigenstate and a particle-3 state.
Readout steps5to7_readout(const Ket &state, CounterRng &rng);
Readout steps5to7_readout(const Ket &state, std::uint64_t rng_seed);

struct TeleportReport {
    Semantics semantics;
    BellLabel branch;
    ClassicalBits classical_bits;
    Correction correction;
    Ket final_particle3;
    double fidelity;
    double branch_probability;
};

using TeleportResult = std::variant<TeleportReport, SemanticsRefusal>;

/// prepare -> Bell reduction -> disentangle -> readout and correction.
TeleportResult run_full(const InputState &input, Semantics sem, CounterRng &rng,
                        std::optional<BellLabel> force = std::nullopt);
TeleportResult run_full(const InputState &input, Semantics sem, std::uint64_t rng_seed,
                        std::optional<BellLabel> force = std::nullopt);

/// a|+>_1 (x) Phi-_23 + b|->_1 (x) Psi-_23, the form usually quoted for the
/// conditional spin flip applied without a Bell reduction.
Ket naive_reference_form(const InputState &input);

struct NaivePathResult {
    Ket state;
    /// || U_C * (sum of Bell projectors) - U_C ||_F
    double identity_check_distance;
    /// Amplitude distance to naive_reference_form.
    double reference_form_distance;
    /// Amplitude distance to the reference form with the a-term negated.
    double negated_phi_form_distance;
    ComplexMatrix particle3_density;
    /// <phi|rho_3|phi>
    double particle3_fidelity;
};

/// Applies the conditional spin flip straight to prepare(input), with no Bell
/// reduction. Deterministic.
NaivePathResult naive_path(const InputState &input);

}  // namespace jointmeas

#endif
