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

#include "jointmeas/teleport.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jointmeas {

namespace {

constexpr int kRegister = 3;

const Observable &sx() {
    static const Observable o = pauli(Axis::x);
    return o;
}

const Observable &sz() {
    static const Observable o = pauli(Axis::z);
    return o;
}

void require_three_particles(const Ket &state, const char *op) {
    if (state.nparticles() != kRegister) {
        throw std::invalid_argument(std::string(op) + ": expected a three-particle state");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Inputs and labels

InputState InputState::make(Complex a, Complex b) {
    double norm2 = std::norm(a) + std::norm(b);
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("input state is not normalized: |a|^2 + |b|^2 = " + std::to_string(norm2));
    }
    return InputState{a, b};
}

InputState InputState::random(CounterRng &rng) {
    double cos_theta = 1.0 - 2.0 * rng.uniform();
    double azimuth = 2.0 * std::numbers::pi * rng.uniform();
    double a = std::sqrt(std::max(0.0, (1.0 + cos_theta) / 2.0));
    double b = std::sqrt(std::max(0.0, (1.0 - cos_theta) / 2.0));
    return InputState::make(a, std::polar(b, azimuth));
}

Ket InputState::ket() const { return Ket::from_amplitudes({a, b}); }

std::string_view bell_label_name(BellLabel label) {
    switch (label) {
        case BellLabel::psi_minus:
            return "psi-";
        case BellLabel::psi_plus:
            return "psi+";
        case BellLabel::phi_minus:
            return "phi-";
        case BellLabel::phi_plus:
            return "phi+";
    }
    return "?";
}

BellLabel parse_bell_label(std::string_view name) {
    for (BellLabel label : kBellBranches) {
        if (bell_label_name(label) == name) {
            return label;
        }
    }
    throw std::invalid_argument("unknown Bell branch '" + std::string(name) + "' (expected psi-, psi+, phi-, phi+)");
}

Ket bell_state(BellLabel label) {
    BellStates b = bell_states();
    switch (label) {
        case BellLabel::psi_minus:
            return b.psi_minus;
        case BellLabel::psi_plus:
            return b.psi_plus;
        case BellLabel::phi_minus:
            return b.phi_minus;
        case BellLabel::phi_plus:
            break;
    }
    return b.phi_plus;
}

// ---------------------------------------------------------------------------
// Steps 1 and 2

Ket prepare(const InputState &input) {
    InputState checked = InputState::make(input.a, input.b);
    return tensor(checked.ket(), bell_states().psi_minus);
}

std::array<BellBranch, 4> bell_expand(const Ket &psi123) {
    require_three_particles(psi123, "bell_expand");
    std::array<BellBranch, 4> out{};
    for (std::size_t k = 0; k < kBellBranches.size(); k++) {
        Ket bell = bell_state(kBellBranches[k]);
        ComplexVector chi(2);
        for (std::size_t pair = 0; pair < 4; pair++) {
            for (std::size_t third = 0; third < 2; third++) {
                chi[third] += std::conj(bell[pair]) * psi123[pair * 2 + third];
            }
        }
        out[k] = BellBranch{kBellBranches[k], chi};
    }
    return out;
}

ComplexVector reassemble(std::span<const BellBranch> branches) {
    ComplexVector total(8);
    for (const BellBranch &branch : branches) {
        total += kron_vec(bell_state(branch.label).vector(), branch.particle3);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Step 3

std::array<ComplexMatrix, 4> bell_projectors() {
    std::array<ComplexMatrix, 4> out;
    for (std::size_t k = 0; k < kBellBranches.size(); k++) {
        out[k] = kron(ComplexMatrix::projector(bell_state(kBellBranches[k]).vector()), ComplexMatrix::identity(2));
    }
    return out;
}

std::vector<BellCollapse> bell_branch_distribution(const Ket &psi123) {
    require_three_particles(psi123, "bell_branch_distribution");
    auto projectors = bell_projectors();
    std::vector<BellCollapse> out;
    for (std::size_t k = 0; k < projectors.size(); k++) {
        ComplexVector projected = projectors[k] * psi123.vector();
        double p = projected.norm_squared();
        if (p > kBranchThreshold) {
            out.push_back(BellCollapse{kBellBranches[k], p, Ket::normalize(projected)});
        }
    }
    return out;
}

SemanticsRefusal joint_eigenvalue_refusal(const Ket &psi123) {
    SemanticsRefusal out;
    out.reason_code = "no-bell-eigenbasis";
    out.message =
        "under joint-eigenvalue semantics every product observable has non-degenerate pair-valued outcomes "
        "with product eigenvectors, so no measurement has the Bell states as eigenvectors and the Bell-basis "
        "reduction is undefined";

    Ket singlet = bell_states().psi_minus;
    auto luders = exact_distribution(singlet, sz(), sz(), Semantics::luders);
    out.luders_singlet_fidelity = luders.size() == 1 ? fidelity(luders.front().post_state, singlet) : 0.0;
    auto local = exact_distribution(singlet, sz(), sz(), Semantics::local_joint);
    out.local_joint_branch_count = static_cast<int>(local.size());
    out.local_joint_best_singlet_fidelity = 0.0;
    for (const MeasurementRecord &r : local) {
        out.local_joint_best_singlet_fidelity =
            std::max(out.local_joint_best_singlet_fidelity, fidelity(r.post_state, singlet));
    }

    ComplexMatrix zz = kron(sz().matrix(), sz().matrix());
    ComplexMatrix xx = kron(sx().matrix(), sx().matrix());
    out.matrix_commutator_norm = frobenius_norm(commutator(zz, xx));

    std::vector<MeasurementStep> z_then_x = {{sz(), sz()}, {sx(), sx()}};
    std::vector<MeasurementStep> x_then_z = {{sx(), sx()}, {sz(), sz()}};
    EnsembleComparison order = ensembles_equal(channel_ensemble(singlet, z_then_x, Semantics::local_joint),
                                               channel_ensemble(singlet, x_then_z, Semantics::local_joint), 1e-10);
    out.channel_order_supports_disjoint = order.disjoint_supports();
    out.channel_order_mixture_distance = order.mixture_distance;

    out.nearest_experiment = exact_distribution(psi123, sz(), sz(), Semantics::local_joint, {0, 1});
    return out;
}

Step3Result step3_bell_measurement(const Ket &psi123, Semantics sem, CounterRng &rng,
                                   std::optional<BellLabel> force) {
    require_three_particles(psi123, "step3_bell_measurement");
    if (sem == Semantics::local_joint) {
        return joint_eigenvalue_refusal(psi123);
    }
    auto branches = bell_branch_distribution(psi123);
    if (force) {
        for (const BellCollapse &c : branches) {
            if (c.branch == *force) {
                return c;
            }
        }
        throw std::invalid_argument("forced Bell branch " + std::string(bell_label_name(*force)) +
                                    " has zero probability");
    }
    std::vector<double> probabilities;
    for (const BellCollapse &c : branches) {
        probabilities.push_back(c.probability);
    }
    return branches[pick_branch(probabilities, rng.uniform())];
}

Step3Result step3_bell_measurement(const Ket &psi123, Semantics sem, std::uint64_t rng_seed,
                                   std::optional<BellLabel> force) {
    CounterRng rng(rng_seed);
    return step3_bell_measurement(psi123, sem, rng, force);
}

// ---------------------------------------------------------------------------
// Steps 4 to 7

Ket step4_disentangle(const Ket &state) {
    require_three_particles(state, "step4_disentangle");
    static const ComplexMatrix flip = kron(conditional_spin_flip(), ComplexMatrix::identity(2));
    return Ket::from_amplitudes(flip * state.vector());
}

std::string_view correction_name(Correction c) {
    switch (c) {
        case Correction::identity:
            return "I";
        case Correction::z:
            return "Z";
        case Correction::x:
            return "X";
        case Correction::xz:
            return "XZ";
    }
    return "?";
}

ComplexMatrix correction_matrix(Correction c) {
    switch (c) {
        case Correction::identity:
            return ComplexMatrix::identity(2);
        case Correction::z:
            return sz().matrix();
        case Correction::x:
            return sx().matrix();
        case Correction::xz:
            break;
    }
    return sx().matrix() * sz().matrix();
}

std::string ClassicalBits::str() const { return std::to_string(particle1) + std::to_string(particle2); }

Correction correction_for(ClassicalBits bits) {
    // Derived by exhaustive search over {I, Z, X, XZ} for each branch; the
    // search is re-run in the tests.
    static constexpr Correction kTable[2][2] = {
        {Correction::z, Correction::xz},        // particle 1 in |+>_x
        {Correction::identity, Correction::x},  // particle 1 in |->_x
    };
    if (bits.particle1 < 0 || bits.particle1 > 1 || bits.particle2 < 0 || bits.particle2 > 1) {
        throw std::invalid_argument("classical bits must be 0 or 1");
    }
    return kTable[bits.particle1][bits.particle2];
}

Readout steps5to7_readout(const Ket &state, CounterRng &rng) {
    require_three_particles(state, "steps5to7_readout");
    MeasurementRecord record = sample(state, sx(), sz(), Semantics::local_joint, {0, 1}, rng);
    if (record.probability < 1.0 - 1e-8) {
        throw std::invalid_argument(
            "readout: particles 1 and 2 are not in an x-basis (x) z-basis product state; "
            "the protocol was violated upstream");
    }
    JointOutcome outcome = record.outcome.joint_value();
    ClassicalBits bits{outcome.left > 0 ? 0 : 1, outcome.right > 0 ? 0 : 1};

    auto [x_plus, x_minus] = local_basis(Axis::x);
    auto [z_plus, z_minus] = local_basis(Axis::z);
    ComplexVector pair = kron_vec(bits.particle1 == 0 ? x_plus.vector() : x_minus.vector(),
                                  bits.particle2 == 0 ? z_plus.vector() : z_minus.vector());
    ComplexVector chi(2);
    for (std::size_t p = 0; p < 4; p++) {
        for (std::size_t third = 0; third < 2; third++) {
            chi[third] += std::conj(pair[p]) * record.post_state[p * 2 + third];
        }
    }
    Correction correction = correction_for(bits);
    return Readout{bits, correction, Ket::normalize(correction_matrix(correction) * chi)};
}

Readout steps5to7_readout(const Ket &state, std::uint64_t rng_seed) {
    CounterRng rng(rng_seed);
    return steps5to7_readout(state, rng);
}

TeleportResult run_full(const InputState &input, Semantics sem, CounterRng &rng, std::optional<BellLabel> force) {
    Ket initial = prepare(input);
    Step3Result reduced = step3_bell_measurement(initial, sem, rng, force);
    if (auto *refusal = std::get_if<SemanticsRefusal>(&reduced)) {
        return *refusal;
    }
    const BellCollapse &collapse = std::get<BellCollapse>(reduced);
    Readout readout = steps5to7_readout(step4_disentangle(collapse.post_state), rng);
    return TeleportReport{
        sem,
        collapse.branch,
        readout.bits,
        readout.correction,
        readout.final_particle3,
        fidelity(readout.final_particle3, input.ket()),
        collapse.probability,
    };
}

TeleportResult run_full(const InputState &input, Semantics sem, std::uint64_t rng_seed,
                        std::optional<BellLabel> force) {
    CounterRng rng(rng_seed);
    return run_full(input, sem, rng, force);
}

// ---------------------------------------------------------------------------
// Conditional spin flip without a Bell reduction

Ket naive_reference_form(const InputState &input) {
    BellStates bell = bell_states();
    ComplexVector v = input.a * kron_vec(Ket::basis("+").vector(), bell.phi_minus.vector()) +
                      input.b * kron_vec(Ket::basis("-").vector(), bell.psi_minus.vector());
    return Ket::from_amplitudes(v);
}

NaivePathResult naive_path(const InputState &input) {
    ComplexMatrix flip = conditional_spin_flip();
    ComplexMatrix bell_identity(4);
    for (BellLabel label : kBellBranches) {
        bell_identity += ComplexMatrix::projector(bell_state(label).vector());
    }
    double identity_check = frobenius_distance(flip * bell_identity, flip);

    Ket initial = prepare(input);
    Ket state = Ket::from_amplitudes(kron(flip * bell_identity, ComplexMatrix::identity(2)) * initial.vector());

    Ket reference = naive_reference_form(input);
    InputState negated{-input.a, input.b};
    Ket negated_reference = naive_reference_form(negated);

    ComplexMatrix rho3 = reduced_density(state, 2);
    ComplexVector phi = input.ket().vector();
    double overlap = inner(phi, rho3 * phi).real();

    return NaivePathResult{
        state,
        identity_check,
        distance(state.vector(), reference.vector()),
        distance(state.vector(), negated_reference.vector()),
        rho3,
        overlap,
    };
}

}  // namespace jointmeas
