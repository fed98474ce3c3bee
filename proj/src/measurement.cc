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

#include <cmath>
#include <functional>
#include <stdexcept>

#include "jointmeas/format.h"

namespace jointmeas {

std::string_view semantics_name(Semantics sem) { return sem == Semantics::luders ? "luders" : "local-joint"; }

Semantics parse_semantics(std::string_view name) {
    if (name == "luders") {
        return Semantics::luders;
    }
    if (name == "local-joint") {
        return Semantics::local_joint;
    }
    throw std::invalid_argument("unknown semantics '" + std::string(name) + "' (expected luders or local-joint)");
}

std::string Outcome::label() const {
    if (is_scalar()) {
        return format_signed(scalar_value());
    }
    JointOutcome j = joint_value();
    return "(" + format_signed(j.left) + "," + format_signed(j.right) + ")";
}

bool Outcome::matches(const Outcome &other, double tol) const {
    if (is_scalar() != other.is_scalar()) {
        return false;
    }
    if (is_scalar()) {
        return std::abs(scalar_value() - other.scalar_value()) < tol;
    }
    return std::abs(joint_value().left - other.joint_value().left) < tol &&
           std::abs(joint_value().right - other.joint_value().right) < tol;
}

namespace {

void validate_measurement(const Ket &psi, const Observable &a, const Observable &b, Subsystems particles) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("joint measurement needs one-particle observables");
    }
    int n = psi.nparticles();
    if (particles.left < 0 || particles.left >= n || particles.right < 0 || particles.right >= n) {
        throw std::invalid_argument("measured particle index outside the " + std::to_string(n) + "-particle register");
    }
    if (particles.left == particles.right) {
        throw std::invalid_argument("left and right observables must act on different particles");
    }
    if (std::abs(psi.vector().norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("measured state is not normalized");
    }
}

void push_branch(std::vector<MeasurementRecord> &out, Outcome outcome, const ComplexVector &projected) {
    double p = projected.norm_squared();
    if (p > kBranchThreshold) {
        out.push_back(MeasurementRecord{outcome, p, Ket::normalize(projected)});
    }
}

}  // namespace

std::vector<MeasurementRecord> exact_distribution(const Ket &psi, const Observable &a, const Observable &b,
                                                  Semantics sem, Subsystems particles) {
    validate_measurement(psi, a, b, particles);
    int n = psi.nparticles();
    std::vector<MeasurementRecord> out;

    if (sem == Semantics::luders) {
        ComplexMatrix joint = embed(a.matrix(), particles.left, n) * embed(b.matrix(), particles.right, n);
        for (const EigenGroup &g : hermitian_eig(joint).groups) {
            push_branch(out, Outcome::scalar(g.eigenvalue), g.projector * psi.vector());
        }
    } else {
        SpectralDecomposition left = hermitian_eig(a.matrix());
        SpectralDecomposition right = hermitian_eig(b.matrix());
        for (const EigenGroup &ga : left.groups) {
            ComplexVector after_left = embed(ga.projector, particles.left, n) * psi.vector();
            for (const EigenGroup &gb : right.groups) {
                push_branch(out, Outcome::joint({ga.eigenvalue, gb.eigenvalue}),
                            embed(gb.projector, particles.right, n) * after_left);
            }
        }
    }

    double total = 0.0;
    for (const MeasurementRecord &r : out) {
        total += r.probability;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::logic_error("measurement probabilities sum to " + std::to_string(total));
    }
    return out;
}

std::size_t pick_branch(std::span<const double> probabilities, double u) {
    if (probabilities.empty()) {
        throw std::invalid_argument("pick_branch: no branches");
    }
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); i++) {
        cumulative += probabilities[i];
        if (u < cumulative) {
            return i;
        }
    }
    return probabilities.size() - 1;
}

MeasurementRecord sample(const Ket &psi, const Observable &a, const Observable &b, Semantics sem,
                         Subsystems particles, CounterRng &rng) {
    auto records = exact_distribution(psi, a, b, sem, particles);
    std::vector<double> probabilities;
    probabilities.reserve(records.size());
    for (const MeasurementRecord &r : records) {
        probabilities.push_back(r.probability);
    }
    return records[pick_branch(probabilities, rng.uniform())];
}

MeasurementRecord sample(const Ket &psi, const Observable &a, const Observable &b, Semantics sem,
                         Subsystems particles, std::uint64_t rng_seed) {
    CounterRng rng(rng_seed);
    return sample(psi, a, b, sem, particles, rng);
}

Trajectory sequential(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem, CounterRng &rng) {
    Trajectory out{{}, psi};
    for (const MeasurementStep &step : steps) {
        MeasurementRecord record = sample(out.final_state, step.left, step.right, sem, step.particles, rng);
        out.final_state = record.post_state;
        out.records.push_back(std::move(record));
    }
    return out;
}

Trajectory sequential(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem,
                      std::uint64_t rng_seed) {
    CounterRng rng(rng_seed);
    return sequential(psi, steps, sem, rng);
}

// ---------------------------------------------------------------------------
// Ensembles

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("ensemble has no members");
    }
    double total = 0.0;
    for (const EnsembleMember &m : members_) {
        if (!(m.weight > 0.0 && m.weight <= 1.0 + 1e-12)) {
            throw std::invalid_argument("ensemble weight outside (0, 1]");
        }
        if (m.state.dim() != members_.front().state.dim()) {
            throw std::invalid_argument("ensemble members have different dimensions");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("ensemble weights sum to " + std::to_string(total));
    }
}

ComplexMatrix Ensemble::mixture() const {
    ComplexMatrix rho(dim());
    for (const EnsembleMember &m : members_) {
        rho += Complex{m.weight, 0.0} * ComplexMatrix::projector(m.state.vector());
    }
    return rho;
}

Ensemble Ensemble::merged(double fidelity_tol) const {
    std::vector<EnsembleMember> out;
    for (const EnsembleMember &m : members_) {
        bool found = false;
        for (EnsembleMember &existing : out) {
            if (fidelity(existing.state, m.state) > 1.0 - fidelity_tol) {
                existing.weight += m.weight;
                found = true;
                break;
            }
        }
        if (!found) {
            out.push_back(m);
        }
    }
    return Ensemble(std::move(out));
}

Ensemble channel_ensemble(const Ket &psi, std::span<const MeasurementStep> steps, Semantics sem) {
    std::vector<EnsembleMember> members;
    std::function<void(const Ket &, double, std::size_t)> expand = [&](const Ket &state, double weight,
                                                                       std::size_t depth) {
        if (depth == steps.size()) {
            members.push_back(EnsembleMember{weight, state});
            return;
        }
        const MeasurementStep &step = steps[depth];
        for (const MeasurementRecord &r : exact_distribution(state, step.left, step.right, sem, step.particles)) {
            expand(r.post_state, weight * r.probability, depth + 1);
        }
    };
    expand(psi, 1.0, 0);
    return Ensemble(std::move(members));
}

EnsembleComparison ensembles_equal(const Ensemble &first, const Ensemble &second, double tol) {
    if (first.dim() != second.dim()) {
        throw std::invalid_argument("ensembles_equal: dimension mismatch");
    }
    EnsembleComparison out{};
    out.mixture_distance = frobenius_distance(first.mixture(), second.mixture());
    out.equal = out.mixture_distance < tol;

    Ensemble a = first.merged();
    Ensemble b = second.merged();
    auto present_in = [](const EnsembleMember &m, const Ensemble &e) {
        for (const EnsembleMember &other : e.members()) {
            if (fidelity(m.state, other.state) > 1.0 - 1e-10) {
                return true;
            }
        }
        return false;
    };
    for (const EnsembleMember &m : a.members()) {
        if (present_in(m, b)) {
            out.shared_members++;
        } else {
            out.only_first++;
        }
    }
    for (const EnsembleMember &m : b.members()) {
        if (!present_in(m, a)) {
            out.only_second++;
        }
    }
    return out;
}

}  // namespace jointmeas
