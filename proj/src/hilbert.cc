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

#include "jointmeas/hilbert.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace jointmeas {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI{0.0, 1.0};

int log2_exact(std::size_t dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("ket dimension " + std::to_string(dim) + " is not a power of two >= 2");
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ket

Ket Ket::from_amplitudes(ComplexVector amplitudes) {
    int n = log2_exact(amplitudes.dim());
    double norm2 = amplitudes.norm_squared();
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("state is not normalized (squared norm " + std::to_string(norm2) + ")");
    }
    return Ket(std::move(amplitudes), n);
}

Ket Ket::normalize(ComplexVector amplitudes) {
    int n = log2_exact(amplitudes.dim());
    return Ket(amplitudes.normalized(), n);
}

Ket Ket::basis(std::string_view labels) {
    if (labels.empty()) {
        throw std::invalid_argument("empty basis label");
    }
    std::size_t index = 0;
    for (char c : labels) {
        index <<= 1;
        if (c == '-') {
            index |= 1;
        } else if (c != '+') {
            throw std::invalid_argument(std::string("basis label must use '+' and '-', got '") + c + "'");
        }
    }
    return Ket(ComplexVector::basis(std::size_t{1} << labels.size(), index), static_cast<int>(labels.size()));
}

std::string basis_label(std::size_t index, int nparticles) {
    std::string out(static_cast<std::size_t>(nparticles), '+');
    for (int p = 0; p < nparticles; p++) {
        if ((index >> (nparticles - 1 - p)) & 1) {
            out[static_cast<std::size_t>(p)] = '-';
        }
    }
    return out;
}

Ket tensor(const Ket &left, const Ket &right) {
    return Ket::from_amplitudes(kron_vec(left.vector(), right.vector()));
}

double fidelity(const Ket &a, const Ket &b) { return std::norm(inner(a.vector(), b.vector())); }

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(ComplexMatrix matrix, std::string name) : matrix_(std::move(matrix)), name_(std::move(name)) {
    if (!matrix_.is_hermitian(1e-10)) {
        throw std::invalid_argument("observable '" + name_ + "' is not Hermitian");
    }
}

Observable Observable::tensor(const Observable &left, const Observable &right) {
    Observable out(kron(left.matrix(), right.matrix()), left.name() + "(x)" + right.name());
    out.left_ = std::make_shared<const Observable>(left);
    out.right_ = std::make_shared<const Observable>(right);
    return out;
}

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::x:
            return 'x';
        case Axis::y:
            return 'y';
        case Axis::z:
            return 'z';
    }
    return '?';
}

Axis parse_axis(char c) {
    switch (c) {
        case 'x':
            return Axis::x;
        case 'y':
            return Axis::y;
        case 'z':
            return Axis::z;
        default:
            throw std::invalid_argument(std::string("unknown axis '") + c + "'");
    }
}

Observable pauli(Axis axis) {
    switch (axis) {
        case Axis::x:
            return Observable({{0.0, 1.0}, {1.0, 0.0}}, "sx");
        case Axis::y:
            return Observable({{0.0, -kI}, {kI, 0.0}}, "sy");
        case Axis::z:
            break;
    }
    return Observable({{1.0, 0.0}, {0.0, -1.0}}, "sz");
}

std::pair<Ket, Ket> local_basis(Axis axis) {
    switch (axis) {
        case Axis::x:
            return {Ket::from_amplitudes({kInvSqrt2, kInvSqrt2}), Ket::from_amplitudes({kInvSqrt2, -kInvSqrt2})};
        case Axis::y:
            return {Ket::from_amplitudes({kInvSqrt2, kI * kInvSqrt2}),
                    Ket::from_amplitudes({kInvSqrt2, -kI * kInvSqrt2})};
        case Axis::z:
            break;
    }
    return {Ket::basis("+"), Ket::basis("-")};
}

BellStates bell_states() {
    return BellStates{
        Ket::from_amplitudes({0.0, kInvSqrt2, kInvSqrt2, 0.0}),
        Ket::from_amplitudes({0.0, kInvSqrt2, -kInvSqrt2, 0.0}),
        Ket::from_amplitudes({kInvSqrt2, 0.0, 0.0, kInvSqrt2}),
        Ket::from_amplitudes({kInvSqrt2, 0.0, 0.0, -kInvSqrt2}),
    };
}

Observable bell_operator(double c_x, double c_z) {
    if (c_x == 0.0 && c_z == 0.0) {
        throw std::invalid_argument("bell_operator: both coefficients are zero");
    }
    ComplexMatrix xx = kron(pauli(Axis::x).matrix(), pauli(Axis::x).matrix());
    ComplexMatrix zz = kron(pauli(Axis::z).matrix(), pauli(Axis::z).matrix());
    char name[96];
    std::snprintf(name, sizeof(name), "%.12g sx(x)sx + %.12g sz(x)sz", c_x, c_z);
    return Observable(Complex{c_x, 0.0} * xx + Complex{c_z, 0.0} * zz, name);
}

ComplexMatrix conditional_spin_flip() {
    ComplexMatrix u(4);
    u(1, 0) = 1.0;  // |+-><++|
    u(0, 1) = 1.0;  // |++><+-|
    u(2, 2) = 1.0;  // |-+><-+|
    u(3, 3) = 1.0;  // |--><--|
    return u;
}

ComplexMatrix embed(const ComplexMatrix &local, int particle, int nparticles) {
    if (local.dim() != 2) {
        throw std::invalid_argument("embed: expected a one-particle (2x2) operator");
    }
    if (particle < 0 || particle >= nparticles) {
        throw std::invalid_argument("embed: particle " + std::to_string(particle) + " out of range");
    }
    ComplexMatrix before = ComplexMatrix::identity(std::size_t{1} << particle);
    ComplexMatrix after = ComplexMatrix::identity(std::size_t{1} << (nparticles - particle - 1));
    return kron(kron(before, local), after);
}

ComplexVector eigenvector_from_projector(const ComplexMatrix &projector) {
    std::size_t n = projector.dim();
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t col = 0; col < n; col++) {
        double total = 0.0;
        for (std::size_t row = 0; row < n; row++) {
            total += std::norm(projector(row, col));
        }
        if (total > best_norm) {
            best_norm = total;
            best = col;
        }
    }
    ComplexVector v(n);
    for (std::size_t row = 0; row < n; row++) {
        v[row] = projector(row, best);
    }
    v = v.normalized();
    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; i++) {
        if (std::abs(v[i]) > std::abs(v[peak]) + 1e-12) {
            peak = i;
        }
    }
    v *= std::conj(v[peak]) / std::abs(v[peak]);
    return v;
}

// ---------------------------------------------------------------------------
// Correlation degeneracy

namespace {

std::vector<std::pair<double, ComplexVector>> nondegenerate_eigenpairs(const Observable &o, const char *side) {
    SpectralDecomposition spec = hermitian_eig(o.matrix());
    std::vector<std::pair<double, ComplexVector>> out;
    for (const EigenGroup &g : spec.groups) {
        if (g.multiplicity != 1) {
            throw std::invalid_argument(std::string(side) + " observable '" + o.name() +
                                        "' has a degenerate local spectrum");
        }
        out.emplace_back(g.eigenvalue, eigenvector_from_projector(g.projector));
    }
    return out;
}

ComplexVector product_vector(const DegeneracyReport &report, const ProductEigenvector &member) {
    return kron_vec(report.left_eigenvectors.at(static_cast<std::size_t>(member.left_index)),
                    report.right_eigenvectors.at(static_cast<std::size_t>(member.right_index)));
}

}  // namespace

DegeneracyReport detect_correlation_degeneracy(const Observable &a, const Observable &b, double tol) {
    auto left = nondegenerate_eigenpairs(a, "left");
    auto right = nondegenerate_eigenpairs(b, "right");

    DegeneracyReport report;
    report.observable_name = a.name() + "(x)" + b.name();
    for (const auto &[value, vec] : left) {
        report.left_eigenvectors.push_back(vec);
    }
    for (const auto &[value, vec] : right) {
        report.right_eigenvectors.push_back(vec);
    }
    for (std::size_t i = 0; i < left.size(); i++) {
        for (std::size_t j = 0; j < right.size(); j++) {
            report.product_spectrum.push_back(
                ProductEigenvector{static_cast<int>(i), static_cast<int>(j), left[i].first, right[j].first});
        }
    }

    std::vector<std::size_t> order(report.product_spectrum.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return report.product_spectrum[x].product() < report.product_spectrum[y].product();
    });

    ComplexMatrix full = kron(a.matrix(), b.matrix());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && report.product_spectrum[order[end]].product() -
                                             report.product_spectrum[order[end - 1]].product() <
                                         tol) {
            end++;
        }
        if (end - start >= 2) {
            std::vector<std::size_t> ids(order.begin() + static_cast<std::ptrdiff_t>(start),
                                         order.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(ids.begin(), ids.end());
            DegeneracyGroup group{0.0, {}, Ket::basis("+")};
            double sum = 0.0;
            for (std::size_t id : ids) {
                group.members.push_back(report.product_spectrum[id]);
                sum += report.product_spectrum[id].product();
            }
            group.eigenvalue = sum / static_cast<double>(ids.size());
            group.witness =
                entangled_eigenvector(report, group.members[0], group.members[1], kInvSqrt2, kInvSqrt2);
            ComplexVector residual =
                full * group.witness.vector() - Complex{group.eigenvalue, 0.0} * group.witness.vector();
            if (residual.norm() >= 1e-10) {
                throw std::logic_error("degeneracy witness fails its eigenrelation");
            }
            report.groups.push_back(std::move(group));
        }
        start = end;
    }
    return report;
}

Ket entangled_eigenvector(const DegeneracyReport &report, const ProductEigenvector &first,
                          const ProductEigenvector &second, Complex alpha1, Complex alpha2) {
    if (std::abs(std::norm(alpha1) + std::norm(alpha2) - 1.0) > 1e-10) {
        throw std::invalid_argument("entangled_eigenvector: |alpha1|^2 + |alpha2|^2 must be 1");
    }
    if (first.left_index == second.left_index && first.right_index == second.right_index) {
        throw std::invalid_argument("entangled_eigenvector: the two product eigenvectors must be distinct");
    }
    return Ket::from_amplitudes(alpha1 * product_vector(report, first) + alpha2 * product_vector(report, second));
}

// ---------------------------------------------------------------------------
// Entanglement diagnostics

int schmidt_rank(const Ket &psi, int cut) {
    if (psi.nparticles() < 2) {
        throw std::invalid_argument("schmidt_rank: need at least two particles");
    }
    if (cut < 1 || cut >= psi.nparticles()) {
        throw std::invalid_argument("schmidt_rank: cut " + std::to_string(cut) + " is not inside 1.." +
                                    std::to_string(psi.nparticles() - 1));
    }
    std::size_t rows = std::size_t{1} << cut;
    std::size_t cols = std::size_t{1} << (psi.nparticles() - cut);
    auto sv = singular_values(psi.vector().entries(), rows, cols);
    return static_cast<int>(std::count_if(sv.begin(), sv.end(), [](double s) { return s > 1e-10; }));
}

ComplexMatrix reduced_density(const Ket &psi, int particle) {
    int n = psi.nparticles();
    if (particle < 0 || particle >= n) {
        throw std::invalid_argument("reduced_density: particle out of range");
    }
    int shift = n - 1 - particle;
    ComplexMatrix rho(2);
    for (std::size_t i = 0; i < psi.dim(); i++) {
        for (std::size_t j = 0; j < psi.dim(); j++) {
            // Same configuration on every other particle.
            if (((i ^ j) & ~(std::size_t{1} << shift)) != 0) {
                continue;
            }
            rho((i >> shift) & 1, (j >> shift) & 1) += psi[i] * std::conj(psi[j]);
        }
    }
    return rho;
}

}  // namespace jointmeas
