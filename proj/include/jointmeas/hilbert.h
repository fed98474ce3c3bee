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

#ifndef JOINTMEAS_HILBERT_H
#define JOINTMEAS_HILBERT_H

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jointmeas/linalg.h"

namespace jointmeas {

/// Pure state of `nparticles` spin-1/2 particles, amplitudes over the z-basis
/// product states ordered lexicographically with particle 1 leftmost:
/// |++>, |+->, |-+>, |--> for two particles.
class Ket {
   public:
    /// Throws std::invalid_argument unless the dimension is a power of two and
    /// the norm is 1 within 1e-10.
    static Ket from_amplitudes(ComplexVector amplitudes);
    /// Rescales a nonzero vector to unit norm.
    static Ket normalize(ComplexVector amplitudes);
    /// Product state from a label string over {+, -}, e.g. "+-+".
    static Ket basis(std::string_view labels);

    const ComplexVector &vector() const { return vector_; }
    int nparticles() const { return nparticles_; }
    std::size_t dim() const { return vector_.dim(); }
    Complex operator[](std::size_t i) const { return vector_[i]; }

   private:
    Ket(ComplexVector v, int nparticles) : vector_(std::move(v)), nparticles_(nparticles) {}

    ComplexVector vector_;
    int nparticles_;
};

/// Label of the z-basis product state at `index`, e.g. 1 -> "+-" for two particles.
std::string basis_label(std::size_t index, int nparticles);

Ket tensor(const Ket &left, const Ket &right);
/// |<a|b>|^2
double fidelity(const Ket &a, const Ket &b);

/// Hermitian operator with a display name. A product observable remembers its
/// local factors so the individual measurements stay recoverable.
class Observable {
   public:
    /// Throws std::invalid_argument unless `matrix` is Hermitian within 1e-10.
    Observable(ComplexMatrix matrix, std::string name);

    static Observable tensor(const Observable &left, const Observable &right);

    const ComplexMatrix &matrix() const { return matrix_; }
    const std::string &name() const { return name_; }
    std::size_t dim() const { return matrix_.dim(); }
    bool is_product() const { return left_ != nullptr; }
    /// Only valid when is_product().
    const Observable &left() const { return *left_; }
    const Observable &right() const { return *right_; }

   private:
    ComplexMatrix matrix_;
    std::string name_;
    std::shared_ptr<const Observable> left_;
    std::shared_ptr<const Observable> right_;
};

enum class Axis { x, y, z };

char axis_name(Axis axis);
/// Throws std::invalid_argument for anything other than x, y, z.
Axis parse_axis(char c);

/// Pauli matrix in the z-basis, eigenvalues +1 and -1 (spin in units of hbar/2).
Observable pauli(Axis axis);
/// (plus eigenvector, minus eigenvector) of pauli(axis).
std::pair<Ket, Ket> local_basis(Axis axis);

struct BellStates {
    Ket psi_plus;   // (|+-> + |-+>)/sqrt2
    Ket psi_minus;  // (|+-> - |-+>)/sqrt2, the singlet
    Ket phi_plus;   // (|++> + |-->)/sqrt2
    Ket phi_minus;  // (|++> - |-->)/sqrt2
};
BellStates bell_states();

/// c_x (sx (x) sx) + c_z (sz (x) sz). A sum, so it carries no factor structure.
/// Throws std::invalid_argument when both coefficients are zero.
Observable bell_operator(double c_x, double c_z);

/// |+-><++| + |++><+-| + |-+><-+| + |--><--|: flips particle 2 when particle 1 is |+>.
ComplexMatrix conditional_spin_flip();

/// Lifts a one-particle operator to act on `particle` (0-based) of an
/// `nparticles` register, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix &local, int particle, int nparticles);

/// Unit eigenvector spanning a rank-one projector, phase fixed so that its
/// largest-magnitude component is real and positive.
ComplexVector eigenvector_from_projector(const ComplexMatrix &projector);

/// One product eigenvector |u_i> (x) |v_j> of A (x) B, with local eigenvalues
/// a_i, b_j. Indices follow the ascending local spectra.
struct ProductEigenvector {
    int left_index;
    int right_index;
    double left_value;
    double right_value;

    double product() const { return left_value * right_value; }
};

struct DegeneracyGroup {
    double eigenvalue;
    std::vector<ProductEigenvector> members;
    /// Equal-weight superposition of the first two members.
    Ket witness;
};

struct DegeneracyReport {
    std::string observable_name;
    /// Every product eigenvector, ordered by (left_index, right_index).
    std::vector<ProductEigenvector> product_spectrum;
    /// Only eigenvalues shared by at least two product eigenvectors.
    std::vector<DegeneracyGroup> groups;
    std::vector<ComplexVector> left_eigenvectors;
    std::vector<ComplexVector> right_eigenvectors;
};

/// Groups the products a_i b_j that coincide within `tol`.
///
/// Throws std::invalid_argument when A or B is not a single-particle observable
/// or has a degenerate local spectrum.
DegeneracyReport detect_correlation_degeneracy(const Observable &a, const Observable &b,
                                               double tol = kDefaultGroupingTolerance);

/// alpha1 |u_k v_l> + alpha2 |u_m v_n> for two members of a report.
/// Throws std::invalid_argument unless |alpha1|^2 + |alpha2|^2 = 1 within 1e-10.
Ket entangled_eigenvector(const DegeneracyReport &report, const ProductEigenvector &first,
                          const ProductEigenvector &second, Complex alpha1, Complex alpha2);

/// Number of singular values above 1e-10 of the amplitude matrix reshaped
/// across the cut after particle `cut` (1 <= cut < nparticles).
int schmidt_rank(const Ket &psi, int cut);

/// Reduced density matrix of one particle (0-based).
ComplexMatrix reduced_density(const Ket &psi, int particle);

}  // namespace jointmeas

#endif
