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

#ifndef JOINTMEAS_LINALG_H
#define JOINTMEAS_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace jointmeas {

using Complex = std::complex<double>;

/// Dense complex column vector. Entries are always finite.
class ComplexVector {
   public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    /// Unit vector e_index of the given dimension.
    static ComplexVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return entries_.size(); }
    Complex operator[](std::size_t i) const { return entries_[i]; }
    Complex &operator[](std::size_t i) { return entries_[i]; }
    std::span<const Complex> entries() const { return entries_; }

    double norm_squared() const;
    double norm() const;
    /// Throws std::invalid_argument on a zero vector.
    ComplexVector normalized() const;

    ComplexVector &operator+=(const ComplexVector &other);
    ComplexVector &operator-=(const ComplexVector &other);
    ComplexVector &operator*=(Complex scale);

   private:
    std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector &b);
ComplexVector operator-(ComplexVector a, const ComplexVector &b);
ComplexVector operator*(Complex scale, ComplexVector v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector &a, const ComplexVector &b);
/// Euclidean norm of a - b.
double distance(const ComplexVector &a, const ComplexVector &b);

/// Dense square complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    /// |u><v|
    static ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v);
    /// |u><u|
    static ComplexMatrix projector(const ComplexVector &u);

    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    Complex &operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    bool is_hermitian(double tol = 1e-10) const;
    bool is_unitary(double tol = 1e-10) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v);

/// Kronecker product. Entry (i*dimB + k, j*dimB + l) is A(i,j) * B(k,l), so the
/// left factor is the slowest-varying index.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector kron_vec(const ComplexVector &u, const ComplexVector &v);

/// AB - BA. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

double frobenius_norm(const ComplexMatrix &m);
/// Throws std::invalid_argument on dimension mismatch.
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);

struct EigenGroup {
    double eigenvalue;
    ComplexMatrix projector;
    int multiplicity;
};

/// Eigenvalues grouped by `tolerance`, ascending, each with the orthogonal
/// projector onto its eigenspace.
struct SpectralDecomposition {
    std::vector<EigenGroup> groups;
    double tolerance = 0.0;

    std::size_t dim() const;
    /// Sum of eigenvalue * projector.
    ComplexMatrix reconstruct() const;
};

inline constexpr double kDefaultGroupingTolerance = 1e-8;
inline constexpr int kJacobiSweepBudget = 50;

/// Cyclic complex Jacobi diagonalization. Consecutive sorted eigenvalues closer
/// than `tol` share a group.
///
/// Throws std::invalid_argument if `m` is not Hermitian within 1e-10, and
/// std::runtime_error if the off-diagonal mass has not vanished after
/// kJacobiSweepBudget sweeps.
SpectralDecomposition hermitian_eig(const ComplexMatrix &m, double tol = kDefaultGroupingTolerance);

/// Singular values (descending) of a rows x cols row-major matrix, via one-sided
/// Jacobi. Small singular values keep high relative accuracy, which is what rank
/// decisions need.
std::vector<double> singular_values(std::span<const Complex> row_major, std::size_t rows, std::size_t cols);

}  // namespace jointmeas

#endif
