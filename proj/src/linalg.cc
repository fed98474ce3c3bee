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

#include "jointmeas/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jointmeas {

namespace {

void require_finite(std::span<const Complex> entries) {
    for (const Complex &z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("non-finite entry");
        }
    }
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim, Complex{0.0, 0.0}) {}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    require_finite(entries_);
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {
    require_finite(entries_);
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    ComplexVector v(dim);
    v[index] = 1.0;
    return v;
}

double ComplexVector::norm_squared() const {
    double total = 0.0;
    for (const Complex &z : entries_) {
        total += std::norm(z);
    }
    return total;
}

double ComplexVector::norm() const { return std::sqrt(norm_squared()); }

ComplexVector ComplexVector::normalized() const {
    double n = norm();
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    ComplexVector out = *this;
    out *= 1.0 / n;
    return out;
}

ComplexVector &ComplexVector::operator+=(const ComplexVector &other) {
    if (other.dim() != dim()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexVector &ComplexVector::operator-=(const ComplexVector &other) {
    if (other.dim() != dim()) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexVector &ComplexVector::operator*=(Complex scale) {
    for (Complex &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector &b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector &b) { return a -= b; }
ComplexVector operator*(Complex scale, ComplexVector v) { return v *= scale; }

Complex inner(const ComplexVector &a, const ComplexVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

double distance(const ComplexVector &a, const ComplexVector &b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) + " is not " +
                                    std::to_string(dim_) + "^2");
    }
    require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw std::invalid_argument("matrix literal is not square");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &u, const ComplexVector &v) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("outer: dimension mismatch");
    }
    ComplexMatrix m(u.dim());
    for (std::size_t i = 0; i < u.dim(); i++) {
        for (std::size_t j = 0; j < v.dim(); j++) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(const ComplexVector &u) { return outer(u, u); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; i++) {
        total += (*this)(i, i);
    }
    return total;
}

bool ComplexMatrix::is_hermitian(double tol) const { return frobenius_distance(*this, adjoint()) <= tol; }

bool ComplexMatrix::is_unitary(double tol) const {
    return frobenius_distance((*this) * adjoint(), identity(dim_)) <= tol;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t i = 0; i < entries_.size(); i++) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (Complex &z : entries_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "operator*");
    std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < n; j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v) {
    if (m.dim() != v.dim()) {
        throw std::invalid_argument("matrix-vector dimension mismatch");
    }
    ComplexVector out(v.dim());
    for (std::size_t i = 0; i < m.dim(); i++) {
        Complex total{0.0, 0.0};
        for (std::size_t j = 0; j < m.dim(); j++) {
            total += m(i, j) * v[j];
        }
        out[i] = total;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor products and distances

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    std::size_t da = a.dim();
    std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; i++) {
        for (std::size_t j = 0; j < da; j++) {
            Complex aij = a(i, j);
            for (std::size_t k = 0; k < db; k++) {
                for (std::size_t l = 0; l < db; l++) {
                    out(i * db + k, j * db + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexVector kron_vec(const ComplexVector &u, const ComplexVector &v) {
    ComplexVector out(u.dim() * v.dim());
    for (std::size_t i = 0; i < u.dim(); i++) {
        for (std::size_t k = 0; k < v.dim(); k++) {
            out[i * v.dim() + k] = u[i] * v[k];
        }
    }
    return out;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

double frobenius_norm(const ComplexMatrix &m) {
    double total = 0.0;
    for (const Complex &z : m.entries()) {
        total += std::norm(z);
    }
    return std::sqrt(total);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "frobenius_distance");
    double total = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); i++) {
        total += std::norm(ea[i] - eb[i]);
    }
    return std::sqrt(total);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

std::size_t SpectralDecomposition::dim() const { return groups.empty() ? 0 : groups.front().projector.dim(); }

ComplexMatrix SpectralDecomposition::reconstruct() const {
    ComplexMatrix out(dim());
    for (const EigenGroup &g : groups) {
        out += Complex{g.eigenvalue, 0.0} * g.projector;
    }
    return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < a.dim(); j++) {
            if (i != j) {
                total += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(total);
}

// Annihilates a(p,q) with the unitary G = diag(1, e^{-i phi}) R(theta) acting on
// the (p,q) plane: a <- G^dagger a G, v <- v G.
void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    Complex apq = a(p, q);
    double r = std::abs(apq);
    if (r == 0.0) {
        return;
    }
    Complex phase = std::conj(apq) / r;  // e^{-i phi}
    double app = a(p, p).real();
    double aqq = a(q, q).real();
    double tau = (app - aqq) / (2.0 * r);
    double t = -(tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    double c = 1.0 / std::sqrt(1.0 + t * t);
    double s = t * c;

    // Columns of G restricted to the (p,q) plane.
    Complex g00 = c;
    Complex g01 = s;
    Complex g10 = -s * phase;
    Complex g11 = c * phase;

    std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = akp * g00 + akq * g10;
        a(k, q) = akp * g01 + akq * g11;
    }
    for (std::size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
        a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; k++) {
        Complex vkp = v(k, p);
        Complex vkq = v(k, q);
        v(k, p) = vkp * g00 + vkq * g10;
        v(k, q) = vkp * g01 + vkq * g11;
    }
}

}  // namespace

SpectralDecomposition hermitian_eig(const ComplexMatrix &m, double tol) {
    if (m.dim() == 0) {
        throw std::invalid_argument("hermitian_eig: empty matrix");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("hermitian_eig: grouping tolerance must be positive");
    }
    if (!m.is_hermitian(1e-10)) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    }

    std::size_t n = m.dim();
    // Symmetrize so the iteration starts from an exactly Hermitian matrix.
    ComplexMatrix a = Complex{0.5, 0.0} * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::identity(n);
    double scale = std::max(frobenius_norm(a), 1e-300);

    bool converged = off_diagonal_norm(a) <= 1e-15 * scale;
    for (int sweep = 0; sweep < kJacobiSweepBudget && !converged; sweep++) {
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                jacobi_rotate(a, v, p, q);
            }
        }
        converged = off_diagonal_norm(a) <= 1e-15 * scale;
    }
    if (!converged) {
        throw std::runtime_error("hermitian_eig: no convergence after " + std::to_string(kJacobiSweepBudget) +
                                 " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out;
    out.tolerance = tol;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && a(order[end], order[end]).real() - a(order[end - 1], order[end - 1]).real() < tol) {
            end++;
        }
        double sum = 0.0;
        ComplexMatrix projector(n);
        for (std::size_t k = start; k < end; k++) {
            std::size_t col = order[k];
            sum += a(col, col).real();
            ComplexVector vec(n);
            for (std::size_t row = 0; row < n; row++) {
                vec[row] = v(row, col);
            }
            projector += ComplexMatrix::projector(vec);
        }
        int multiplicity = static_cast<int>(end - start);
        out.groups.push_back(EigenGroup{sum / multiplicity, std::move(projector), multiplicity});
        start = end;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Singular values

std::vector<double> singular_values(std::span<const Complex> row_major, std::size_t rows, std::size_t cols) {
    if (row_major.size() != rows * cols) {
        throw std::invalid_argument("singular_values: entry count does not match shape");
    }
    // Work on the columns of M, or of M^dagger when M is wide; both have the
    // same singular values.
    bool wide = cols > rows;
    std::size_t ncols = wide ? rows : cols;
    std::size_t len = wide ? cols : rows;
    std::vector<std::vector<Complex>> columns(ncols, std::vector<Complex>(len));
    for (std::size_t r = 0; r < rows; r++) {
        for (std::size_t c = 0; c < cols; c++) {
            Complex z = row_major[r * cols + c];
            if (wide) {
                columns[r][c] = std::conj(z);
            } else {
                columns[c][r] = z;
            }
        }
    }

    auto column_norm2 = [](const std::vector<Complex> &x) {
        double total = 0.0;
        for (const Complex &z : x) {
            total += std::norm(z);
        }
        return total;
    };

    // Columns whose norm is at roundoff level relative to the whole matrix
    // never become orthogonal to relative precision; leave them alone.
    double total = 0.0;
    for (const auto &col : columns) {
        total += column_norm2(col);
    }
    const double negligible = 1e-30 * total;

    for (int sweep = 0; sweep < kJacobiSweepBudget; sweep++) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < ncols; i++) {
            for (std::size_t j = i + 1; j < ncols; j++) {
                auto &x = columns[i];
                auto &y = columns[j];
                double alpha = column_norm2(x);
                double beta = column_norm2(y);
                Complex gamma{0.0, 0.0};
                for (std::size_t k = 0; k < len; k++) {
                    gamma += std::conj(x[k]) * y[k];
                }
                double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) {
                    continue;
                }
                rotated = true;
                Complex phase = std::conj(gamma) / g;
                double zeta = (alpha - beta) / (2.0 * g);
                double t = -(zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t k = 0; k < len; k++) {
                    Complex xk = x[k];
                    Complex yk = y[k] * phase;
                    x[k] = c * xk - s * yk;
                    y[k] = s * xk + c * yk;
                }
            }
        }
        if (!rotated) {
            std::vector<double> out;
            out.reserve(ncols);
            for (const auto &col : columns) {
                out.push_back(std::sqrt(column_norm2(col)));
            }
            std::sort(out.begin(), out.end(), std::greater<>());
            return out;
        }
    }
    throw std::runtime_error("singular_values: no convergence after " + std::to_string(kJacobiSweepBudget) +
                             " sweeps");
}

}  // namespace jointmeas
