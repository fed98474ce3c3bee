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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_support.h"

namespace jointmeas {
namespace {

using testing::random_hermitian;

const ComplexMatrix kSx{{0, 1}, {1, 0}};
const ComplexMatrix kSy{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
const ComplexMatrix kSz{{1, 0}, {0, -1}};

TEST(Kron, MatchesIndexFormula) {
    std::mt19937_64 gen(11);
    ComplexMatrix a = random_hermitian(gen, 2);
    ComplexMatrix b = random_hermitian(gen, 4);
    ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.dim(), 8u);
    for (std::size_t i = 0; i < 2; i++)
        for (std::size_t j = 0; j < 2; j++)
            for (std::size_t p = 0; p < 4; p++)
                for (std::size_t q = 0; q < 4; q++) {
                    EXPECT_EQ(k(i * 4 + p, j * 4 + q), a(i, j) * b(p, q));
                }
}

TEST(Kron, VectorAgreesWithMatrixAction) {
    std::mt19937_64 gen(12);
    ComplexMatrix a = random_hermitian(gen, 2);
    ComplexMatrix b = random_hermitian(gen, 2);
    ComplexVector u = testing::random_vector(gen, 2);
    ComplexVector v = testing::random_vector(gen, 2);
    // (A (x) B)(u (x) v) = Au (x) Bv
    EXPECT_LT(distance(kron(a, b) * kron_vec(u, v), kron_vec(a * u, b * v)), 1e-12);
}

TEST(Kron, LeftFactorIsSlowestIndex) {
    ComplexVector plus = ComplexVector::basis(2, 0);
    ComplexVector minus = ComplexVector::basis(2, 1);
    // |+-> sits at index 1, |-+> at index 2
    EXPECT_EQ(kron_vec(plus, minus)[1], Complex(1));
    EXPECT_EQ(kron_vec(minus, plus)[2], Complex(1));
}

TEST(Product, MatchesNaiveLoop) {
    std::mt19937_64 gen(13);
    ComplexMatrix a = random_hermitian(gen, 4);
    ComplexMatrix b = random_hermitian(gen, 4);
    EXPECT_LT(frobenius_distance(a * b, testing::naive_product(a, b)), 1e-13);
}

TEST(Commutator, PauliOracle) {
    // [sz, sx] = 2i sy, Frobenius norm 2 sqrt 2
    ComplexMatrix c = commutator(kSz, kSx);
    EXPECT_LT(frobenius_distance(c, Complex(0, 2) * kSy), 1e-15);
    EXPECT_NEAR(frobenius_norm(c), 2.0 * std::sqrt(2.0), 1e-14);
    EXPECT_EQ(frobenius_norm(commutator(kSz, kSz)), 0.0);
}

TEST(Commutator, CorrelationOperatorsCommuteExactly) {
    ComplexMatrix c = commutator(kron(kSz, kSz), kron(kSx, kSx));
    for (Complex z : c.entries()) {
        EXPECT_EQ(z, Complex(0));
    }
}

TEST(Commutator, DimensionMismatchThrows) {
    EXPECT_THROW(commutator(kSz, ComplexMatrix::identity(4)), std::invalid_argument);
    EXPECT_THROW(frobenius_distance(kSz, ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST(Matrix, RejectsNonFiniteEntries) {
    EXPECT_THROW(ComplexMatrix({{std::nan(""), 0}, {0, 1}}), std::invalid_argument);
    EXPECT_THROW(ComplexVector({Complex(INFINITY, 0)}), std::invalid_argument);
}

TEST(Matrix, HermitianAndUnitaryChecks) {
    EXPECT_TRUE(kSy.is_hermitian());
    EXPECT_TRUE(kSy.is_unitary());
    ComplexMatrix skew{{0, 1}, {-1, 0}};
    EXPECT_FALSE(skew.is_hermitian());
    EXPECT_TRUE(skew.is_unitary());
    EXPECT_FALSE((2.0 * kSx).is_unitary());
}

TEST(HermitianEig, PauliSpectrum) {
    for (const ComplexMatrix &p : {kSx, kSy, kSz}) {
        SpectralDecomposition d = hermitian_eig(p);
        ASSERT_EQ(d.groups.size(), 2u);
        EXPECT_NEAR(d.groups[0].eigenvalue, -1.0, 1e-14);
        EXPECT_NEAR(d.groups[1].eigenvalue, 1.0, 1e-14);
        EXPECT_LT(frobenius_distance(d.reconstruct(), p), 1e-13);
    }
}

TEST(HermitianEig, CorrelationOperatorIsDoublyDegenerate) {
    SpectralDecomposition d = hermitian_eig(kron(kSz, kSz));
    ASSERT_EQ(d.groups.size(), 2u);
    EXPECT_EQ(d.groups[0].multiplicity, 2);
    EXPECT_EQ(d.groups[1].multiplicity, 2);
    EXPECT_LT(frobenius_distance(d.groups[1].projector, ComplexMatrix(4, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})),
              1e-14);
}

TEST(HermitianEig, BellOperatorCharacteristicPolynomial) {
    // sqrt2 (xx + zz) has characteristic polynomial x^2 (x^2 - 8)
    double c = std::sqrt(2.0);
    ComplexMatrix b = c * kron(kSx, kSx) + c * kron(kSz, kSz);
    SpectralDecomposition d = hermitian_eig(b);
    ASSERT_EQ(d.groups.size(), 3u);
    for (const EigenGroup &g : d.groups) {
        double x = g.eigenvalue;
        EXPECT_NEAR(x * x * (x * x - 8.0), 0.0, 1e-11);
    }
    EXPECT_NEAR(d.groups[0].eigenvalue, -std::sqrt(8.0), 1e-13);
    EXPECT_EQ(d.groups[1].multiplicity, 2);
    EXPECT_NEAR(d.groups[2].eigenvalue, std::sqrt(8.0), 1e-13);
}

TEST(HermitianEig, RandomRoundTrip) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 100; trial++) {
        ComplexMatrix m = random_hermitian(gen, 4);
        SpectralDecomposition d = hermitian_eig(m);
        EXPECT_LT(frobenius_distance(d.reconstruct(), m), 1e-12 * std::max(1.0, frobenius_norm(m)));
        ComplexMatrix sum(4);
        int multiplicity = 0;
        for (std::size_t g = 0; g < d.groups.size(); g++) {
            const ComplexMatrix &p = d.groups[g].projector;
            EXPECT_LT(frobenius_distance(p * p, p), 1e-12);
            EXPECT_TRUE(p.is_hermitian(1e-12));
            EXPECT_NEAR(p.trace().real(), d.groups[g].multiplicity, 1e-12);
            if (g > 0) {
                EXPECT_LT(d.groups[g - 1].eigenvalue, d.groups[g].eigenvalue);
                EXPECT_LT(frobenius_norm(d.groups[g - 1].projector * p), 1e-12);
            }
            sum += p;
            multiplicity += d.groups[g].multiplicity;
        }
        EXPECT_EQ(multiplicity, 4);
        EXPECT_LT(frobenius_distance(sum, ComplexMatrix::identity(4)), 1e-12);
    }
}

TEST(HermitianEig, GroupingSurvivesSmallPerturbation) {
    std::mt19937_64 gen(5);
    ComplexMatrix base = kron(kSz, kSz);
    ComplexMatrix noise = random_hermitian(gen, 4);
    noise *= 1e-10 / frobenius_norm(noise);
    SpectralDecomposition d = hermitian_eig(base + noise);
    ASSERT_EQ(d.groups.size(), 2u);
    EXPECT_EQ(d.groups[0].multiplicity, 2);
    // A perturbation well above the tolerance splits the groups.
    ComplexMatrix split = base;
    split(0, 0) += 1e-6;
    EXPECT_EQ(hermitian_eig(split).groups.size(), 3u);
}

TEST(HermitianEig, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix{{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST(HermitianEig, DiagonalInputIsExact) {
    ComplexMatrix d{{3, 0, 0}, {0, -1, 0}, {0, 0, 3}};
    SpectralDecomposition s = hermitian_eig(d);
    ASSERT_EQ(s.groups.size(), 2u);
    EXPECT_EQ(s.groups[0].eigenvalue, -1.0);
    EXPECT_EQ(s.groups[1].multiplicity, 2);
}

TEST(SingularValues, MatchGramEigenvalues) {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 20; trial++) {
        ComplexVector v = testing::random_vector(gen, 8);  // a 2 x 4 matrix
        std::vector<double> s = singular_values(v.entries(), 2, 4);
        ComplexMatrix gram(2);
        for (std::size_t i = 0; i < 2; i++)
            for (std::size_t j = 0; j < 2; j++)
                for (std::size_t k = 0; k < 4; k++) gram(i, j) += v[i * 4 + k] * std::conj(v[j * 4 + k]);
        SpectralDecomposition d = hermitian_eig(gram);
        std::vector<double> eig;
        for (const EigenGroup &g : d.groups)
            for (int m = 0; m < g.multiplicity; m++) eig.push_back(g.eigenvalue);
        ASSERT_EQ(eig.size(), 2u);
        ASSERT_GE(s.size(), 2u);
        EXPECT_NEAR(s[0] * s[0], eig[1], 1e-12 * eig[1] + 1e-14);
        EXPECT_NEAR(s[1] * s[1], eig[0], 1e-12 * eig[1] + 1e-14);
    }
}

TEST(SingularValues, RankOneHasOneNonzero) {
    ComplexVector v{1, 2, Complex(0, 1), Complex(0, 2)};  // [[1,2],[i,2i]]
    std::vector<double> s = singular_values(v.entries(), 2, 2);
    EXPECT_NEAR(s[0], std::sqrt(10.0), 1e-13);
    EXPECT_LT(s[1], 1e-14);
}

TEST(SingularValues, ExactlyRankDeficientTallMatrixConverges) {
    // Rows of a product state across a 2 | 1 cut: every row is a multiple of (0.6, 0.8i).
    std::vector<Complex> rows;
    for (Complex scale : {Complex(0.5), Complex(0, -0.5), Complex(0.5), Complex(-0.5)}) {
        rows.push_back(scale * 0.6);
        rows.push_back(scale * Complex(0, 0.8));
    }
    std::vector<double> s = singular_values(rows, 4, 2);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s[0], 1.0, 1e-14);
    EXPECT_LT(s[1], 1e-14);
}

}  // namespace
}  // namespace jointmeas
