// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <random>

#include "support.hpp"
#include "tiht/linalg.hpp"
#include "tiht/ranks.hpp"

namespace tiht {
namespace {

using testing::random_matrix;

TEST(RankTuple, ParseAndFormat) {
    EXPECT_EQ(RankTuple::parse("2,2,2"), (RankTuple{2, 2, 2}));
    EXPECT_EQ(RankTuple::parse("1x5x5"), (RankTuple{1, 5, 5}));
    EXPECT_EQ((RankTuple{3, 4, 5}).to_string(), "3,4,5");
    EXPECT_TRUE(RankTuple::uniform(4, 2).is_uniform());
    EXPECT_FALSE((RankTuple{1, 2}).is_uniform());
    EXPECT_THROW(RankTuple::parse("2,,2"), ArgumentError);
    EXPECT_THROW((RankTuple{2, 0}), ArgumentError);
}

TEST(RankTolerance, ScalesWithSizeAndLargestValue) {
    EXPECT_DOUBLE_EQ(rank_tolerance(10, 100, 2.0), 100 * std::numeric_limits<double>::epsilon() * 2.0);
}

TEST(NumericalRank, DetectsExactRank) {
    std::mt19937_64 rng(7);
    const auto a = random_matrix<double>(8, 3, rng);
    const auto b = random_matrix<double>(3, 9, rng);
    EXPECT_EQ(numerical_rank(Matrix<double>(a * b)), 3);
    EXPECT_EQ(numerical_rank(Matrix<double>::Zero(4, 4).eval()), 0);
    const auto ac = random_matrix<Complex>(6, 2, rng);
    const auto bc = random_matrix<Complex>(2, 6, rng);
    EXPECT_EQ(numerical_rank(Matrix<Complex>(ac * bc)), 2);
}

template <Scalar T>
void expect_leading_vectors_match_svd(Index rows, Index cols, Index k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto m = random_matrix<T>(rows, cols, rng);
    const Matrix<T> u = leading_left_singular_vectors(m, k);
    ASSERT_EQ(u.rows(), rows);
    ASSERT_EQ(u.cols(), k);
    EXPECT_LE((u.adjoint() * u - Matrix<T>::Identity(k, k)).norm(), 1e-12);
    // Same subspace as a dense SVD.
    Eigen::JacobiSVD<Matrix<T>> svd(m, Eigen::ComputeThinU);
    const Matrix<T> ref = svd.matrixU().leftCols(k);
    EXPECT_LE((u * u.adjoint() - ref * ref.adjoint()).norm(), 1e-10);
    // Largest-magnitude entry of each column is real and nonnegative.
    for (Index j = 0; j < k; ++j) {
        Index p = 0;
        u.col(j).cwiseAbs().maxCoeff(&p);
        EXPECT_GE(std::real(u(p, j)), 0.0);
        EXPECT_NEAR(std::imag(Complex(u(p, j))), 0.0, 1e-14);
    }
}

TEST(LeadingSingularVectors, WideTallAndSquare) {
    expect_leading_vectors_match_svd<double>(10, 100, 2, 1);
    expect_leading_vectors_match_svd<double>(100, 10, 3, 2);
    expect_leading_vectors_match_svd<double>(7, 7, 7, 3);
    expect_leading_vectors_match_svd<Complex>(10, 100, 2, 4);
    expect_leading_vectors_match_svd<Complex>(100, 10, 4, 5);
}

TEST(LeadingSingularVectors, ClampsAndCompletesRankDeficientBases) {
    std::mt19937_64 rng(8);
    const auto a = random_matrix<double>(6, 1, rng);
    const auto b = random_matrix<double>(1, 9, rng);
    const Matrix<double> m = a * b;
    const Matrix<double> u = leading_left_singular_vectors(m, 3);
    ASSERT_EQ(u.cols(), 3);
    EXPECT_LE((u.transpose() * u - Matrix<double>::Identity(3, 3)).norm(), 1e-12);
    // The first column spans the range of m.
    EXPECT_NEAR(std::abs(u.col(0).dot(a.col(0).normalized())), 1.0, 1e-12);
    EXPECT_EQ(leading_left_singular_vectors(m, 50).cols(), 6);
    EXPECT_EQ(leading_left_singular_vectors(Matrix<double>::Zero(3, 4).eval(), 2).cols(), 2);
}

TEST(LeftSvd, SingularValuesDescending) {
    std::mt19937_64 rng(9);
    const auto svd = left_svd(random_matrix<double>(5, 8, rng));
    ASSERT_EQ(svd.s.size(), 5);
    for (Index i = 1; i < 5; ++i) EXPECT_GE(svd.s(i - 1), svd.s(i));
}

TEST(ThinQr, PositiveDiagonalAndReconstruction) {
    std::mt19937_64 rng(10);
    for (const auto& [rows, cols] : {std::pair<Index, Index>{6, 3}, {3, 3}}) {
        const auto m = random_matrix<Complex>(rows, cols, rng);
        const auto qr = thin_qr(m);
        EXPECT_LE((qr.q * qr.r - m).norm(), 1e-12 * m.norm());
        EXPECT_LE((qr.q.adjoint() * qr.q - Matrix<Complex>::Identity(cols, cols)).norm(), 1e-12);
        for (Index i = 0; i < cols; ++i) {
            EXPECT_GT(qr.r(i, i).real(), 0.0);
            EXPECT_NEAR(qr.r(i, i).imag(), 0.0, 1e-14);
            for (Index j = 0; j < i; ++j) EXPECT_EQ(qr.r(i, j), Complex(0.0));
        }
    }
}

}  // namespace
}  // namespace tiht
