// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <numeric>
#include <random>
#include <set>

#include "checks.hpp"

namespace tiht {
namespace {

using testing::dense_matrix;
using testing::random_tensor;
using testing::random_vector;

TEST(FourierOracle, AllShapesUpTo64Entries) {
    const auto dev = testing::fourier_oracle_deviation(64, 601);
    EXPECT_GT(dev.shapes, 300);
    EXPECT_LE(dev.apply, 1e-12);
    EXPECT_LE(dev.adjoint, 1e-12);
}

TEST(FourierOracle, SingleEntryHandValues) {
    // A 1-D length-4 DFT with all signs +1: row k of F is exp(-2 pi i j k / 4).
    const FourierEnsemble a(Shape{4}, std::vector<double>(4, 1.0), std::vector<Index>{1});
    Tensor<Complex> e(Shape{4});
    e[1] = 1.0;
    const auto v = a.apply(e);
    EXPECT_NEAR(v(0).real(), 0.0, 1e-15);
    EXPECT_NEAR(v(0).imag(), -1.0, 1e-15);
}

class AdjointIdentity : public ::testing::TestWithParam<EnsembleKind> {};

TEST_P(AdjointIdentity, HoldsOn200Pairs) {
    EXPECT_LE(testing::adjoint_defect<Complex>(GetParam(), 200, 602), 1e-10);
    if (GetParam() != EnsembleKind::Fourier) EXPECT_LE(testing::adjoint_defect<double>(GetParam(), 200, 603), 1e-10);
}

TEST_P(AdjointIdentity, OperatorIsLinear) {
    std::mt19937_64 rng(604);
    const Shape shape{4, 3, 5};
    const auto a = draw<Complex>(GetParam(), shape, 30, 7);
    const auto x = random_tensor<Complex>(shape, rng);
    const auto z = random_tensor<Complex>(shape, rng);
    const Complex alpha(0.3, -1.2);
    const Vector<Complex> lhs = a->apply(x + alpha * z);
    const Vector<Complex> rhs = a->apply(x) + alpha * a->apply(z);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
}

TEST_P(AdjointIdentity, DeterministicForASeed) {
    const Shape shape{3, 4, 5};
    const auto a = dense_matrix(*draw<Complex>(GetParam(), shape, 20, 99));
    const auto b = dense_matrix(*draw<Complex>(GetParam(), shape, 20, 99));
    const auto c = dense_matrix(*draw<Complex>(GetParam(), shape, 20, 100));
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST_P(AdjointIdentity, RejectsShapeAndLengthMismatch) {
    const auto a = draw<Complex>(GetParam(), Shape{3, 3}, 4, 1);
    EXPECT_THROW(a->apply(Tensor<Complex>(Shape{9})), ArgumentError);
    EXPECT_THROW(a->adjoint(Vector<Complex>::Zero(5)), ArgumentError);
    EXPECT_THROW(draw<Complex>(GetParam(), Shape{3, 3}, 0, 1), ArgumentError);
    if (GetParam() != EnsembleKind::Gaussian) EXPECT_THROW(draw<Complex>(GetParam(), Shape{3, 3}, 10, 1), ArgumentError);
}

INSTANTIATE_TEST_SUITE_P(Ensembles, AdjointIdentity,
                         ::testing::Values(EnsembleKind::Gaussian, EnsembleKind::Fourier, EnsembleKind::Completion),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Fourier, FullSamplingIsUnitaryAndEnergyPreserving) {
    const Shape shape{4, 3, 2};
    const FourierEnsemble a(shape, shape.size(), 11);
    // m = N rows of F/sqrt(N): unitary after the sign flip.
    const auto m = dense_matrix<Complex>(a);
    EXPECT_LE((m.adjoint() * m - Matrix<Complex>::Identity(24, 24)).norm(), 1e-12);
    std::mt19937_64 rng(12);
    const auto x = random_tensor<Complex>(shape, rng);
    EXPECT_NEAR(a.apply(x).norm(), frobenius_norm(x), 1e-12 * frobenius_norm(x));
}

TEST(Fourier, SignsAndSamplesAreValidated) {
    const Shape shape{2, 2};
    EXPECT_THROW(FourierEnsemble(shape, {1, 1, 1}, {0}), ArgumentError);
    EXPECT_THROW(FourierEnsemble(shape, {1, 1, 1, 0.5}, {0}), ArgumentError);
    EXPECT_THROW(FourierEnsemble(shape, {1, 1, 1, 1}, {}), ArgumentError);
    EXPECT_THROW(FourierEnsemble(shape, {1, 1, 1, 1}, {0, 0}), ArgumentError);
    EXPECT_THROW(FourierEnsemble(shape, {1, 1, 1, 1}, {4}), ArgumentError);
    EXPECT_THROW(draw<double>(EnsembleKind::Fourier, shape, 2, 0), ArgumentError);
    const FourierEnsemble a(Shape{5, 6}, 12, 3);
    EXPECT_TRUE(std::is_sorted(a.samples().begin(), a.samples().end()));
    for (double s : a.signs()) EXPECT_TRUE(s == 1.0 || s == -1.0);
}

TEST(Gaussian, EntryVarianceIsOneOverM) {
    const Index m = 200;
    const GaussianEnsemble<double> a(Shape{10, 10, 10}, m, 21);
    const auto& g = a.matrix();
    const double mean = g.mean();
    const double var = (g.array() - mean).square().mean();
    // 200000 entries: the sample variance is within a few percent.
    EXPECT_NEAR(var * m, 1.0, 0.02);
    EXPECT_NEAR(mean * std::sqrt(static_cast<double>(m)), 0.0, 0.01);
}

TEST(Gaussian, ExpectedIsometryOnAverage) {
    std::mt19937_64 rng(22);
    const Shape shape{6, 6, 6};
    const auto x = random_tensor<double>(shape, rng);
    double sum = 0.0;
    const int draws = 200;
    for (int i = 0; i < draws; ++i) sum += GaussianEnsemble<double>(shape, 50, 1000 + i).apply(x).squaredNorm();
    EXPECT_NEAR(sum / draws / x.vec().squaredNorm(), 1.0, 0.05);
}

TEST(Gaussian, FromMatrixChecksColumns) {
    EXPECT_THROW(GaussianEnsemble<double>::from_matrix(Shape{2, 2}, Eigen::MatrixXd::Identity(3, 3)), ArgumentError);
    const auto a = GaussianEnsemble<Complex>::from_matrix(Shape{2, 2}, 2.0 * Eigen::MatrixXd::Identity(4, 4));
    Tensor<Complex> x(Shape{2, 2});
    x[3] = Complex(1.0, 1.0);
    EXPECT_EQ(a.apply(x)(3), Complex(2.0, 2.0));
}

TEST(Completion, ScaledSamplingIsAnIsometryOnAverage) {
    const Shape shape{4, 5};
    const CompletionOperator<double> a(shape, std::vector<Index>{0, 7, 19});
    EXPECT_DOUBLE_EQ(a.scale(), std::sqrt(20.0 / 3.0));
    Tensor<double> x(shape);
    std::iota(x.data().begin(), x.data().end(), 1.0);
    const auto v = a.apply(x);
    EXPECT_DOUBLE_EQ(v(1), 8.0 * a.scale());
    // A* A is scale^2 on the sampled entries and zero elsewhere.
    const auto back = a.adjoint(v);
    EXPECT_DOUBLE_EQ(back[7], 8.0 * 20.0 / 3.0);
    EXPECT_EQ(back[1], 0.0);
}

TEST(Sampling, DistinctSortedAndSeeded) {
    const auto s = sample_without_replacement(1000, 300, 5);
    EXPECT_EQ(std::set<Index>(s.begin(), s.end()).size(), 300U);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(s, sample_without_replacement(1000, 300, 5));
    EXPECT_EQ(sample_without_replacement(10, 10, 1).back(), 9);
    EXPECT_THROW(sample_without_replacement(10, 11, 1), ArgumentError);
    EXPECT_THROW(sample_without_replacement(10, 0, 1), ArgumentError);
}

TEST(OperatorNorm, MatchesDenseLargestSingularValue) {
    for (auto kind : {EnsembleKind::Gaussian, EnsembleKind::Fourier, EnsembleKind::Completion}) {
        const auto a = draw<Complex>(kind, Shape{4, 4, 3}, 20, 31);
        const auto m = dense_matrix(*a);
        const double sigma = Eigen::JacobiSVD<Matrix<Complex>>(m).singularValues()(0);
        const double est = operator_norm(*a, 300, 1);
        EXPECT_LE(est, sigma * (1.0 + 1e-12));
        EXPECT_GE(est, sigma * (1.0 - 1e-3)) << to_string(kind);
    }
    EXPECT_THROW(operator_norm(*draw<double>(EnsembleKind::Gaussian, Shape{2}, 1, 0), 0), ArgumentError);
}

TEST(EnsembleSpec, JsonRoundtrip) {
    const EnsembleSpec spec{EnsembleKind::Fourier, Shape{10, 10, 10}, 110, 77};
    EXPECT_EQ(EnsembleSpec::from_json(spec.to_json()), spec);
    EXPECT_THROW(EnsembleSpec::from_json(nlohmann::json{{"kind", "gaussian"}}), ArgumentError);
    EXPECT_EQ(parse_ensemble("completion"), EnsembleKind::Completion);
    EXPECT_THROW(parse_ensemble("bernoulli"), ArgumentError);
}

}  // namespace
}  // namespace tiht
