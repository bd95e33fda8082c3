// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "tiht/linalg.hpp"
#include "tiht/tensor.hpp"

namespace tiht {
namespace {

using testing::random_matrix;
using testing::random_tensor;

TEST(Shape, ParsesBothSeparators) {
    EXPECT_EQ(Shape::parse("2x3x4"), (Shape{2, 3, 4}));
    EXPECT_EQ(Shape::parse("6,10,15"), (Shape{6, 10, 15}));
    EXPECT_EQ(Shape::parse("7").order(), 1);
    EXPECT_EQ((Shape{2, 3, 4}).size(), 24);
    EXPECT_EQ((Shape{2, 3, 4}).to_string(), "2x3x4");
}

TEST(Shape, RejectsInvalidExtents) {
    EXPECT_THROW(Shape(std::vector<Index>{}), ArgumentError);
    EXPECT_THROW((Shape{2, 0, 3}), ArgumentError);
    EXPECT_THROW(Shape::parse("2x"), ArgumentError);
    EXPECT_THROW(Shape::parse("2xa"), ArgumentError);
    EXPECT_THROW((Shape{Index{1} << 40, Index{1} << 40}), ArgumentError);
}

TEST(Shape, ColexicographicStrides) {
    EXPECT_EQ((Shape{2, 3, 4}).strides(), (std::vector<Index>{1, 2, 6}));
}

TEST(Tensor, OffsetIsFirstIndexFastest) {
    Tensor<double> x(Shape{2, 3, 4});
    EXPECT_EQ(x.offset(std::vector<Index>{1, 2, 3}), 1 + 2 * 2 + 3 * 6);
    x({1, 0, 0}) = 5.0;
    EXPECT_EQ(x[1], 5.0);
    EXPECT_THROW(x({2, 0, 0}), ArgumentError);
    EXPECT_THROW(x({0, 0}), ArgumentError);
}

TEST(Tensor, DataLengthMustMatchShape) {
    EXPECT_THROW(Tensor<double>(Shape{2, 2}, std::vector<double>(3)), ArgumentError);
}

TEST(Tensor, FrobeniusNormZeroOnlyForZero) {
    Tensor<double> x(Shape{3, 3});
    EXPECT_EQ(frobenius_norm(x), 0.0);
    x[4] = -2.0;
    EXPECT_EQ(frobenius_norm(x), 2.0);
}

TEST(ModeSet, Validation) {
    EXPECT_THROW(ModeSet(std::vector<Index>{}), ArgumentError);
    EXPECT_THROW((ModeSet{1, 1}), ArgumentError);
    EXPECT_THROW((ModeSet{2, 1}), ArgumentError);
    EXPECT_THROW((ModeSet{-1}), ArgumentError);
    EXPECT_EQ((ModeSet{0, 2}).complement(4), (std::vector<Index>{1, 3}));
}

TEST(Matricize, ShapeArithmetic) {
    std::mt19937_64 rng(1);
    const auto x = random_tensor<double>(Shape{2, 3, 4}, rng);
    const auto m = matricize(x, ModeSet{0});
    EXPECT_EQ(m.rows(), 2);
    EXPECT_EQ(m.cols(), 12);
    const auto m2 = matricize(x, ModeSet{0, 2});
    EXPECT_EQ(m2.rows(), 8);
    EXPECT_EQ(m2.cols(), 3);
}

TEST(Matricize, HandEnumeratedEntries) {
    // X(i, j, k) = 100 i + 10 j + k with 1-based labels on a 2x2x2 tensor.
    Tensor<double> x(Shape{2, 2, 2});
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index k = 0; k < 2; ++k) x({i, j, k}) = 100.0 * (i + 1) + 10.0 * (j + 1) + (k + 1);
    const auto m = matricize(x, ModeSet{0});
    // Columns run over (j, k) with j fastest.
    EXPECT_EQ(m(0, 0), 111.0);
    EXPECT_EQ(m(0, 1), 121.0);
    EXPECT_EQ(m(0, 2), 112.0);
    EXPECT_EQ(m(0, 3), 122.0);
    EXPECT_EQ(m(1, 0), 211.0);
    EXPECT_EQ(m(1, 3), 222.0);

    const auto m1 = matricize(x, ModeSet{1});
    EXPECT_EQ(m1(0, 0), 111.0);
    EXPECT_EQ(m1(0, 1), 211.0);
    EXPECT_EQ(m1(0, 2), 112.0);
    EXPECT_EQ(m1(1, 3), 222.0);

    const auto m02 = matricize(x, ModeSet{0, 2});
    // Rows run over (i, k) with i fastest; the single column index is j.
    EXPECT_EQ(m02(0, 0), 111.0);
    EXPECT_EQ(m02(1, 0), 211.0);
    EXPECT_EQ(m02(2, 0), 112.0);
    EXPECT_EQ(m02(3, 1), 222.0);
}

TEST(Matricize, RoundtripIsBitExactForEveryModeSet) {
    std::mt19937_64 rng(2);
    const Shape shape{2, 3, 4, 2};
    const auto x = random_tensor<double>(shape, rng);
    const auto xc = random_tensor<Complex>(shape, rng);
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<Index> modes;
        for (Index k = 0; k < 4; ++k)
            if (mask & (1u << k)) modes.push_back(k);
        const ModeSet s(modes);
        EXPECT_EQ(tensorize(matricize(x, s), s, shape), x) << "mask " << mask;
        EXPECT_EQ(tensorize(matricize(xc, s), s, shape), xc) << "mask " << mask;
    }
}

TEST(Tensorize, ZeroMatrixGivesZeroTensor) {
    const Shape shape{2, 3};
    const auto x = tensorize(Matrix<double>::Zero(2, 3).eval(), ModeSet{0}, shape);
    EXPECT_EQ(frobenius_norm(x), 0.0);
}

TEST(Tensorize, RejectsMismatchedMatrix) {
    EXPECT_THROW(tensorize(Matrix<double>::Zero(3, 3).eval(), ModeSet{0}, Shape{2, 3}), ArgumentError);
    EXPECT_THROW(matricize(Tensor<double>(Shape{2, 3}), ModeSet{2}), ArgumentError);
    EXPECT_THROW(ModeSet::range(1, 1), ArgumentError);
}

TEST(ModeProduct, IdentityLeavesTensorUnchanged) {
    std::mt19937_64 rng(3);
    const auto x = random_tensor<double>(Shape{3, 4, 5}, rng);
    for (Index k = 0; k < 3; ++k) {
        EXPECT_EQ(mode_product(x, Matrix<double>::Identity(x.shape()[k], x.shape()[k]).eval(), k), x);
    }
}

TEST(ModeProduct, OnesSumAlongMode) {
    Tensor<double> x(Shape{2, 2, 2});
    for (auto& v : x.data()) v = 1.0;
    Matrix<double> a(1, 2);
    a << 1.0, 1.0;
    const auto y = mode_product(x, a, 0);
    EXPECT_EQ(y.shape(), (Shape{1, 2, 2}));
    for (double v : y.data()) EXPECT_EQ(v, 2.0);
}

TEST(ModeProduct, RejectsColumnMismatch) {
    Tensor<double> x(Shape{2, 3});
    EXPECT_THROW(mode_product(x, Matrix<double>::Zero(2, 2).eval(), 1), ArgumentError);
    EXPECT_THROW(mode_product(x, Matrix<double>::Zero(2, 2).eval(), 2), ArgumentError);
}

TEST(ModeProduct, MatchesUnfoldingProduct) {
    std::mt19937_64 rng(4);
    const auto x = random_tensor<Complex>(Shape{3, 4, 5}, rng);
    for (Index k = 0; k < 3; ++k) {
        const auto a = random_matrix<Complex>(6, x.shape()[k], rng);
        const Matrix<Complex> lhs = unfold(mode_product(x, a, k), k);
        const Matrix<Complex> rhs = a * unfold(x, k);
        EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
    }
}

TEST(ModeProduct, UnitaryFactorPreservesNorm) {
    std::mt19937_64 rng(5);
    const auto x = random_tensor<double>(Shape{3, 4, 5}, rng);
    const auto q = thin_qr(random_matrix<double>(4, 4, rng)).q;
    EXPECT_NEAR(frobenius_norm(mode_product(x, q, 1)), frobenius_norm(x), 1e-12 * frobenius_norm(x));
}

TEST(InnerProduct, HandValues) {
    Tensor<double> x(Shape{2, 2}, {1.0, 3.0, 2.0, 4.0});
    Tensor<double> y(Shape{2, 2}, {1.0, 0.0, 0.0, 1.0});
    EXPECT_EQ(inner_product(x, y), 5.0);
    EXPECT_DOUBLE_EQ(inner_product(x, x), 30.0);
    EXPECT_DOUBLE_EQ(std::sqrt(inner_product(x, x)), frobenius_norm(x));

    Tensor<double> e0(Shape{2, 2});
    Tensor<double> e1(Shape{2, 2});
    e0[0] = 1.0;
    e1[3] = 1.0;
    EXPECT_EQ(inner_product(e0, e1), 0.0);
    EXPECT_THROW(inner_product(x, Tensor<double>(Shape{4})), ArgumentError);
}

TEST(InnerProduct, ConjugatesFirstArgument) {
    Tensor<Complex> x(Shape{1}, {Complex(0.0, 1.0)});
    Tensor<Complex> y(Shape{1}, {Complex(1.0, 0.0)});
    EXPECT_EQ(inner_product(x, y), Complex(0.0, -1.0));
    EXPECT_EQ(inner_product(y, x), Complex(0.0, 1.0));
}

TEST(Field, NamesRoundtrip) {
    EXPECT_EQ(parse_field(to_string(Field::Real)), Field::Real);
    EXPECT_EQ(parse_field(to_string(Field::Complex)), Field::Complex);
    EXPECT_THROW(parse_field("quaternion"), ArgumentError);
    EXPECT_EQ(field_of<Complex>(), Field::Complex);
}

TEST(Field, RealComplexConversions) {
    std::mt19937_64 rng(6);
    const auto x = random_tensor<double>(Shape{2, 3}, rng);
    EXPECT_EQ(real_part(to_complex(x)), x);
}

// 1000 random instances of the two composition identities.
class ModeProductIdentities : public ::testing::TestWithParam<int> {};

TEST_P(ModeProductIdentities, CommuteAcrossModesAndComposeWithinMode) {
    std::mt19937_64 rng(1000 + static_cast<unsigned>(GetParam()));
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_tensor<double>(Shape{3, 4, 5}, rng);
        const Index j = trial % 3;
        const Index k = (j + 1 + trial % 2) % 3;
        const auto a = random_matrix<double>(2 + trial % 3, x.shape()[j], rng);
        const auto b = random_matrix<double>(3, x.shape()[k], rng);
        const auto lhs = mode_product(mode_product(x, a, j), b, k);
        const auto rhs = mode_product(mode_product(x, b, k), a, j);
        EXPECT_LE(testing::relative_error(lhs, rhs), 1e-12);

        const auto c = random_matrix<double>(4, b.rows(), rng);
        const auto nested = mode_product(mode_product(x, b, k), c, k);
        const auto composed = mode_product(x, Matrix<double>(c * b), k);
        EXPECT_LE(testing::relative_error(nested, composed), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ModeProductIdentities, ::testing::Range(0, 10));

}  // namespace
}  // namespace tiht
