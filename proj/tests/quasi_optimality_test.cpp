// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "quasi_optimality.hpp"

namespace tiht {
namespace {

using testing::quasi_optimality;

TEST(QuasiOptimality, HosvdWithinSqrtD) {
    const auto rep = quasi_optimality(Format::Hosvd, Shape{6, 5, 4}, RankTuple{2, 2, 2}, 100, 501);
    EXPECT_EQ(rep.violations, 0) << "worst ratio " << rep.worst_ratio;
    EXPECT_EQ(rep.comparisons, 600);
}

TEST(QuasiOptimality, TTWithinSqrtDMinusOne) {
    const auto rep = quasi_optimality(Format::TT, Shape{4, 5, 3, 4}, RankTuple{2, 3, 2}, 100, 502);
    EXPECT_EQ(rep.violations, 0) << "worst ratio " << rep.worst_ratio;
}

TEST(QuasiOptimality, HTLeavesToRootWithinItsFactor) {
    const auto rep = quasi_optimality(Format::HT, Shape{4, 3, 4, 3}, RankTuple{2}, 100, 503);
    EXPECT_EQ(rep.violations, 0) << "worst ratio " << rep.worst_ratio;
}

TEST(QuasiOptimality, HooiNeverWorseThanTruncation) {
    std::mt19937_64 rng(504);
    for (int t = 0; t < 20; ++t) {
        const auto x = testing::random_tensor<double>(Shape{5, 5, 5}, rng);
        const RankTuple r{2, 2, 2};
        const double h = (x.vec() - reconstruct(hosvd_truncate(x, r)).vec()).norm();
        const double o = (x.vec() - testing::hooi(x, r).vec()).norm();
        EXPECT_LE(o, h * (1.0 + 1e-12));
    }
}

}  // namespace
}  // namespace tiht
