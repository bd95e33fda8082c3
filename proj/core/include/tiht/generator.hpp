// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "tiht/formats.hpp"

namespace tiht {

// Tucker tensor with an N(0,1) core of shape r and factors given by the first
// r_k left singular vectors of n_k x n_k Gaussian matrices. Its HOSVD rank is
// r almost surely.
Tensor<double> generate_test_tensor(const Shape& shape, const RankTuple& r, std::uint64_t seed);

// Random tensor of the model's format and ranks: the generator above for
// HOSVD, N(0,1) cores for TT, orthonormal random frames with N(0,1) transfer
// tensors for HT.
Tensor<double> generate_low_rank(const LowRankModel& model, std::uint64_t seed);

}  // namespace tiht
