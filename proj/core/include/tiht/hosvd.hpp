// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tiht/ranks.hpp"
#include "tiht/tensor.hpp"

namespace tiht {

// X = core x_1 U_1 x_2 ... x_d U_d with orthonormal factor columns.
template <Scalar T>
struct HosvdDecomposition {
    Tensor<T> core;
    std::vector<Matrix<T>> factors;

    Shape shape() const;
    RankTuple ranks() const { return RankTuple(core.shape().dims()); }
};

// Full decomposition at the numerical ranks of the unfoldings.
template <Scalar T>
HosvdDecomposition<T> hosvd_decompose(const Tensor<T>& x);

// Keeps the top r_k left singular vectors of each unfolding. Ranks larger than
// an unfolding allows are clamped.
template <Scalar T>
HosvdDecomposition<T> hosvd_truncate(const Tensor<T>& x, const RankTuple& r);

template <Scalar T>
Tensor<T> reconstruct(const HosvdDecomposition<T>& h);

// Ranks of the mode-k unfoldings.
template <Scalar T>
RankTuple hosvd_rank(const Tensor<T>& x);

}  // namespace tiht
