// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tiht/ranks.hpp"
#include "tiht/tensor.hpp"

namespace tiht {

// Tensor train. Core k is stored as an r_{k-1} x n_k x r_k tensor with the
// boundary ranks r_0 = r_d = 1, so the first and last cores are 1 x n x r and
// r x n x 1.
template <Scalar T>
struct TTDecomposition {
    std::vector<Tensor<T>> cores;

    Shape shape() const;
    RankTuple ranks() const;  // r_1 .. r_{d-1}
};

// Successive truncated SVDs, left to right. r has d-1 entries.
template <Scalar T>
TTDecomposition<T> tt_truncate(const Tensor<T>& x, const RankTuple& r);

template <Scalar T>
Tensor<T> reconstruct(const TTDecomposition<T>& tt);

// r_i = rank of the {0..i-1} x {i..d-1} matricization, i = 1..d-1.
template <Scalar T>
RankTuple tt_rank(const Tensor<T>& x);

}  // namespace tiht
