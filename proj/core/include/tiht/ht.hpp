// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "tiht/dimension_tree.hpp"
#include "tiht/ranks.hpp"
#include "tiht/tensor.hpp"

namespace tiht {

// Hierarchical Tucker. frames[k] is the n_k x r_k basis of mode k. An interior
// node t with sons t1, t2 stores a transfer tensor of shape r_t x r_t1 x r_t2
// (empty for leaves); the root has r_t = 1.
template <Scalar T>
struct HTDecomposition {
    DimensionTree tree;
    std::vector<Matrix<T>> frames;
    std::vector<Tensor<T>> transfers;

    Shape shape() const;
    RankTuple ranks() const;  // per node id
};

// Per-node ranks for a tree: either one entry per node (the root entry is
// ignored) or a single entry applied everywhere. The root rank is always 1.
std::vector<Index> resolve_ht_ranks(const DimensionTree& tree, const RankTuple& r);

// Leaves-to-root truncation.
template <Scalar T>
HTDecomposition<T> ht_truncate(const Tensor<T>& x, const DimensionTree& tree, const RankTuple& r);

template <Scalar T>
Tensor<T> reconstruct(const HTDecomposition<T>& h);

// Orthonormal frames and orthonormal {1,2}-flattenings of every non-root
// transfer tensor; the root absorbs the remaining factors.
template <Scalar T>
HTDecomposition<T> ht_right_orthogonalize(const HTDecomposition<T>& h);

// Rank of the node matricization for every node id (root reported as 1).
template <Scalar T>
RankTuple ht_rank(const Tensor<T>& x, const DimensionTree& tree);

}  // namespace tiht
