// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <variant>

#include "tiht/dimension_tree.hpp"
#include "tiht/hosvd.hpp"
#include "tiht/ht.hpp"
#include "tiht/ranks.hpp"
#include "tiht/tt.hpp"

namespace tiht {

enum class Format { Hosvd, TT, HT };

std::string_view to_string(Format f);
Format parse_format(std::string_view s);

// A format, a tensor shape and target ranks resolved to the format's layout.
// A rank tuple whose entries are all equal is broadcast to the needed length.
class LowRankModel {
public:
    LowRankModel(Format format, Shape shape, const RankTuple& ranks);
    LowRankModel(Format format, Shape shape, const RankTuple& ranks, DimensionTree tree);

    Format format() const { return format_; }
    const Shape& shape() const { return shape_; }
    const RankTuple& ranks() const { return ranks_; }
    // Balanced for HT, linear for TT, unused for HOSVD.
    const DimensionTree& tree() const { return tree_; }

private:
    Format format_;
    Shape shape_;
    RankTuple ranks_;
    DimensionTree tree_;
};

template <Scalar T>
using Decomposition = std::variant<HosvdDecomposition<T>, TTDecomposition<T>, HTDecomposition<T>>;

template <Scalar T>
Decomposition<T> truncate(const Tensor<T>& x, const LowRankModel& model);

template <Scalar T>
Tensor<T> reconstruct(const Decomposition<T>& d);

// Dense result of the truncation operator.
template <Scalar T>
Tensor<T> truncate_dense(const Tensor<T>& x, const LowRankModel& model);

// Numerical ranks of the format's matricizations. The tree is used for HT
// only; nullptr selects the balanced tree.
template <Scalar T>
RankTuple rank_of(const Tensor<T>& x, Format format, const DimensionTree* tree = nullptr);

}  // namespace tiht
