// SPDX-License-Identifier: Apache-2.0
#include "tiht/formats.hpp"

namespace tiht {

std::string_view to_string(Format f) {
    switch (f) {
        case Format::Hosvd: return "hosvd";
        case Format::TT: return "tt";
        case Format::HT: return "ht";
    }
    return "?";
}

Format parse_format(std::string_view s) {
    if (s == "hosvd") return Format::Hosvd;
    if (s == "tt") return Format::TT;
    if (s == "ht") return Format::HT;
    throw ArgumentError("unknown format '" + std::string(s) + "' (expected hosvd, tt or ht)");
}

namespace {

RankTuple fit_ranks(const RankTuple& r, Index needed, std::string_view what) {
    if (r.size() == needed) return r;
    if (!r.empty() && r.is_uniform()) return RankTuple::uniform(needed, r[0]);
    throw ArgumentError(std::string(what) + " ranks need " + std::to_string(needed) + " entries, got " +
                        std::to_string(r.size()));
}

DimensionTree default_tree(Format f, Index d) {
    return f == Format::TT ? DimensionTree::linear(d) : DimensionTree::balanced(d);
}

}  // namespace

LowRankModel::LowRankModel(Format format, Shape shape, const RankTuple& ranks)
    : LowRankModel(format, shape, ranks, default_tree(format, shape.order())) {}

LowRankModel::LowRankModel(Format format, Shape shape, const RankTuple& ranks, DimensionTree tree)
    : format_(format), shape_(std::move(shape)), tree_(std::move(tree)) {
    const Index d = shape_.order();
    switch (format_) {
        case Format::Hosvd:
            ranks_ = fit_ranks(ranks, d, "HOSVD");
            break;
        case Format::TT:
            if (d < 2) throw ArgumentError("TT format needs order at least 2");
            ranks_ = fit_ranks(ranks, d - 1, "TT");
            break;
        case Format::HT:
            if (tree_.order() != d) throw ArgumentError("dimension tree order does not match shape");
            if (d < 2) throw ArgumentError("HT format needs order at least 2");
            ranks_ = RankTuple(resolve_ht_ranks(tree_, fit_ranks(ranks, tree_.node_count(), "HT")));
            break;
    }
}

template <Scalar T>
Decomposition<T> truncate(const Tensor<T>& x, const LowRankModel& model) {
    if (x.shape() != model.shape()) throw ArgumentError("tensor shape does not match the low-rank model");
    switch (model.format()) {
        case Format::Hosvd: return hosvd_truncate(x, model.ranks());
        case Format::TT: return tt_truncate(x, model.ranks());
        case Format::HT: return ht_truncate(x, model.tree(), model.ranks());
    }
    throw ArgumentError("unknown format");
}

template <Scalar T>
Tensor<T> reconstruct(const Decomposition<T>& d) {
    return std::visit([](const auto& dec) { return reconstruct(dec); }, d);
}

template <Scalar T>
Tensor<T> truncate_dense(const Tensor<T>& x, const LowRankModel& model) {
    return reconstruct(truncate(x, model));
}

template <Scalar T>
RankTuple rank_of(const Tensor<T>& x, Format format, const DimensionTree* tree) {
    switch (format) {
        case Format::Hosvd: return hosvd_rank(x);
        case Format::TT: return tt_rank(x);
        case Format::HT: return ht_rank(x, tree ? *tree : DimensionTree::balanced(x.order()));
    }
    throw ArgumentError("unknown format");
}

#define TIHT_INSTANTIATE(T)                                                          \
    template Decomposition<T> truncate(const Tensor<T>&, const LowRankModel&);       \
    template Tensor<T> reconstruct(const Decomposition<T>&);                         \
    template Tensor<T> truncate_dense(const Tensor<T>&, const LowRankModel&);        \
    template RankTuple rank_of(const Tensor<T>&, Format, const DimensionTree*);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
