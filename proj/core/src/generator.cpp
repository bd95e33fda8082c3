// SPDX-License-Identifier: Apache-2.0
#include "tiht/generator.hpp"

#include <random>

#include "tiht/linalg.hpp"

namespace tiht {

namespace {

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    return m;
}

Tensor<double> gaussian_tensor(const Shape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Tensor<double> t(shape);
    for (auto& e : t.data()) e = normal(rng);
    return t;
}

}  // namespace

Tensor<double> generate_test_tensor(const Shape& shape, const RankTuple& r, std::uint64_t seed) {
    if (r.size() != shape.order()) throw ArgumentError("rank tuple length must equal the tensor order");
    for (Index k = 0; k < shape.order(); ++k) {
        if (r[k] > shape[k]) {
            throw ArgumentError("rank " + std::to_string(r[k]) + " exceeds extent " + std::to_string(shape[k]) +
                                " in mode " + std::to_string(k));
        }
    }
    std::mt19937_64 rng(seed);
    HosvdDecomposition<double> h;
    h.core = gaussian_tensor(Shape(r.values()), rng);
    for (Index k = 0; k < shape.order(); ++k) {
        h.factors.push_back(leading_left_singular_vectors(gaussian_matrix(shape[k], shape[k], rng), r[k]));
    }
    return reconstruct(h);
}

Tensor<double> generate_low_rank(const LowRankModel& model, std::uint64_t seed) {
    const Shape& shape = model.shape();
    switch (model.format()) {
        case Format::Hosvd: {
            std::vector<Index> r;
            for (Index k = 0; k < shape.order(); ++k) r.push_back(std::min(model.ranks()[k], shape[k]));
            return generate_test_tensor(shape, RankTuple(r), seed);
        }
        case Format::TT: {
            std::mt19937_64 rng(seed);
            TTDecomposition<double> tt;
            Index r_prev = 1;
            for (Index k = 0; k < shape.order(); ++k) {
                const Index rk = k + 1 < shape.order() ? model.ranks()[k] : 1;
                tt.cores.push_back(gaussian_tensor(Shape{r_prev, shape[k], rk}, rng));
                r_prev = rk;
            }
            return reconstruct(tt);
        }
        case Format::HT: {
            std::mt19937_64 rng(seed);
            const auto& tree = model.tree();
            HTDecomposition<double> h;
            h.tree = tree;
            for (Index k = 0; k < shape.order(); ++k) {
                const Index rk = std::min(model.ranks()[tree.leaf_of_mode(k)], shape[k]);
                h.frames.push_back(thin_qr(Matrix<double>(gaussian_matrix(shape[k], rk, rng))).q);
            }
            h.transfers.resize(static_cast<std::size_t>(tree.node_count()));
            auto rank_of_node = [&](int id) {
                const auto& n = tree.node(id);
                return n.is_leaf() ? h.frames[static_cast<std::size_t>(n.first)].cols() : model.ranks()[id];
            };
            for (int id : tree.interior_bottom_up()) {
                const auto& n = tree.node(id);
                h.transfers[static_cast<std::size_t>(id)] =
                    gaussian_tensor(Shape{rank_of_node(id), rank_of_node(n.left), rank_of_node(n.right)}, rng);
            }
            return reconstruct(h);
        }
    }
    throw ArgumentError("unknown format");
}

}  // namespace tiht
