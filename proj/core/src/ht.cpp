// SPDX-License-Identifier: Apache-2.0
#include "tiht/ht.hpp"

#include <algorithm>

#include "tiht/linalg.hpp"

namespace tiht {

template <Scalar T>
Shape HTDecomposition<T>::shape() const {
    std::vector<Index> dims;
    for (const auto& f : frames) dims.push_back(f.rows());
    return Shape(dims);
}

template <Scalar T>
RankTuple HTDecomposition<T>::ranks() const {
    std::vector<Index> r(static_cast<std::size_t>(tree.node_count()));
    for (int id = 0; id < tree.node_count(); ++id) {
        const auto& n = tree.node(id);
        r[static_cast<std::size_t>(id)] = n.is_leaf() ? frames[static_cast<std::size_t>(n.first)].cols()
                                                      : transfers[static_cast<std::size_t>(id)].shape()[0];
    }
    return RankTuple(r);
}

std::vector<Index> resolve_ht_ranks(const DimensionTree& tree, const RankTuple& r) {
    std::vector<Index> out;
    if (r.size() == tree.node_count()) {
        out = r.values();
    } else if (r.size() == 1) {
        out.assign(static_cast<std::size_t>(tree.node_count()), r[0]);
    } else {
        throw ArgumentError("HT rank tuple needs one entry per tree node (" + std::to_string(tree.node_count()) +
                            ") or a single entry, got " + std::to_string(r.size()));
    }
    out[DimensionTree::root()] = 1;
    return out;
}

namespace {

template <Scalar T>
void require_tree_matches(const DimensionTree& tree, const Tensor<T>& x) {
    if (tree.order() != x.order()) {
        throw ArgumentError("dimension tree has " + std::to_string(tree.order()) + " modes, tensor has " +
                            std::to_string(x.order()));
    }
    if (tree.order() < 2) throw ArgumentError("HT format needs order at least 2");
}

// B(l, :, :) as an r1 x r2 view of a transfer tensor.
template <Scalar T>
auto transfer_slice(const Tensor<T>& b, Index l) {
    const Index rt = b.shape()[0];
    const Index r1 = b.shape()[1];
    const Index r2 = b.shape()[2];
    using Stride = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
    return Eigen::Map<const Matrix<T>, 0, Stride>(b.data().data() + l, r1, r2, Stride(rt * r1, rt));
}

template <Scalar T>
Matrix<T> node_basis(const HTDecomposition<T>& h, int id) {
    const auto& n = h.tree.node(id);
    if (n.is_leaf()) return h.frames[static_cast<std::size_t>(n.first)];
    const Matrix<T> u1 = node_basis(h, n.left);
    const Matrix<T> u2 = node_basis(h, n.right);
    const Tensor<T>& b = h.transfers[static_cast<std::size_t>(id)];
    if (b.order() != 3 || b.shape()[1] != u1.cols() || b.shape()[2] != u2.cols()) {
        throw ArgumentError("HT transfer tensor at node " + std::to_string(id) + " has inconsistent shape");
    }
    Matrix<T> out(u1.rows() * u2.rows(), b.shape()[0]);
    for (Index l = 0; l < b.shape()[0]; ++l) {
        Matrix<T> block = u1 * transfer_slice(b, l) * u2.transpose();
        out.col(l) = Eigen::Map<const Vector<T>>(block.data(), block.size());
    }
    return out;
}

}  // namespace

template <Scalar T>
HTDecomposition<T> ht_truncate(const Tensor<T>& x, const DimensionTree& tree, const RankTuple& r) {
    require_tree_matches(tree, x);
    const auto ranks = resolve_ht_ranks(tree, r);
    HTDecomposition<T> h;
    h.tree = tree;
    h.transfers.resize(static_cast<std::size_t>(tree.node_count()));

    Tensor<T> core = x;
    for (Index k = 0; k < x.order(); ++k) {
        const Index rk = ranks[static_cast<std::size_t>(tree.leaf_of_mode(k))];
        h.frames.push_back(leading_left_singular_vectors(unfold(x, k), rk));
        core = mode_product(core, Matrix<T>(h.frames.back().adjoint()), k);
    }

    // Node owning each remaining mode of the core, in mode order.
    std::vector<int> frontier;
    for (Index k = 0; k < x.order(); ++k) frontier.push_back(tree.leaf_of_mode(k));

    for (int id : tree.interior_bottom_up()) {
        const auto& n = tree.node(id);
        const auto pos = static_cast<Index>(std::find(frontier.begin(), frontier.end(), n.left) - frontier.begin());
        const Index r1 = core.shape()[pos];
        const Index r2 = core.shape()[pos + 1];
        if (id == DimensionTree::root()) {
            h.transfers[0] = Tensor<T>(Shape{1, r1, r2}, std::vector<T>(core.data().begin(), core.data().end()));
            break;
        }
        Matrix<T> m = matricize(core, ModeSet{pos, pos + 1});
        Matrix<T> u = leading_left_singular_vectors(m, ranks[static_cast<std::size_t>(id)]);
        const Index rt = u.cols();
        Matrix<T> ut = u.transpose();
        h.transfers[static_cast<std::size_t>(id)] = Tensor<T>(Shape{rt, r1, r2}, std::vector<T>(ut.data(), ut.data() + ut.size()));

        auto dims = core.shape().dims();
        dims[static_cast<std::size_t>(pos)] = rt;
        dims.erase(dims.begin() + pos + 1);
        Matrix<T> reduced = u.adjoint() * m;
        core = tensorize(reduced, ModeSet{pos}, Shape(dims));
        frontier[static_cast<std::size_t>(pos)] = id;
        frontier.erase(frontier.begin() + pos + 1);
    }
    return h;
}

template <Scalar T>
Tensor<T> reconstruct(const HTDecomposition<T>& h) {
    if (static_cast<Index>(h.frames.size()) != h.tree.order() ||
        static_cast<Index>(h.transfers.size()) != h.tree.node_count()) {
        throw ArgumentError("HT decomposition does not match its tree");
    }
    Matrix<T> root = node_basis(h, DimensionTree::root());
    if (root.cols() != 1) throw ArgumentError("HT root transfer tensor must have leading extent 1");
    return Tensor<T>(h.shape(), std::vector<T>(root.data(), root.data() + root.size()));
}

template <Scalar T>
HTDecomposition<T> ht_right_orthogonalize(const HTDecomposition<T>& h) {
    HTDecomposition<T> out = h;
    const auto& tree = out.tree;
    auto push_into_parent = [&](int child, const Matrix<T>& r) {
        const auto& n = tree.node(child);
        const int parent = n.parent;
        const Index mode = tree.node(parent).left == child ? 1 : 2;
        auto& b = out.transfers[static_cast<std::size_t>(parent)];
        b = mode_product(b, r, mode);
    };

    for (Index k = 0; k < tree.order(); ++k) {
        auto qr = thin_qr(out.frames[static_cast<std::size_t>(k)]);
        out.frames[static_cast<std::size_t>(k)] = std::move(qr.q);
        push_into_parent(tree.leaf_of_mode(k), qr.r);
    }
    for (int id : tree.interior_bottom_up()) {
        if (id == DimensionTree::root()) continue;
        auto& b = out.transfers[static_cast<std::size_t>(id)];
        auto qr = thin_qr(matricize(b, ModeSet{1, 2}));
        b = tensorize(qr.q, ModeSet{1, 2}, Shape{qr.q.cols(), b.shape()[1], b.shape()[2]});
        push_into_parent(id, qr.r);
    }
    return out;
}

template <Scalar T>
RankTuple ht_rank(const Tensor<T>& x, const DimensionTree& tree) {
    require_tree_matches(tree, x);
    if (frobenius_norm(x) == 0.0) throw DegenerateInputError("ht_rank: input tensor is zero");
    std::vector<Index> r(static_cast<std::size_t>(tree.node_count()), 1);
    for (int id = 1; id < tree.node_count(); ++id) r[static_cast<std::size_t>(id)] = numerical_rank(matricize(x, tree.modes(id)));
    return RankTuple(r);
}

#define TIHT_INSTANTIATE(T)                                                                          \
    template struct HTDecomposition<T>;                                                              \
    template HTDecomposition<T> ht_truncate(const Tensor<T>&, const DimensionTree&, const RankTuple&); \
    template Tensor<T> reconstruct(const HTDecomposition<T>&);                                       \
    template HTDecomposition<T> ht_right_orthogonalize(const HTDecomposition<T>&);                   \
    template RankTuple ht_rank(const Tensor<T>&, const DimensionTree&);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
