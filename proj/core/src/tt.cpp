// SPDX-License-Identifier: Apache-2.0
#include "tiht/tt.hpp"

#include "tiht/linalg.hpp"

namespace tiht {

template <Scalar T>
Shape TTDecomposition<T>::shape() const {
    std::vector<Index> dims;
    for (const auto& c : cores) dims.push_back(c.shape()[1]);
    return Shape(dims);
}

template <Scalar T>
RankTuple TTDecomposition<T>::ranks() const {
    std::vector<Index> r;
    for (std::size_t k = 0; k + 1 < cores.size(); ++k) r.push_back(cores[k].shape()[2]);
    return RankTuple(r);
}

template <Scalar T>
TTDecomposition<T> tt_truncate(const Tensor<T>& x, const RankTuple& r) {
    const Index d = x.order();
    if (d < 2) throw ArgumentError("TT format needs order at least 2");
    if (r.size() != d - 1) {
        throw ArgumentError("TT rank tuple has " + std::to_string(r.size()) + " entries, expected " +
                            std::to_string(d - 1));
    }
    TTDecomposition<T> out;
    // Remainder, laid out as r_prev x n_k x ... x n_d in colexicographic order.
    Matrix<T> rest = Eigen::Map<const Matrix<T>>(x.data().data(), 1, x.size());
    Index r_prev = 1;
    for (Index k = 0; k + 1 < d; ++k) {
        const Index rows = r_prev * x.shape()[k];
        const Index cols = rest.size() / rows;
        Eigen::Map<const Matrix<T>> m(rest.data(), rows, cols);
        Matrix<T> u = leading_left_singular_vectors(Matrix<T>(m), r[k]);
        const Index rk = u.cols();
        out.cores.emplace_back(Shape{r_prev, x.shape()[k], rk}, std::vector<T>(u.data(), u.data() + u.size()));
        rest = u.adjoint() * m;
        r_prev = rk;
    }
    out.cores.emplace_back(Shape{r_prev, x.shape()[d - 1], 1}, std::vector<T>(rest.data(), rest.data() + rest.size()));
    return out;
}

template <Scalar T>
Tensor<T> reconstruct(const TTDecomposition<T>& tt) {
    if (tt.cores.empty()) throw ArgumentError("TT decomposition has no cores");
    // Left partial product, (n_1 ... n_k) x r_k.
    Matrix<T> left = Matrix<T>::Ones(1, 1);
    for (const auto& core : tt.cores) {
        if (core.order() != 3 || core.shape()[0] != left.cols()) {
            throw ArgumentError("TT cores have inconsistent ranks");
        }
        const Index nk = core.shape()[1];
        const Index rk = core.shape()[2];
        Eigen::Map<const Matrix<T>> c(core.data().data(), core.shape()[0], nk * rk);
        Matrix<T> prod = left * c;
        left = Eigen::Map<Matrix<T>>(prod.data(), left.rows() * nk, rk);
    }
    if (left.cols() != 1) throw ArgumentError("last TT core must have trailing rank 1");
    return Tensor<T>(tt.shape(), std::vector<T>(left.data(), left.data() + left.size()));
}

template <Scalar T>
RankTuple tt_rank(const Tensor<T>& x) {
    if (frobenius_norm(x) == 0.0) throw DegenerateInputError("tt_rank: input tensor is zero");
    std::vector<Index> r;
    for (Index i = 1; i < x.order(); ++i) r.push_back(numerical_rank(matricize(x, ModeSet::range(0, i))));
    return RankTuple(r);
}

#define TIHT_INSTANTIATE(T)                                                    \
    template struct TTDecomposition<T>;                                        \
    template TTDecomposition<T> tt_truncate(const Tensor<T>&, const RankTuple&); \
    template Tensor<T> reconstruct(const TTDecomposition<T>&);                 \
    template RankTuple tt_rank(const Tensor<T>&);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
