// SPDX-License-Identifier: Apache-2.0
#include "tiht/hosvd.hpp"

#include <algorithm>

#include "tiht/linalg.hpp"

namespace tiht {

template <Scalar T>
Shape HosvdDecomposition<T>::shape() const {
    std::vector<Index> dims;
    for (const auto& u : factors) dims.push_back(u.rows());
    return Shape(dims);
}

namespace {

template <Scalar T>
HosvdDecomposition<T> project(const Tensor<T>& x, std::vector<Matrix<T>> factors) {
    Tensor<T> core = x;
    for (Index k = 0; k < x.order(); ++k) {
        core = mode_product(core, Matrix<T>(factors[static_cast<std::size_t>(k)].adjoint()), k);
    }
    return {std::move(core), std::move(factors)};
}

template <Scalar T>
void require_nonzero(const Tensor<T>& x, const char* what) {
    if (frobenius_norm(x) == 0.0) throw DegenerateInputError(std::string(what) + ": input tensor is zero");
}

}  // namespace

template <Scalar T>
HosvdDecomposition<T> hosvd_decompose(const Tensor<T>& x) {
    require_nonzero(x, "hosvd_decompose");
    std::vector<Matrix<T>> factors;
    for (Index k = 0; k < x.order(); ++k) {
        auto m = unfold(x, k);
        auto svd = left_svd(m);
        const Index rank = (svd.s.array() > rank_tolerance(m.rows(), m.cols(), svd.s(0))).count();
        factors.push_back(svd.u.leftCols(std::max<Index>(rank, 1)));
    }
    return project(x, std::move(factors));
}

template <Scalar T>
HosvdDecomposition<T> hosvd_truncate(const Tensor<T>& x, const RankTuple& r) {
    if (r.size() != x.order()) {
        throw ArgumentError("HOSVD rank tuple has " + std::to_string(r.size()) + " entries, tensor order is " +
                            std::to_string(x.order()));
    }
    std::vector<Matrix<T>> factors;
    for (Index k = 0; k < x.order(); ++k) factors.push_back(leading_left_singular_vectors(unfold(x, k), r[k]));
    return project(x, std::move(factors));
}

template <Scalar T>
Tensor<T> reconstruct(const HosvdDecomposition<T>& h) {
    if (static_cast<Index>(h.factors.size()) != h.core.order()) {
        throw ArgumentError("HOSVD decomposition: factor count does not match core order");
    }
    Tensor<T> x = h.core;
    for (Index k = 0; k < x.order(); ++k) x = mode_product(x, h.factors[static_cast<std::size_t>(k)], k);
    return x;
}

template <Scalar T>
RankTuple hosvd_rank(const Tensor<T>& x) {
    require_nonzero(x, "hosvd_rank");
    std::vector<Index> ranks;
    for (Index k = 0; k < x.order(); ++k) ranks.push_back(numerical_rank(unfold(x, k)));
    return RankTuple(ranks);
}

#define TIHT_INSTANTIATE(T)                                                              \
    template struct HosvdDecomposition<T>;                                               \
    template HosvdDecomposition<T> hosvd_decompose(const Tensor<T>&);                    \
    template HosvdDecomposition<T> hosvd_truncate(const Tensor<T>&, const RankTuple&);   \
    template Tensor<T> reconstruct(const HosvdDecomposition<T>&);                        \
    template RankTuple hosvd_rank(const Tensor<T>&);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
