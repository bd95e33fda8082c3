// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "tiht/measurements.hpp"
#include "tiht/tensor.hpp"

namespace tiht::testing {

inline double normal(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

template <Scalar T>
T random_scalar(std::mt19937_64& rng) {
    if constexpr (std::is_same_v<T, double>) {
        return normal(rng);
    } else {
        const double re = normal(rng);
        return T(re, normal(rng));
    }
}

template <Scalar T>
Tensor<T> random_tensor(const Shape& shape, std::mt19937_64& rng) {
    Tensor<T> x(shape);
    for (auto& v : x.data()) v = random_scalar<T>(rng);
    return x;
}

template <Scalar T>
Matrix<T> random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    Matrix<T> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = random_scalar<T>(rng);
    return m;
}

template <Scalar T>
Vector<T> random_vector(Index n, std::mt19937_64& rng) {
    Vector<T> v(n);
    for (Index i = 0; i < n; ++i) v(i) = random_scalar<T>(rng);
    return v;
}

// Column j is apply(e_j): the matrix of the operator in the vec() basis.
template <Scalar T>
Matrix<T> dense_matrix(const MeasurementOperator<T>& a) {
    const Shape& shape = a.shape();
    Matrix<T> m(a.rows(), shape.size());
    for (Index j = 0; j < shape.size(); ++j) {
        Tensor<T> e(shape);
        e[j] = T(1);
        m.col(j) = a.apply(e);
    }
    return m;
}

// Rows of the unnormalized multidimensional DFT at the sampled offsets times
// diag(signs), scaled by 1/sqrt(m); built entry by entry from the definition.
inline Matrix<Complex> fourier_oracle(const Shape& shape, const std::vector<double>& signs,
                                      const std::vector<Index>& samples) {
    const Index n = shape.size();
    const Index m = static_cast<Index>(samples.size());
    const Index d = shape.order();
    Matrix<Complex> out(m, n);
    std::vector<Index> k(static_cast<std::size_t>(d));
    std::vector<Index> j(static_cast<std::size_t>(d));
    for (Index row = 0; row < m; ++row) {
        Index rest = samples[static_cast<std::size_t>(row)];
        for (Index q = 0; q < d; ++q) {
            k[static_cast<std::size_t>(q)] = rest % shape[q];
            rest /= shape[q];
        }
        for (Index col = 0; col < n; ++col) {
            Index c = col;
            double phase = 0.0;
            for (Index q = 0; q < d; ++q) {
                j[static_cast<std::size_t>(q)] = c % shape[q];
                c /= shape[q];
                phase += static_cast<double>(j[static_cast<std::size_t>(q)] * k[static_cast<std::size_t>(q)]) /
                         static_cast<double>(shape[q]);
            }
            out(row, col) = std::polar(1.0, -2.0 * std::numbers::pi * phase) * signs[static_cast<std::size_t>(col)] /
                            std::sqrt(static_cast<double>(m));
        }
    }
    return out;
}

template <Scalar T>
double relative_error(const Tensor<T>& a, const Tensor<T>& b) {
    const double scale = std::max(frobenius_norm(b), 1e-300);
    return (a.vec() - b.vec()).norm() / scale;
}

}  // namespace tiht::testing
