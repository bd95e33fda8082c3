// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tiht/tensor.hpp"

namespace tiht {

// Singular values at or below max(rows, cols) * eps * sigma_max count as zero.
double rank_tolerance(Index rows, Index cols, double sigma_max);

template <Scalar T>
Eigen::VectorXd singular_values(const Matrix<T>& m);

template <Scalar T>
Index numerical_rank(const Matrix<T>& m);

template <Scalar T>
struct LeftSvd {
    Matrix<T> u;        // rows x min(rows, cols), sign-normalized
    Eigen::VectorXd s;  // descending
};

template <Scalar T>
LeftSvd<T> left_svd(const Matrix<T>& m);

// Top-k left singular vectors (k clamped to min(rows, cols)). Each column is
// rotated so that its largest-magnitude entry is real and nonnegative. Columns
// past the numerical rank are still orthonormal, completing the basis. Well
// separated spectra go through the Gram eigenproblem, the rest through a
// Jacobi SVD.
template <Scalar T>
Matrix<T> leading_left_singular_vectors(const Matrix<T>& m, Index k);

template <Scalar T>
struct ThinQr {
    Matrix<T> q;
    Matrix<T> r;
};

// Thin QR normalized so that diag(R) is real and nonnegative.
template <Scalar T>
ThinQr<T> thin_qr(const Matrix<T>& m);

}  // namespace tiht
