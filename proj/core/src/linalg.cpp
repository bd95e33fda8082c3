// SPDX-License-Identifier: Apache-2.0
#include "tiht/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace tiht {

double rank_tolerance(Index rows, Index cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
}

template <Scalar T>
Eigen::VectorXd singular_values(const Matrix<T>& m) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<Matrix<T>> svd(m);
    return svd.singularValues();
}

template <Scalar T>
Index numerical_rank(const Matrix<T>& m) {
    auto s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double tol = rank_tolerance(m.rows(), m.cols(), s(0));
    return (s.array() > tol).count();
}

namespace {

template <Scalar T>
void normalize_signs(Matrix<T>& u) {
    for (Index j = 0; j < u.cols(); ++j) {
        Index pivot = 0;
        u.col(j).cwiseAbs().maxCoeff(&pivot);
        const T v = u(pivot, j);
        const double mag = std::abs(v);
        if (mag > 0.0) u.col(j) *= conj(v) / mag;
    }
}

// Below this ratio lambda_k / lambda_1 of the Gram spectrum the eigenvector
// route loses too many digits and the Jacobi SVD is used instead.
constexpr double kGramSpread = 1e-8;

// Top-k eigenvectors of the Gram matrix of a matrix with at most as many rows
// as columns, or an empty matrix when the spectrum is too spread out.
template <Scalar T>
Matrix<T> gram_leading_vectors(const Matrix<T>& m, Index k) {
    const Matrix<T> g = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix<T>> eig(g);
    if (eig.info() != Eigen::Success) return {};
    const Index n = g.rows();
    const double top = eig.eigenvalues()(n - 1);
    if (!(top > 0.0) || eig.eigenvalues()(n - k) < kGramSpread * top) return {};
    return eig.eigenvectors().rightCols(k).rowwise().reverse();
}

}  // namespace

template <Scalar T>
LeftSvd<T> left_svd(const Matrix<T>& m) {
    LeftSvd<T> out;
    if (m.size() == 0) {
        out.u.resize(m.rows(), 0);
        return out;
    }
    Eigen::JacobiSVD<Matrix<T>> svd(m, Eigen::ComputeThinU);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    normalize_signs(out.u);
    return out;
}

template <Scalar T>
Matrix<T> leading_left_singular_vectors(const Matrix<T>& m, Index k) {
    k = std::clamp<Index>(k, 0, std::min(m.rows(), m.cols()));
    if (k == 0) return Matrix<T>(m.rows(), 0);
    Matrix<T> u;
    if (m.rows() <= m.cols()) {
        u = gram_leading_vectors(m, k);
    } else {
        // Tall: the left singular vectors are Q times those of R.
        Eigen::HouseholderQR<Matrix<T>> qr(m);
        const Index q = m.cols();
        const Matrix<T> r = qr.matrixQR().topRows(q).template triangularView<Eigen::Upper>();
        Matrix<T> ur = gram_leading_vectors(r, k);
        if (ur.size() != 0) u = qr.householderQ() * (Matrix<T>::Identity(m.rows(), q) * ur);
    }
    if (u.size() == 0) return left_svd(m).u.leftCols(k);
    normalize_signs(u);
    return u;
}

template <Scalar T>
ThinQr<T> thin_qr(const Matrix<T>& m) {
    const Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<Matrix<T>> qr(m);
    ThinQr<T> out;
    out.q = qr.householderQ() * Matrix<T>::Identity(m.rows(), k);
    out.r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
    for (Index i = 0; i < k; ++i) {
        const T d = out.r(i, i);
        const double mag = std::abs(d);
        if (mag == 0.0) continue;
        const T phase = d / mag;
        out.q.col(i) *= phase;
        out.r.row(i) *= conj(phase);
    }
    return out;
}

template Eigen::VectorXd singular_values(const Matrix<double>&);
template Eigen::VectorXd singular_values(const Matrix<Complex>&);
template Index numerical_rank(const Matrix<double>&);
template Index numerical_rank(const Matrix<Complex>&);
template LeftSvd<double> left_svd(const Matrix<double>&);
template LeftSvd<Complex> left_svd(const Matrix<Complex>&);
template Matrix<double> leading_left_singular_vectors(const Matrix<double>&, Index);
template Matrix<Complex> leading_left_singular_vectors(const Matrix<Complex>&, Index);
template ThinQr<double> thin_qr(const Matrix<double>&);
template ThinQr<Complex> thin_qr(const Matrix<Complex>&);

}  // namespace tiht
