// SPDX-License-Identifier: Apache-2.0
#include "tiht/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace tiht {

std::string_view to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::Gaussian: return "gaussian";
        case EnsembleKind::Fourier: return "fourier";
        case EnsembleKind::Completion: return "completion";
    }
    return "?";
}

EnsembleKind parse_ensemble(std::string_view s) {
    if (s == "gaussian") return EnsembleKind::Gaussian;
    if (s == "fourier") return EnsembleKind::Fourier;
    if (s == "completion") return EnsembleKind::Completion;
    throw ArgumentError("unknown ensemble '" + std::string(s) + "' (expected gaussian, fourier or completion)");
}

template <Scalar T>
void MeasurementOperator<T>::check_input(const Tensor<T>& x) const {
    if (x.shape() != shape()) {
        throw ArgumentError("measurement operator expects shape " + shape().to_string() + ", got " +
                            x.shape().to_string());
    }
}

template <Scalar T>
void MeasurementOperator<T>::check_input(const Vector<T>& y) const {
    if (y.size() != rows()) {
        throw ArgumentError("measurement vector has length " + std::to_string(y.size()) + ", expected " +
                            std::to_string(rows()));
    }
}

std::vector<Index> sample_without_replacement(Index n, Index m, std::uint64_t seed) {
    if (m < 1 || m > n) {
        throw ArgumentError("cannot sample " + std::to_string(m) + " distinct entries out of " + std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    std::vector<Index> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), Index{0});
    // Partial Fisher-Yates: the first m slots become a uniform m-subset.
    for (Index i = 0; i < m; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    pool.resize(static_cast<std::size_t>(m));
    std::sort(pool.begin(), pool.end());
    return pool;
}

// Gaussian ----------------------------------------------------------------

template <Scalar T>
GaussianEnsemble<T>::GaussianEnsemble(const Shape& shape, std::shared_ptr<const Eigen::MatrixXd> matrix)
    : shape_(shape), matrix_(std::move(matrix)) {}

template <Scalar T>
GaussianEnsemble<T>::GaussianEnsemble(const Shape& shape, Index m, std::uint64_t seed) : shape_(shape) {
    if (m < 1) throw ArgumentError("Gaussian ensemble needs at least one measurement");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(m)));
    auto a = std::make_shared<Eigen::MatrixXd>(m, shape.size());
    for (Index j = 0; j < a->cols(); ++j)
        for (Index i = 0; i < m; ++i) (*a)(i, j) = normal(rng);
    matrix_ = std::move(a);
}

template <Scalar T>
GaussianEnsemble<T> GaussianEnsemble<T>::from_matrix(const Shape& shape, Eigen::MatrixXd matrix) {
    if (matrix.cols() != shape.size() || matrix.rows() < 1) {
        throw ArgumentError("measurement matrix must have N = " + std::to_string(shape.size()) + " columns");
    }
    return GaussianEnsemble(shape, std::make_shared<const Eigen::MatrixXd>(std::move(matrix)));
}

template <Scalar T>
Vector<T> GaussianEnsemble<T>::apply(const Tensor<T>& x) const {
    this->check_input(x);
    if constexpr (std::is_same_v<T, double>) {
        return *matrix_ * x.vec();
    } else {
        using Parts = Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<2>>;
        const auto* raw = reinterpret_cast<const double*>(x.data().data());
        const Eigen::VectorXd re = *matrix_ * Parts(raw, x.size());
        const Eigen::VectorXd im = *matrix_ * Parts(raw + 1, x.size());
        Vector<T> y(rows());
        for (Index i = 0; i < y.size(); ++i) y(i) = Complex(re(i), im(i));
        return y;
    }
}

template <Scalar T>
Tensor<T> GaussianEnsemble<T>::adjoint(const Vector<T>& y) const {
    this->check_input(y);
    Tensor<T> x(shape_);
    if constexpr (std::is_same_v<T, double>) {
        x.vec().noalias() = matrix_->transpose() * y;
    } else {
        const Eigen::VectorXd re = matrix_->transpose() * y.real().eval();
        const Eigen::VectorXd im = matrix_->transpose() * y.imag().eval();
        for (Index i = 0; i < x.size(); ++i) x[i] = Complex(re(i), im(i));
    }
    return x;
}

// Completion --------------------------------------------------------------

template <Scalar T>
CompletionOperator<T>::CompletionOperator(const Shape& shape, std::vector<Index> samples)
    : shape_(shape), samples_(std::move(samples)) {
    if (samples_.empty()) throw ArgumentError("completion operator needs at least one sample");
    std::vector<Index> sorted = samples_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= shape.size()) {
        throw ArgumentError("completion samples must be distinct offsets inside the tensor");
    }
    scale_ = std::sqrt(static_cast<double>(shape.size()) / static_cast<double>(samples_.size()));
}

template <Scalar T>
CompletionOperator<T>::CompletionOperator(const Shape& shape, Index m, std::uint64_t seed)
    : CompletionOperator(shape, sample_without_replacement(shape.size(), m, seed)) {}

template <Scalar T>
Vector<T> CompletionOperator<T>::apply(const Tensor<T>& x) const {
    this->check_input(x);
    Vector<T> y(rows());
    for (Index j = 0; j < rows(); ++j) y(j) = scale_ * x[samples_[static_cast<std::size_t>(j)]];
    return y;
}

template <Scalar T>
Tensor<T> CompletionOperator<T>::adjoint(const Vector<T>& y) const {
    this->check_input(y);
    Tensor<T> x(shape_);
    for (Index j = 0; j < rows(); ++j) x[samples_[static_cast<std::size_t>(j)]] = scale_ * y(j);
    return x;
}

// Drawing and persistence -------------------------------------------------

nlohmann::json EnsembleSpec::to_json() const {
    return {{"kind", std::string(to_string(kind))}, {"shape", shape.dims()}, {"m", m}, {"seed", seed}};
}

EnsembleSpec EnsembleSpec::from_json(const nlohmann::json& j) {
    try {
        EnsembleSpec s;
        s.kind = parse_ensemble(j.at("kind").get<std::string>());
        s.shape = Shape(j.at("shape").get<std::vector<Index>>());
        s.m = j.at("m").get<Index>();
        s.seed = j.at("seed").get<std::uint64_t>();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("malformed ensemble record: ") + e.what());
    }
}

template <Scalar T>
std::shared_ptr<const MeasurementOperator<T>> draw(EnsembleKind kind, const Shape& shape, Index m, std::uint64_t seed) {
    switch (kind) {
        case EnsembleKind::Gaussian: return std::make_shared<GaussianEnsemble<T>>(shape, m, seed);
        case EnsembleKind::Completion: return std::make_shared<CompletionOperator<T>>(shape, m, seed);
        case EnsembleKind::Fourier:
            if constexpr (std::is_same_v<T, Complex>) {
                return std::make_shared<FourierEnsemble>(shape, m, seed);
            } else {
                throw ArgumentError("the Fourier ensemble produces complex measurements; use the complex field");
            }
    }
    throw ArgumentError("unknown ensemble kind");
}

template <Scalar T>
double operator_norm(const MeasurementOperator<T>& a, int iters, std::uint64_t seed) {
    if (iters < 1) throw ArgumentError("operator_norm needs at least one iteration");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Tensor<T> v(a.shape());
    for (auto& e : v.data()) {
        if constexpr (std::is_same_v<T, double>) {
            e = normal(rng);
        } else {
            const double re = normal(rng);
            e = Complex(re, normal(rng));
        }
    }
    v *= T(1.0 / frobenius_norm(v));
    for (int it = 0; it < iters; ++it) {
        Tensor<T> w = a.adjoint(a.apply(v));
        const double nw = frobenius_norm(w);
        if (nw == 0.0) return 0.0;
        v = std::move(w);
        v *= T(1.0 / nw);
    }
    return a.apply(v).norm();
}

#define TIHT_INSTANTIATE(T)                                                                              \
    template class MeasurementOperator<T>;                                                               \
    template class GaussianEnsemble<T>;                                                                  \
    template class CompletionOperator<T>;                                                                \
    template std::shared_ptr<const MeasurementOperator<T>> draw<T>(EnsembleKind, const Shape&, Index, std::uint64_t); \
    template double operator_norm(const MeasurementOperator<T>&, int, std::uint64_t);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
