// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "tiht/tensor.hpp"

namespace tiht {

enum class EnsembleKind { Gaussian, Fourier, Completion };

std::string_view to_string(EnsembleKind k);
EnsembleKind parse_ensemble(std::string_view s);

// Linear map from tensors of a fixed shape to length-m vectors.
template <Scalar T>
class MeasurementOperator {
public:
    virtual ~MeasurementOperator() = default;

    virtual EnsembleKind kind() const = 0;
    virtual const Shape& shape() const = 0;
    virtual Index rows() const = 0;

    virtual Vector<T> apply(const Tensor<T>& x) const = 0;
    // Exact adjoint: <apply(x), y> = <x, adjoint(y)>.
    virtual Tensor<T> adjoint(const Vector<T>& y) const = 0;

protected:
    void check_input(const Tensor<T>& x) const;
    void check_input(const Vector<T>& y) const;
};

// Dense m x N matrix with N(0, 1/m) entries acting on vec(X). The matrix is
// real for both fields and shared read-only between copies.
template <Scalar T>
class GaussianEnsemble final : public MeasurementOperator<T> {
public:
    GaussianEnsemble(const Shape& shape, Index m, std::uint64_t seed);
    // Explicit matrix, for tests (identity, scaled copies).
    static GaussianEnsemble from_matrix(const Shape& shape, Eigen::MatrixXd matrix);

    EnsembleKind kind() const override { return EnsembleKind::Gaussian; }
    const Shape& shape() const override { return shape_; }
    Index rows() const override { return matrix_->rows(); }
    const Eigen::MatrixXd& matrix() const { return *matrix_; }

    Vector<T> apply(const Tensor<T>& x) const override;
    Tensor<T> adjoint(const Vector<T>& y) const override;

private:
    GaussianEnsemble(const Shape& shape, std::shared_ptr<const Eigen::MatrixXd> matrix);

    Shape shape_;
    std::shared_ptr<const Eigen::MatrixXd> matrix_;
};

// A = m^{-1/2} R_Omega F D: random signs D, the unnormalized multidimensional
// DFT F (exponent -2 pi i j k / n per mode, indices from 0) and restriction to
// m distinct sampled entries. Complex field only.
class FourierEnsemble final : public MeasurementOperator<Complex> {
public:
    FourierEnsemble(const Shape& shape, Index m, std::uint64_t seed);
    FourierEnsemble(const Shape& shape, std::vector<double> signs, std::vector<Index> samples);
    ~FourierEnsemble() override;
    FourierEnsemble(const FourierEnsemble&) = delete;
    FourierEnsemble& operator=(const FourierEnsemble&) = delete;

    EnsembleKind kind() const override { return EnsembleKind::Fourier; }
    const Shape& shape() const override { return shape_; }
    Index rows() const override { return static_cast<Index>(samples_.size()); }
    const std::vector<double>& signs() const { return signs_; }
    // Offsets of the sampled DFT coefficients, ascending.
    const std::vector<Index>& samples() const { return samples_; }

    Vector<Complex> apply(const Tensor<Complex>& x) const override;
    Tensor<Complex> adjoint(const Vector<Complex>& y) const override;

private:
    struct Plans;

    Shape shape_;
    std::vector<double> signs_;
    std::vector<Index> samples_;
    std::unique_ptr<Plans> plans_;
};

// A(X)_j = sqrt(N/m) X(omega_j) for m distinct sampled offsets.
template <Scalar T>
class CompletionOperator final : public MeasurementOperator<T> {
public:
    CompletionOperator(const Shape& shape, Index m, std::uint64_t seed);
    CompletionOperator(const Shape& shape, std::vector<Index> samples);

    EnsembleKind kind() const override { return EnsembleKind::Completion; }
    const Shape& shape() const override { return shape_; }
    Index rows() const override { return static_cast<Index>(samples_.size()); }
    const std::vector<Index>& samples() const { return samples_; }
    double scale() const { return scale_; }

    Vector<T> apply(const Tensor<T>& x) const override;
    Tensor<T> adjoint(const Vector<T>& y) const override;

private:
    Shape shape_;
    std::vector<Index> samples_;
    double scale_;
};

// Canonical persisted form; ensembles are re-drawn from it.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::Gaussian;
    Shape shape;
    Index m = 1;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static EnsembleSpec from_json(const nlohmann::json& j);
    bool operator==(const EnsembleSpec&) const = default;
};

template <Scalar T>
std::shared_ptr<const MeasurementOperator<T>> draw(EnsembleKind kind, const Shape& shape, Index m, std::uint64_t seed);

template <Scalar T>
std::shared_ptr<const MeasurementOperator<T>> draw(const EnsembleSpec& spec) {
    return draw<T>(spec.kind, spec.shape, spec.m, spec.seed);
}

// Power iteration on A* A from a seeded random start; returns |A v| for the
// final unit vector v, a lower estimate of the largest singular value.
template <Scalar T>
double operator_norm(const MeasurementOperator<T>& a, int iters, std::uint64_t seed = 0);

// m distinct offsets out of [0, n), uniformly without replacement, ascending.
std::vector<Index> sample_without_replacement(Index n, Index m, std::uint64_t seed);

}  // namespace tiht
