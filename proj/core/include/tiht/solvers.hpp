// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "tiht/formats.hpp"
#include "tiht/measurements.hpp"

namespace tiht {

enum class Variant { CTIHT, NTIHT };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

// Subspace onto which the normalized step projects the gradient.
//   Product: the product of the per-matricization projectors (build_projector).
//   Tangent: the tangent space of the HOSVD rank-r set at the iterate,
//            Z x_all P + sum_k Z x_k (I - P_k) x_{j != k} P_j. HOSVD only.
enum class StepSubspace { Product, Tangent };

std::string_view to_string(StepSubspace s);
StepSubspace parse_step_subspace(std::string_view s);

template <Scalar T>
struct SolverConfig {
    Variant variant = Variant::NTIHT;
    LowRankModel model;
    int max_iters = 5000;
    double conv_tol = 1e-4;
    std::optional<Tensor<T>> initial;  // zero when absent
    bool keep_iterates = false;
    StepSubspace step_subspace = StepSubspace::Product;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double residual = 0.0;   // |y - A(X_j)|
    double step_norm = 0.0;  // |X_{j+1} - X_j|
    double mu = 1.0;
    double eps_ratio = std::numeric_limits<double>::quiet_NaN();  // |Y_j - X_{j+1}| / |Y_j - X_ref|
    bool mu_fallback = false;
};

template <Scalar T>
struct RecoveryResult {
    Tensor<T> estimate;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    std::vector<IterationRecord> trace;
    std::vector<Tensor<T>> iterates;  // X_1, X_2, ... when requested
};

// Orthogonal projector used by the normalized step size. It is a sequence of
// projections, each onto span(U) acting on the rows of the matricization over
// a contiguous mode range.
template <Scalar T>
class Projector {
public:
    struct Step {
        Index first;
        Index last;
        Matrix<T> basis;
    };

    explicit Projector(std::vector<Step> steps, StepSubspace kind = StepSubspace::Product)
        : steps_(std::move(steps)), kind_(kind) {}

    Tensor<T> operator()(const Tensor<T>& z) const;
    const std::vector<Step>& steps() const { return steps_; }
    StepSubspace kind() const { return kind_; }

private:
    std::vector<Step> steps_;
    StepSubspace kind_;
};

// Projector built from the top left singular vectors of the format's
// matricizations of x: the unfoldings (HOSVD), the leading-mode groups
// {0..i} (TT) or the non-root tree nodes, leaves first (HT). Rank-deficient
// matricizations get their basis completed with orthonormal singular vectors.
template <Scalar T>
Projector<T> build_projector(const LowRankModel& model, const Tensor<T>& x);

// Tangent-space projector of the HOSVD rank-r set at x.
template <Scalar T>
Projector<T> build_tangent_projector(const LowRankModel& model, const Tensor<T>& x);

constexpr double ctiht_step_size() { return 1.0; }

struct StepSize {
    double mu = 1.0;
    bool fallback = false;  // zero denominator, mu set to 1
};

// mu = |M(A*(y - A x))|^2 / |A(M(A*(y - A x)))|^2
template <Scalar T>
StepSize ntiht_step_size(const MeasurementOperator<T>& a, const Tensor<T>& x, const Vector<T>& y,
                         const Projector<T>& projector);

template <Scalar T>
RecoveryResult<T> tiht_run(const MeasurementOperator<T>& a, const Vector<T>& y, const SolverConfig<T>& cfg,
                           const Tensor<T>* reference = nullptr);

// eps_ratio - 1 per iteration; NaN where no reference was available.
std::vector<double> monitor_eps_condition(const std::vector<IterationRecord>& trace);

// Columns: iteration, residual, step_norm, mu, eps_ratio.
void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& trace);

// Success thresholds on |X_true - X_est|.
constexpr double kSuccessThreshold = 1e-3;
constexpr double kCompletionSuccessThreshold = 2.5e-3;
double default_success_threshold(EnsembleKind kind);

}  // namespace tiht
