// SPDX-License-Identifier: Apache-2.0
#include "tiht/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "tiht/linalg.hpp"

namespace tiht {

std::string_view to_string(Variant v) { return v == Variant::CTIHT ? "ctiht" : "ntiht"; }

Variant parse_variant(std::string_view s) {
    if (s == "ctiht") return Variant::CTIHT;
    if (s == "ntiht") return Variant::NTIHT;
    throw ArgumentError("unknown variant '" + std::string(s) + "' (expected ctiht or ntiht)");
}

std::string_view to_string(StepSubspace s) { return s == StepSubspace::Product ? "product" : "tangent"; }

StepSubspace parse_step_subspace(std::string_view s) {
    if (s == "product") return StepSubspace::Product;
    if (s == "tangent") return StepSubspace::Tangent;
    throw ArgumentError("unknown step subspace '" + std::string(s) + "' (expected product or tangent)");
}

double default_success_threshold(EnsembleKind kind) {
    return kind == EnsembleKind::Completion ? kCompletionSuccessThreshold : kSuccessThreshold;
}

template <Scalar T>
void SolverConfig<T>::validate() const {
    if (max_iters < 1) throw ArgumentError("max_iters must be at least 1");
    if (!(conv_tol > 0.0)) throw ArgumentError("conv_tol must be positive");
    if (initial && initial->shape() != model.shape()) throw ArgumentError("initial iterate has the wrong shape");
    if (step_subspace == StepSubspace::Tangent && model.format() != Format::Hosvd) {
        throw ArgumentError("the tangent step subspace is only available for the HOSVD format");
    }
}

namespace {

// Product with a over the merged contiguous modes [first, last).
template <Scalar T>
Tensor<T> range_product(const Tensor<T>& z, const Matrix<T>& a, Index first, Index last) {
    Index left = 1;
    Index mid = 1;
    for (Index k = 0; k < first; ++k) left *= z.shape()[k];
    for (Index k = first; k < last; ++k) mid *= z.shape()[k];
    const Index right = z.size() / (left * mid);
    Tensor<T> out(Shape{left, a.rows(), right});
    if (left == 1) {
        Eigen::Map<const Matrix<T>> zs(z.data().data(), mid, right);
        Eigen::Map<Matrix<T>> os(out.data().data(), a.rows(), right);
        os.noalias() = a * zs;
        return out;
    }
    for (Index r = 0; r < right; ++r) {
        Eigen::Map<const Matrix<T>> zs(z.data().data() + r * left * mid, left, mid);
        Eigen::Map<Matrix<T>> os(out.data().data() + r * left * a.rows(), left, a.rows());
        os.noalias() = zs * a.transpose();
    }
    return out;
}

}  // namespace

// Projects the rows of the [first, last) matricization onto span(basis).
template <Scalar T>
Tensor<T> project_range(const Tensor<T>& z, const typename Projector<T>::Step& s) {
    Tensor<T> reduced = range_product(z, Matrix<T>(s.basis.adjoint()), s.first, s.last);
    Tensor<T> full = range_product(reduced, s.basis, 1, 2);
    return Tensor<T>(z.shape(), std::vector<T>(full.data().begin(), full.data().end()));
}

template <Scalar T>
Tensor<T> Projector<T>::operator()(const Tensor<T>& z) const {
    if (kind_ == StepSubspace::Product) {
        Tensor<T> out = z;
        for (const auto& s : steps_) out = project_range(out, s);
        return out;
    }
    // Tangent space: core part plus, for each mode k, the complement of P_k
    // combined with the projectors of all other modes.
    Tensor<T> core = z;
    for (const auto& s : steps_) core = project_range(core, s);
    Tensor<T> out = core;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        Tensor<T> part = z;
        for (std::size_t j = 0; j < steps_.size(); ++j)
            if (j != k) part = project_range(part, steps_[j]);
        Tensor<T> inside = project_range(part, steps_[k]);
        part -= inside;
        out += part;
    }
    return out;
}

template <Scalar T>
Projector<T> build_projector(const LowRankModel& model, const Tensor<T>& x) {
    if (x.shape() != model.shape()) throw ArgumentError("iterate shape does not match the low-rank model");
    if (frobenius_norm(x) == 0.0) throw DegenerateInputError("build_projector: iterate is zero");
    std::vector<typename Projector<T>::Step> steps;
    auto add = [&](Index first, Index last, Index rank) {
        Matrix<T> m = matricize(x, ModeSet::range(first, last));
        steps.push_back({first, last, leading_left_singular_vectors(m, rank)});
    };
    const Index d = x.order();
    switch (model.format()) {
        case Format::Hosvd:
            for (Index k = 0; k < d; ++k) add(k, k + 1, model.ranks()[k]);
            break;
        case Format::TT:
            for (Index i = 0; i + 1 < d; ++i) add(0, i + 1, model.ranks()[i]);
            break;
        case Format::HT: {
            const auto& tree = model.tree();
            for (Index k = 0; k < d; ++k) add(k, k + 1, model.ranks()[tree.leaf_of_mode(k)]);
            for (int id : tree.interior_bottom_up()) {
                if (id == DimensionTree::root()) continue;
                add(tree.node(id).first, tree.node(id).last, model.ranks()[id]);
            }
            break;
        }
    }
    return Projector<T>(std::move(steps));
}

template <Scalar T>
Projector<T> build_tangent_projector(const LowRankModel& model, const Tensor<T>& x) {
    if (model.format() != Format::Hosvd) throw ArgumentError("tangent projector needs the HOSVD format");
    return Projector<T>(build_projector(model, x).steps(), StepSubspace::Tangent);
}

template <Scalar T>
StepSize ntiht_step_size(const MeasurementOperator<T>& a, const Tensor<T>& x, const Vector<T>& y,
                         const Projector<T>& projector) {
    const Tensor<T> g = a.adjoint(y - a.apply(x));
    const Tensor<T> mg = projector(g);
    const double num = frobenius_norm(mg);
    const double den = a.apply(mg).norm();
    if (den == 0.0 || !std::isfinite(den)) return {1.0, true};
    return {(num * num) / (den * den), false};
}

template <Scalar T>
RecoveryResult<T> tiht_run(const MeasurementOperator<T>& a, const Vector<T>& y, const SolverConfig<T>& cfg,
                           const Tensor<T>* reference) {
    cfg.validate();
    if (a.shape() != cfg.model.shape()) throw ArgumentError("ensemble shape does not match the low-rank model");
    if (y.size() != a.rows()) throw ArgumentError("measurement vector length does not match the ensemble");
    if (reference && reference->shape() != a.shape()) throw ArgumentError("reference tensor has the wrong shape");

    RecoveryResult<T> result;
    Tensor<T> x = cfg.initial ? *cfg.initial : Tensor<T>(a.shape());
    for (int j = 0; j < cfg.max_iters; ++j) {
        IterationRecord rec;
        rec.iteration = j;
        const Vector<T> r = y - a.apply(x);
        rec.residual = r.norm();
        const Tensor<T> g = a.adjoint(r);

        if (cfg.variant == Variant::NTIHT) {
            // From a zero iterate the gradient supplies the subspaces.
            const bool zero_iterate = frobenius_norm(x) == 0.0;
            const Tensor<T>& basis_source = zero_iterate ? g : x;
            if (frobenius_norm(basis_source) == 0.0) {
                rec.mu_fallback = true;
            } else {
                const Projector<T> m = cfg.step_subspace == StepSubspace::Tangent
                                           ? build_tangent_projector(cfg.model, basis_source)
                                           : build_projector(cfg.model, basis_source);
                const Tensor<T> mg = m(g);
                const double num = frobenius_norm(mg);
                const double den = a.apply(mg).norm();
                if (den == 0.0 || !std::isfinite(den)) {
                    rec.mu_fallback = true;
                } else {
                    rec.mu = (num * num) / (den * den);
                }
            }
        }

        Tensor<T> step_point = x;
        step_point.vec() += T(rec.mu) * g.vec();
        if (!all_finite(step_point)) {
            result.diverged = true;
            break;
        }
        Tensor<T> next = truncate_dense(step_point, cfg.model);
        rec.step_norm = (next.vec() - x.vec()).norm();
        if (reference) {
            const double den = (step_point.vec() - reference->vec()).norm();
            rec.eps_ratio = (step_point.vec() - next.vec()).norm() / den;
        }
        result.trace.push_back(rec);
        result.iterations = j + 1;
        if (!std::isfinite(rec.step_norm)) {
            result.diverged = true;
            break;
        }
        x = std::move(next);
        if (cfg.keep_iterates) result.iterates.push_back(x);
        if (rec.step_norm < cfg.conv_tol) {
            result.converged = true;
            break;
        }
    }
    result.estimate = std::move(x);
    return result;
}

std::vector<double> monitor_eps_condition(const std::vector<IterationRecord>& trace) {
    std::vector<double> out;
    out.reserve(trace.size());
    for (const auto& rec : trace) out.push_back(rec.eps_ratio - 1.0);
    return out;
}

void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace) {
    os << "iteration,residual,step_norm,mu,eps_ratio\n";
    char line[160];
    for (const auto& rec : trace) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g\n", rec.iteration, rec.residual, rec.step_norm,
                      rec.mu, rec.eps_ratio);
        os << line;
    }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<IterationRecord>& trace) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    write_trace_csv(os, trace);
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

#define TIHT_INSTANTIATE(T)                                                                                    \
    template struct SolverConfig<T>;                                                                           \
    template class Projector<T>;                                                                               \
    template Projector<T> build_projector(const LowRankModel&, const Tensor<T>&);                              \
    template Projector<T> build_tangent_projector(const LowRankModel&, const Tensor<T>&);                      \
    template StepSize ntiht_step_size(const MeasurementOperator<T>&, const Tensor<T>&, const Vector<T>&,       \
                                      const Projector<T>&);                                                    \
    template RecoveryResult<T> tiht_run(const MeasurementOperator<T>&, const Vector<T>&, const SolverConfig<T>&, \
                                        const Tensor<T>*);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
