// SPDX-License-Identifier: Apache-2.0
#include "tiht/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "tiht/generator.hpp"
#include "tiht/parallel.hpp"

namespace tiht {

namespace {

void require_positive(Index d, Index n, Index r) {
    if (d < 1 || n < 1 || r < 1) throw ArgumentError("d, n and r must be positive");
}

void require_open_unit(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) throw ArgumentError(std::string(name) + " must lie in (0, 1)");
}

double dn_r(Index d, Index n, Index r) { return static_cast<double>(d * n * r); }

Index interior_product_sum(const DimensionTree& tree, Index r) {
    Index total = 0;
    for (const auto& node : tree.nodes())
        if (!node.is_leaf()) total += r * r * r;
    return total;
}

}  // namespace

template <Scalar T>
TripEstimate trip_estimate(const MeasurementOperator<T>& a, const LowRankModel& model, int n_samples,
                           std::uint64_t seed) {
    if (n_samples < 1) throw ArgumentError("trip_estimate needs at least one sample");
    if (a.shape() != model.shape()) throw ArgumentError("ensemble shape does not match the low-rank model");
    std::vector<double> dev(static_cast<std::size_t>(n_samples));
    parallel_for(dev.size(), [&](std::size_t s) {
        Tensor<double> x = generate_low_rank(model, derive_seed(seed, {s}));
        x *= 1.0 / frobenius_norm(x);
        double energy = 0.0;
        if constexpr (std::is_same_v<T, double>) {
            energy = a.apply(x).squaredNorm();
        } else {
            energy = a.apply(to_complex(x)).squaredNorm();
        }
        dev[s] = std::abs(energy - 1.0);
    });
    TripEstimate out;
    out.delta_hat = *std::max_element(dev.begin(), dev.end());
    out.samples = n_samples;
    out.format = model.format();
    out.rank = model.ranks();
    out.deviations = std::move(dev);
    return out;
}

SampleBound sample_complexity(Format f, Index d, Index n, Index r, double delta, double fail_prob) {
    require_positive(d, n, r);
    require_open_unit(delta, "delta");
    require_open_unit(fail_prob, "fail_prob");
    const double rd = static_cast<double>(r);
    SampleBound out;
    if (f == Format::Hosvd) {
        out.dof_term = (std::pow(rd, static_cast<double>(d)) + dn_r(d, n, r)) * std::log(static_cast<double>(d));
    } else {
        out.dof_term = (static_cast<double>(d - 1) * rd * rd * rd + dn_r(d, n, r)) * std::log(static_cast<double>(d * r));
    }
    out.bound = std::max(out.dof_term, std::log(1.0 / fail_prob)) / (delta * delta);
    return out;
}

FourierSampleBound fourier_sample_complexity(Format f, Index d, Index n, Index r, double delta, double eta) {
    require_positive(d, n, r);
    require_open_unit(delta, "delta");
    if (!(eta > 0.0)) throw ArgumentError("eta must be positive");
    const double rd = static_cast<double>(r);
    const double log_size = static_cast<double>(d) * std::log(static_cast<double>(n));
    FourierSampleBound out;
    out.log_term = (1.0 + eta) * log_size * log_size / delta;
    if (f == Format::Hosvd) {
        out.f_term = (std::pow(rd, static_cast<double>(d)) + dn_r(d, n, r)) * std::log(static_cast<double>(d));
    } else {
        out.f_term = (static_cast<double>(d) * rd * rd * rd + dn_r(d, n, r)) * std::log(static_cast<double>(d * r));
    }
    out.bound = out.log_term * std::max(out.log_term, out.f_term);
    return out;
}

double covering_bound(Format f, Index d, Index n, Index r, double eps) {
    require_positive(d, n, r);
    if (!(eps > 0.0 && eps <= 1.0)) throw ArgumentError("eps must lie in (0, 1]");
    const double rd = static_cast<double>(r);
    if (f == Format::Hosvd) {
        const double exponent = std::pow(rd, static_cast<double>(d)) + dn_r(d, n, r);
        return exponent * std::log(3.0 * static_cast<double>(d + 1) / eps);
    }
    if (d < 2) throw ArgumentError("TT and HT covering bounds need d >= 2");
    const DimensionTree tree = f == Format::TT ? DimensionTree::linear(d) : DimensionTree::balanced(d);
    const double exponent = static_cast<double>(interior_product_sum(tree, r)) + dn_r(d, n, r);
    return exponent * std::log(3.0 * static_cast<double>(2 * d - 1) * std::sqrt(rd) / eps);
}

double contraction_factor(Variant v, double delta3r, double eps, double opnorm) {
    const double tail = std::sqrt(4.0 * eps + 2.0 * eps * eps);
    if (v == Variant::CTIHT) {
        const double kappa = 1.0 + std::sqrt(1.0 + delta3r) * opnorm;
        return 2.0 * delta3r + tail * kappa;
    }
    const double nu = 1.0 + std::sqrt(1.0 + delta3r) / (1.0 - delta3r) * opnorm;
    return 2.0 * ((1.0 + delta3r) / (1.0 - delta3r) - 1.0) + tail * nu;
}

ConvergenceConstants convergence_constants(Variant v, double a, double delta3r, double opnorm) {
    require_open_unit(a, "a");
    if (!(delta3r >= 0.0 && delta3r < 1.0)) throw ArgumentError("delta3r must lie in [0, 1)");
    if (!(opnorm > 0.0)) throw ArgumentError("operator norm must be positive");
    ConvergenceConstants c;
    c.variant = v;
    c.a = a;
    const double root = std::sqrt(1.0 + delta3r);
    if (v == Variant::CTIHT) {
        c.delta_of_a = a / 4.0;
        const double k = 1.0 + root * opnorm;
        c.eps_of_a = a * a / (17.0 * k * k);
        c.b_of_a = 2.0 * root + std::sqrt(4.0 * c.eps_of_a + 2.0 * c.eps_of_a * c.eps_of_a) * opnorm;
    } else {
        c.delta_of_a = a / (a + 8.0);
        const double q = 1.0 - delta3r;
        const double k = q + root * opnorm;
        c.eps_of_a = a * a * q * q / (17.0 * k * k);
        c.b_of_a = (2.0 * root + std::sqrt(4.0 * c.eps_of_a + 2.0 * c.eps_of_a * c.eps_of_a) * opnorm) / q;
    }
    c.horizon = (1.0 - a + c.b_of_a) / (1.0 - a);
    c.trip_condition_met = delta3r < c.delta_of_a;
    return c;
}

Index storage_count(Format f, Index d, Index n, Index r, const DimensionTree* tree) {
    require_positive(d, n, r);
    switch (f) {
        case Format::Hosvd: {
            Index core = 1;
            for (Index k = 0; k < d; ++k) core *= r;
            return core + d * n * r;
        }
        case Format::TT: {
            Index total = 0;
            for (Index k = 0; k < d; ++k) {
                const Index left = k == 0 ? 1 : r;
                const Index right = k + 1 == d ? 1 : r;
                total += left * n * right;
            }
            return total;
        }
        case Format::HT: {
            const DimensionTree t = tree ? *tree : DimensionTree::balanced(d);
            if (t.order() != d) throw ArgumentError("tree order does not match d");
            return interior_product_sum(t, r) + d * n * r;
        }
    }
    throw ArgumentError("unknown format");
}

nlohmann::json to_json(const TripEstimate& t) {
    return {{"format", std::string(to_string(t.format))},
            {"rank", t.rank.values()},
            {"samples", t.samples},
            {"delta_hat", t.delta_hat}};
}

nlohmann::json to_json(const ConvergenceConstants& c) {
    return {{"variant", std::string(to_string(c.variant))},
            {"a", c.a},
            {"delta_of_a", c.delta_of_a},
            {"eps_of_a", c.eps_of_a},
            {"b_of_a", c.b_of_a},
            {"horizon", c.horizon},
            {"trip_condition_met", c.trip_condition_met}};
}

template TripEstimate trip_estimate(const MeasurementOperator<double>&, const LowRankModel&, int, std::uint64_t);
template TripEstimate trip_estimate(const MeasurementOperator<Complex>&, const LowRankModel&, int, std::uint64_t);

}  // namespace tiht
