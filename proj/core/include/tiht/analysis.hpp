// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>

#include "tiht/formats.hpp"
#include "tiht/measurements.hpp"
#include "tiht/solvers.hpp"

namespace tiht {

// All logarithms below are natural and every unspecified absolute constant
// is taken as 1.

// Monte-Carlo lower bound on the restricted isometry constant: the largest
// | |A X|^2 - 1 | over random unit-norm tensors of the model's rank.
struct TripEstimate {
    double delta_hat = 0.0;
    int samples = 0;
    Format format = Format::Hosvd;
    RankTuple rank;
    std::vector<double> deviations;  // per sample, in seed order
};

template <Scalar T>
TripEstimate trip_estimate(const MeasurementOperator<T>& a, const LowRankModel& model, int n_samples,
                           std::uint64_t seed);

struct SampleBound {
    double dof_term = 0.0;  // format-dependent degrees-of-freedom term
    double bound = 0.0;
};

// delta^-2 * max(dof, log(1/fail_prob)) with
//   HOSVD: (r^d + d n r) log d
//   TT/HT: ((d-1) r^3 + d n r) log(d r)
SampleBound sample_complexity(Format f, Index d, Index n, Index r, double delta, double fail_prob);

// L = delta^-1 (1 + eta) log^2(n^d); bound = L * max(L, f) with
//   HOSVD: f = (r^d + d n r) log d
//   TT/HT: f = (d r^3 + d n r) log(d r)
struct FourierSampleBound {
    double log_term = 0.0;
    double f_term = 0.0;
    double bound = 0.0;
};
FourierSampleBound fourier_sample_complexity(Format f, Index d, Index n, Index r, double delta, double eta);

// Logarithm of the covering-number bound of the unit-norm rank-r set:
//   HOSVD: (r^d + d n r) log(3 (d + 1) / eps)
//   HT:    (sum over interior t of r_t r_t1 r_t2 + d n r) log(3 (2d - 1) sqrt(r) / eps), balanced tree
//   TT:    the HT bound on the linear tree
// with every node rank equal to r (the root included).
double covering_bound(Format f, Index d, Index n, Index r, double eps);

struct ConvergenceConstants {
    Variant variant = Variant::CTIHT;
    double a = 0.0;
    double delta_of_a = 0.0;
    double eps_of_a = 0.0;
    double b_of_a = 0.0;
    double horizon = 0.0;          // (1 - a + b) / (1 - a)
    bool trip_condition_met = false;  // delta3r < delta_of_a
};

ConvergenceConstants convergence_constants(Variant v, double a, double delta3r, double opnorm);

// Per-step contraction factor bounding |X_{j+1} - X| / |X_j - X| for a given
// restricted isometry constant, eps and operator norm.
double contraction_factor(Variant v, double delta3r, double eps, double opnorm);

// Exact scalar counts with all ranks r:
//   HOSVD: r^d + d n r
//   TT:    sum_k r_{k-1} n r_k, r_0 = r_d = 1
//   HT:    sum over interior t of r_t r_t1 r_t2 + d n r, the root counted at
//          rank r (balanced tree unless given)
Index storage_count(Format f, Index d, Index n, Index r, const DimensionTree* tree = nullptr);

nlohmann::json to_json(const TripEstimate& t);
nlohmann::json to_json(const ConvergenceConstants& c);

}  // namespace tiht
