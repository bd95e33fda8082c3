// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tiht/formats.hpp"
#include "tiht/measurements.hpp"
#include "tiht/solvers.hpp"

namespace tiht {

struct ExperimentSpec {
    Shape shape;
    RankTuple rank;
    Format format = Format::Hosvd;
    std::optional<DimensionTree> tree;  // HT only; balanced when absent
    EnsembleKind ensemble = EnsembleKind::Gaussian;
    Variant variant = Variant::NTIHT;
    StepSubspace step_subspace = StepSubspace::Product;
    std::vector<int> grid;                  // measurement percentages
    int trials = 50;
    std::optional<double> threshold;        // per-ensemble default when absent
    std::uint64_t seed = 0;
    int max_iters = 5000;
    double conv_tol = 1e-4;

    LowRankModel model() const;
    double success_threshold() const;
    void validate() const;
    // "gaussian-hosvd"
    std::string type() const;
};

struct TrialOutcome {
    bool success = false;
    bool converged = false;
    bool diverged = false;
    int iterations = 0;
    double error = 0.0;  // |X_true - X_est|
};

struct PhaseCell {
    int nbar = 0;
    Index m = 0;
    int successes = 0;
    int trials = 0;
    double mean_iters = 0.0;
    double mean_error = 0.0;

    double success_rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
    bool operator==(const PhaseCell&) const = default;
};

// One emitted table row.
struct ResultRow {
    std::string type;
    Shape shape;
    RankTuple rank;
    Variant variant = Variant::NTIHT;
    PhaseCell cell;

    bool operator==(const ResultRow&) const = default;
};

struct PhaseDiagram {
    std::vector<PhaseCell> cells;   // ascending nbar
    std::optional<int> nbar_all;    // smallest grid value with every trial successful
    std::optional<int> nbar_none;   // largest grid value with no successful trial

    std::vector<ResultRow> rows(const ExperimentSpec& spec) const;
};

// ceil(N * nbar / 100)
Index measurements_for(const Shape& shape, int nbar);

// Deterministic in (spec.seed, nbar, trial) alone, so any trial can be replayed.
TrialOutcome run_trial(const ExperimentSpec& spec, int nbar, int trial);

struct TrialReplay {
    TrialOutcome outcome;
    std::vector<IterationRecord> trace;  // eps_ratio measured against the true tensor
};

// The same trial as run_trial, keeping the iteration trace.
TrialReplay replay_trial(const ExperimentSpec& spec, int nbar, int trial);

// Runs every (grid value, trial) pair on the worker pool.
PhaseDiagram run_phase_diagram(const ExperimentSpec& spec);

std::optional<int> minimal_full_success(const std::vector<PhaseCell>& cells);
std::optional<int> maximal_zero_success(const std::vector<PhaseCell>& cells);

// "3,5,8", "3:10" (step 1) or "5:50:5"; pieces may be combined with commas.
std::vector<int> parse_grid(std::string_view text);
// Step 1 up to 30, step 5 above.
std::vector<int> default_grid();

enum class ResultFormat { Csv, Json };
ResultFormat parse_result_format(std::string_view s);

// Rows sorted by (variant, nbar); columns type, shape, rank, variant, nbar, m,
// successes, trials, mean_iters, mean_error.
void emit_results(std::ostream& os, std::vector<ResultRow> rows, ResultFormat fmt);
void emit_results(const std::filesystem::path& path, std::vector<ResultRow> rows, ResultFormat fmt);
std::vector<ResultRow> parse_results(std::istream& is, ResultFormat fmt);

}  // namespace tiht
