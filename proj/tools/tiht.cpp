// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tiht/analysis.hpp"
#include "tiht/experiments.hpp"
#include "tiht/generator.hpp"
#include "tiht/parallel.hpp"

namespace {

using namespace tiht;
using nlohmann::ordered_json;

constexpr int kArgumentExit = 2;

// Flags shared by the recover, phase and trip subcommands.
struct ProblemFlags {
    std::string shape = "10x10x10";
    std::string rank = "1,1,1";
    std::string format = "hosvd";
    std::string tree;  // HT only, path to a JSON tree
    std::string ensemble = "gaussian";
    std::string variant = "ntiht";
    std::string step_subspace = "product";
    std::uint64_t seed = 0;
    int max_iters = 5000;
    double conv_tol = 1e-4;
    std::optional<double> threshold;

    void add_model(CLI::App& app) {
        app.add_option("--shape", shape, "Tensor extents, e.g. 10x10x10")->capture_default_str();
        app.add_option("--rank", rank, "Target ranks, e.g. 2,2,2 (one value is broadcast)")->capture_default_str();
        app.add_option("--format", format, "hosvd, tt or ht")->capture_default_str();
        app.add_option("--tree", tree, "JSON dimension tree for the ht format (balanced when omitted)");
        app.add_option("--ensemble", ensemble, "gaussian, fourier or completion")->capture_default_str();
        app.add_option("--seed", seed, "Master seed")->capture_default_str();
    }

    void add_solver(CLI::App& app) {
        app.add_option("--variant", variant, "ctiht or ntiht")->capture_default_str();
        app.add_option("--step-subspace", step_subspace, "NTIHT step projector: product or tangent (hosvd only)")
            ->capture_default_str();
        app.add_option("--max-iters", max_iters, "Iteration cap")->capture_default_str();
        app.add_option("--conv-tol", conv_tol, "Stop when |X_{j+1} - X_j| falls below this")->capture_default_str();
        app.add_option("--threshold", threshold, "Success threshold on the final error (1e-3, completion 2.5e-3)");
    }

    ExperimentSpec spec() const {
        ExperimentSpec s;
        s.shape = Shape::parse(shape);
        s.rank = RankTuple::parse(rank);
        s.format = parse_format(format);
        if (!tree.empty()) {
            if (s.format != Format::HT) throw ArgumentError("--tree only applies to the ht format");
            std::ifstream in(tree);
            if (!in) throw ArgumentError("cannot open tree file '" + tree + "'");
            s.tree = DimensionTree::from_json(nlohmann::json::parse(in));
        }
        s.ensemble = parse_ensemble(ensemble);
        s.variant = parse_variant(variant);
        s.step_subspace = parse_step_subspace(step_subspace);
        s.seed = seed;
        s.max_iters = max_iters;
        s.conv_tol = conv_tol;
        s.threshold = threshold;
        return s;
    }
};

std::string extension_format(const std::string& path, const std::string& requested) {
    if (!requested.empty()) return requested;
    return std::filesystem::path(path).extension() == ".json" ? "json" : "csv";
}

void write_json(const std::string& out, const ordered_json& j) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(out);
    if (!os) throw IoError("cannot open '" + out + "' for writing");
    os << j.dump(2) << '\n';
    if (!os) throw IoError("failed writing '" + out + "'");
}

int run_recover(const ProblemFlags& flags, int nbar, int trial, const std::string& out, const std::string& trace) {
    const ExperimentSpec spec = flags.spec();
    const TrialReplay r = replay_trial(spec, nbar, trial);
    if (!trace.empty()) write_trace_csv(std::filesystem::path(trace), r.trace);
    ordered_json j;
    j["type"] = spec.type();
    j["shape"] = spec.shape.to_string();
    j["rank"] = spec.rank.to_string();
    j["variant"] = std::string(to_string(spec.variant));
    j["step_subspace"] = std::string(to_string(spec.step_subspace));
    j["nbar"] = nbar;
    j["m"] = measurements_for(spec.shape, nbar);
    j["trial"] = trial;
    j["seed"] = spec.seed;
    j["iterations"] = r.outcome.iterations;
    j["converged"] = r.outcome.converged;
    j["diverged"] = r.outcome.diverged;
    j["error"] = r.outcome.error;
    j["threshold"] = spec.success_threshold();
    j["success"] = r.outcome.success;
    if (!r.trace.empty()) j["final_residual"] = r.trace.back().residual;
    write_json(out, j);
    return 0;
}

int run_phase(const ProblemFlags& flags, const std::string& grid, int trials, const std::string& out,
              const std::string& out_format) {
    ExperimentSpec spec = flags.spec();
    spec.grid = grid.empty() ? default_grid() : parse_grid(grid);
    spec.trials = trials;
    const PhaseDiagram d = run_phase_diagram(spec);
    const ResultFormat fmt = parse_result_format(extension_format(out, out_format));
    if (out.empty() || out == "-") {
        emit_results(std::cout, d.rows(spec), fmt);
    } else {
        emit_results(std::filesystem::path(out), d.rows(spec), fmt);
    }
    auto label = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
    std::cerr << spec.type() << " " << spec.rank.to_string() << " " << to_string(spec.variant)
              << ": nbar0=" << label(d.nbar_all) << " nbar1=" << label(d.nbar_none) << '\n';
    return 0;
}

int run_trip(const ProblemFlags& flags, int nbar, std::optional<Index> m, int samples, const std::string& out) {
    const ExperimentSpec spec = flags.spec();
    const Index rows = m ? *m : measurements_for(spec.shape, nbar);
    const std::uint64_t ensemble_seed = derive_seed(spec.seed, {1});
    const std::uint64_t sample_seed = derive_seed(spec.seed, {2});
    TripEstimate t;
    if (spec.ensemble == EnsembleKind::Fourier) {
        t = trip_estimate(*draw<Complex>(spec.ensemble, spec.shape, rows, ensemble_seed), spec.model(), samples,
                          sample_seed);
    } else {
        t = trip_estimate(*draw<double>(spec.ensemble, spec.shape, rows, ensemble_seed), spec.model(), samples,
                          sample_seed);
    }
    ordered_json j;
    j["ensemble"] = std::string(to_string(spec.ensemble));
    j["shape"] = spec.shape.to_string();
    j["m"] = rows;
    j["seed"] = spec.seed;
    const nlohmann::json estimate = to_json(t);
    for (const auto& [k, v] : estimate.items()) j[k] = v;
    write_json(out, j);
    return 0;
}

struct BoundsFlags {
    std::string shape = "10x10x10";
    Index rank = 2;
    std::string format = "hosvd";
    std::string variant = "ctiht";
    double delta = 0.5;
    double fail_prob = 0.01;
    double eta = 1.0;
    double eps = 1.0;
    double a = 0.5;
    double delta3r = 0.1;
    double opnorm = 2.0;
};

int run_bounds(const BoundsFlags& b, const std::string& out) {
    const Shape shape = Shape::parse(b.shape);
    const Index d = shape.order();
    const Index n = *std::max_element(shape.dims().begin(), shape.dims().end());
    const Format f = parse_format(b.format);
    const Variant v = parse_variant(b.variant);

    const SampleBound s = sample_complexity(f, d, n, b.rank, b.delta, b.fail_prob);
    const FourierSampleBound fs = fourier_sample_complexity(f, d, n, b.rank, b.delta, b.eta);
    ordered_json j;
    j["format"] = std::string(to_string(f));
    j["d"] = d;
    j["n"] = n;
    j["r"] = b.rank;
    j["delta"] = b.delta;
    j["sample_complexity"] = {{"fail_prob", b.fail_prob}, {"dof_term", s.dof_term}, {"bound", s.bound}};
    j["fourier_sample_complexity"] = {
        {"eta", b.eta}, {"log_term", fs.log_term}, {"f_term", fs.f_term}, {"bound", fs.bound}};
    j["covering_bound"] = {{"eps", b.eps}, {"log_covering", covering_bound(f, d, n, b.rank, b.eps)}};
    j["storage_count"] = storage_count(f, d, n, b.rank);
    ordered_json c;
    const nlohmann::json constants = to_json(convergence_constants(v, b.a, b.delta3r, b.opnorm));
    for (const auto& [k, val] : constants.items()) c[k] = val;
    c["delta3r"] = b.delta3r;
    c["opnorm"] = b.opnorm;
    j["convergence_constants"] = c;
    write_json(out, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-rank tensor recovery by iterative hard thresholding"};
    app.require_subcommand(1);

    ProblemFlags recover_flags;
    int recover_nbar = 50;
    int recover_trial = 0;
    std::string recover_out;
    std::string recover_trace;
    auto* recover = app.add_subcommand("recover", "Recover one random low-rank tensor");
    recover_flags.add_model(*recover);
    recover_flags.add_solver(*recover);
    recover->add_option("--nbar", recover_nbar, "Measurements as a percentage of the tensor size")
        ->check(CLI::Range(1, 100))
        ->capture_default_str();
    recover->add_option("--trial", recover_trial, "Trial index; phase cell trials replay exactly")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    recover->add_option("--out", recover_out, "JSON summary path (stdout when omitted)");
    recover->add_option("--trace", recover_trace, "Per-iteration CSV trace path");

    ProblemFlags phase_flags;
    std::string phase_grid;
    int phase_trials = 50;
    std::string phase_out;
    std::string phase_format;
    auto* phase = app.add_subcommand("phase", "Sweep measurement percentages and tabulate success rates");
    phase_flags.add_model(*phase);
    phase_flags.add_solver(*phase);
    phase->add_option("--grid", phase_grid, "Percentages: 3,5,8 or 3:10 or 5:50:5 (default 1..30, then step 5)");
    phase->add_option("--trials", phase_trials, "Trials per grid value")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    phase->add_option("--out", phase_out, "Result path; .json selects JSON (stdout when omitted)");
    phase->add_option("--out-format", phase_format, "csv or json, overriding the extension");

    ProblemFlags trip_flags;
    int trip_nbar = 10;
    std::optional<Index> trip_m;
    int trip_samples = 500;
    std::string trip_out;
    auto* trip = app.add_subcommand("trip", "Monte-Carlo lower bound on the restricted isometry constant");
    trip_flags.add_model(*trip);
    trip->add_option("--nbar", trip_nbar, "Measurements as a percentage of the tensor size")
        ->check(CLI::Range(1, 100))
        ->capture_default_str();
    trip->add_option("--m", trip_m, "Explicit measurement count, overriding --nbar")->check(CLI::PositiveNumber);
    trip->add_option("--samples", trip_samples, "Random unit-norm low-rank tensors")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    trip->add_option("--out", trip_out, "JSON output path (stdout when omitted)");

    BoundsFlags bounds_flags;
    std::string bounds_out;
    auto* bounds = app.add_subcommand("bounds", "Evaluate sample-complexity, covering and convergence formulas");
    bounds->add_option("--shape", bounds_flags.shape, "d is the order, n the largest extent")->capture_default_str();
    bounds->add_option("--rank", bounds_flags.rank, "Uniform rank r")->check(CLI::PositiveNumber)->capture_default_str();
    bounds->add_option("--format", bounds_flags.format, "hosvd, tt or ht")->capture_default_str();
    bounds->add_option("--variant", bounds_flags.variant, "ctiht or ntiht")->capture_default_str();
    bounds->add_option("--delta", bounds_flags.delta, "Restricted isometry level")->capture_default_str();
    bounds->add_option("--fail-prob", bounds_flags.fail_prob, "Failure probability")->capture_default_str();
    bounds->add_option("--eta", bounds_flags.eta, "Fourier bound parameter")->capture_default_str();
    bounds->add_option("--eps", bounds_flags.eps, "Covering radius")->capture_default_str();
    bounds->add_option("--a", bounds_flags.a, "Contraction target in (0, 1)")->capture_default_str();
    bounds->add_option("--delta3r", bounds_flags.delta3r, "Restricted isometry constant at rank 3r")
        ->capture_default_str();
    bounds->add_option("--opnorm", bounds_flags.opnorm, "Operator norm of the measurement map")->capture_default_str();
    bounds->add_option("--out", bounds_out, "JSON output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kArgumentExit;
    }

    try {
        if (*recover) return run_recover(recover_flags, recover_nbar, recover_trial, recover_out, recover_trace);
        if (*phase) return run_phase(phase_flags, phase_grid, phase_trials, phase_out, phase_format);
        if (*trip) return run_trip(trip_flags, trip_nbar, trip_m, trip_samples, trip_out);
        if (*bounds) return run_bounds(bounds_flags, bounds_out);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kArgumentExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
