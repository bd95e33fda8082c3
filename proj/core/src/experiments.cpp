// SPDX-License-Identifier: Apache-2.0
#include "tiht/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tiht/generator.hpp"
#include "tiht/parallel.hpp"

namespace tiht {

LowRankModel ExperimentSpec::model() const {
    if (format == Format::HT && tree) return LowRankModel(format, shape, rank, *tree);
    return LowRankModel(format, shape, rank);
}

double ExperimentSpec::success_threshold() const {
    return threshold ? *threshold : default_success_threshold(ensemble);
}

void ExperimentSpec::validate() const {
    if (shape.order() < 1) throw ArgumentError("experiment needs a shape");
    if (trials < 1) throw ArgumentError("trials must be at least 1");
    if (grid.empty()) throw ArgumentError("measurement grid is empty");
    for (int p : grid)
        if (p < 1 || p > 100) throw ArgumentError("grid percentages must lie in 1..100");
    if (max_iters < 1) throw ArgumentError("max_iters must be at least 1");
    if (!(conv_tol > 0.0)) throw ArgumentError("conv_tol must be positive");
    if (threshold && !(*threshold > 0.0)) throw ArgumentError("threshold must be positive");
    (void)model();
}

std::string ExperimentSpec::type() const {
    return std::string(to_string(ensemble)) + "-" + std::string(to_string(format));
}

Index measurements_for(const Shape& shape, int nbar) {
    if (nbar < 1 || nbar > 100) throw ArgumentError("measurement percentage must lie in 1..100");
    return (shape.size() * nbar + 99) / 100;
}

namespace {

enum Stream : std::uint64_t { kTensorStream = 0, kEnsembleStream = 1 };

template <Scalar T>
TrialReplay solve(const ExperimentSpec& spec, const MeasurementOperator<T>& a, const Tensor<T>& truth,
                  bool with_reference) {
    SolverConfig<T> cfg{.variant = spec.variant, .model = spec.model(), .max_iters = spec.max_iters,
                        .conv_tol = spec.conv_tol, .initial = std::nullopt, .keep_iterates = false,
                        .step_subspace = spec.step_subspace};
    auto result = tiht_run(a, a.apply(truth), cfg, with_reference ? &truth : nullptr);
    TrialReplay out;
    out.outcome.iterations = result.iterations;
    out.outcome.converged = result.converged;
    out.outcome.diverged = result.diverged;
    out.outcome.error = (result.estimate.vec() - truth.vec()).norm();
    out.outcome.success = !result.diverged && out.outcome.error < spec.success_threshold();
    out.trace = std::move(result.trace);
    return out;
}

TrialReplay run(const ExperimentSpec& spec, int nbar, int trial, bool with_reference) {
    const Index m = measurements_for(spec.shape, nbar);
    const auto n = static_cast<std::uint64_t>(nbar);
    const auto t = static_cast<std::uint64_t>(trial);
    const Tensor<double> truth = generate_low_rank(spec.model(), derive_seed(spec.seed, {n, t, kTensorStream}));
    const std::uint64_t ensemble_seed = derive_seed(spec.seed, {n, t, kEnsembleStream});
    if (spec.ensemble == EnsembleKind::Fourier) {
        const auto a = draw<Complex>(spec.ensemble, spec.shape, m, ensemble_seed);
        return solve(spec, *a, to_complex(truth), with_reference);
    }
    const auto a = draw<double>(spec.ensemble, spec.shape, m, ensemble_seed);
    return solve(spec, *a, truth, with_reference);
}

}  // namespace

TrialOutcome run_trial(const ExperimentSpec& spec, int nbar, int trial) {
    return run(spec, nbar, trial, false).outcome;
}

TrialReplay replay_trial(const ExperimentSpec& spec, int nbar, int trial) {
    ExperimentSpec single = spec;
    single.grid = {nbar};
    single.validate();
    if (trial < 0) throw ArgumentError("trial index must be nonnegative");
    return run(spec, nbar, trial, true);
}

std::optional<int> minimal_full_success(const std::vector<PhaseCell>& cells) {
    std::optional<int> best;
    for (const auto& c : cells)
        if (c.trials > 0 && c.successes == c.trials && (!best || c.nbar < *best)) best = c.nbar;
    return best;
}

std::optional<int> maximal_zero_success(const std::vector<PhaseCell>& cells) {
    std::optional<int> best;
    for (const auto& c : cells)
        if (c.trials > 0 && c.successes == 0 && (!best || c.nbar > *best)) best = c.nbar;
    return best;
}

PhaseDiagram run_phase_diagram(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<int> grid = spec.grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const auto trials = static_cast<std::size_t>(spec.trials);
    std::vector<TrialOutcome> slots(grid.size() * trials);
    parallel_for(slots.size(), [&](std::size_t task) {
        slots[task] = run_trial(spec, grid[task / trials], static_cast<int>(task % trials));
    });

    PhaseDiagram out;
    for (std::size_t c = 0; c < grid.size(); ++c) {
        PhaseCell cell;
        cell.nbar = grid[c];
        cell.m = measurements_for(spec.shape, grid[c]);
        cell.trials = spec.trials;
        double iters = 0.0;
        double err = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto& o = slots[c * trials + t];
            cell.successes += o.success ? 1 : 0;
            iters += o.iterations;
            err += o.error;
        }
        cell.mean_iters = iters / static_cast<double>(trials);
        cell.mean_error = err / static_cast<double>(trials);
        out.cells.push_back(cell);
    }
    out.nbar_all = minimal_full_success(out.cells);
    out.nbar_none = maximal_zero_success(out.cells);
    return out;
}

std::vector<ResultRow> PhaseDiagram::rows(const ExperimentSpec& spec) const {
    std::vector<ResultRow> rows;
    for (const auto& c : cells) rows.push_back({spec.type(), spec.shape, spec.rank, spec.variant, c});
    return rows;
}

namespace {

int parse_int(std::string_view s, std::string_view context) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ArgumentError("cannot parse '" + std::string(s) + "' in " + std::string(context));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

std::string rank_label(const RankTuple& r) {
    std::string s = r.to_string();
    std::replace(s.begin(), s.end(), ',', 'x');
    return s;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.variant != b.variant) return a.variant < b.variant;
        return a.cell.nbar < b.cell.nbar;
    });
}

}  // namespace

std::vector<int> parse_grid(std::string_view text) {
    std::vector<int> grid;
    for (auto piece : split(text, ',')) {
        auto range = split(piece, ':');
        if (range.size() == 1) {
            grid.push_back(parse_int(range[0], "grid"));
            continue;
        }
        if (range.size() > 3) throw ArgumentError("grid range '" + std::string(piece) + "' has too many fields");
        const int lo = parse_int(range[0], "grid");
        const int hi = parse_int(range[1], "grid");
        const int step = range.size() == 3 ? parse_int(range[2], "grid") : 1;
        if (step < 1 || hi < lo) throw ArgumentError("grid range '" + std::string(piece) + "' is empty");
        for (int p = lo; p <= hi; p += step) grid.push_back(p);
    }
    for (int p : grid)
        if (p < 1 || p > 100) throw ArgumentError("grid percentages must lie in 1..100");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<int> default_grid() {
    std::vector<int> g;
    for (int p = 1; p <= 30; ++p) g.push_back(p);
    for (int p = 35; p <= 100; p += 5) g.push_back(p);
    return g;
}

ResultFormat parse_result_format(std::string_view s) {
    if (s == "csv") return ResultFormat::Csv;
    if (s == "json") return ResultFormat::Json;
    throw ArgumentError("unknown result format '" + std::string(s) + "' (expected csv or json)");
}

void emit_results(std::ostream& os, std::vector<ResultRow> rows, ResultFormat fmt) {
    if (rows.empty()) throw ArgumentError("no result rows to emit");
    sort_rows(rows);
    if (fmt == ResultFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            arr.push_back(nlohmann::ordered_json{{"type", r.type},
                                                 {"shape", r.shape.to_string()},
                                                 {"rank", rank_label(r.rank)},
                                                 {"variant", std::string(to_string(r.variant))},
                                                 {"nbar", r.cell.nbar},
                                                 {"m", r.cell.m},
                                                 {"successes", r.cell.successes},
                                                 {"trials", r.cell.trials},
                                                 {"mean_iters", r.cell.mean_iters},
                                                 {"mean_error", r.cell.mean_error}});
        }
        os << arr.dump(2) << '\n';
        return;
    }
    os << "type,shape,rank,variant,nbar,m,successes,trials,mean_iters,mean_error\n";
    char nums[96];
    for (const auto& r : rows) {
        std::snprintf(nums, sizeof nums, "%.17g,%.17g", r.cell.mean_iters, r.cell.mean_error);
        os << r.type << ',' << r.shape.to_string() << ',' << rank_label(r.rank) << ',' << to_string(r.variant) << ','
           << r.cell.nbar << ',' << r.cell.m << ',' << r.cell.successes << ',' << r.cell.trials << ',' << nums
           << '\n';
    }
}

void emit_results(const std::filesystem::path& path, std::vector<ResultRow> rows, ResultFormat fmt) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    emit_results(os, std::move(rows), fmt);
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ResultRow> parse_results(std::istream& is, ResultFormat fmt) {
    std::vector<ResultRow> rows;
    if (fmt == ResultFormat::Json) {
        try {
            const auto arr = nlohmann::json::parse(is);
            for (const auto& j : arr) {
                ResultRow r;
                r.type = j.at("type").get<std::string>();
                r.shape = Shape::parse(j.at("shape").get<std::string>());
                r.rank = RankTuple::parse(j.at("rank").get<std::string>());
                r.variant = parse_variant(j.at("variant").get<std::string>());
                r.cell.nbar = j.at("nbar").get<int>();
                r.cell.m = j.at("m").get<Index>();
                r.cell.successes = j.at("successes").get<int>();
                r.cell.trials = j.at("trials").get<int>();
                r.cell.mean_iters = j.at("mean_iters").get<double>();
                r.cell.mean_error = j.at("mean_error").get<double>();
                rows.push_back(std::move(r));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ArgumentError(std::string("malformed result JSON: ") + e.what());
        }
        return rows;
    }
    std::string line;
    if (!std::getline(is, line) || line != "type,shape,rank,variant,nbar,m,successes,trials,mean_iters,mean_error") {
        throw ArgumentError("result CSV has an unexpected header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 10) throw ArgumentError("result CSV row has " + std::to_string(f.size()) + " fields");
        ResultRow r;
        r.type = std::string(f[0]);
        r.shape = Shape::parse(f[1]);
        r.rank = RankTuple::parse(f[2]);
        r.variant = parse_variant(f[3]);
        r.cell.nbar = parse_int(f[4], "nbar");
        r.cell.m = parse_int(f[5], "m");
        r.cell.successes = parse_int(f[6], "successes");
        r.cell.trials = parse_int(f[7], "trials");
        r.cell.mean_iters = std::stod(std::string(f[8]));
        r.cell.mean_error = std::stod(std::string(f[9]));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace tiht
