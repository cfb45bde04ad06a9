#include "baglid/bagging.hpp"
#include "baglid/datasets.hpp"
#include "baglid/errors.hpp"
#include "baglid/estimators.hpp"
#include "baglid/evaluation.hpp"
#include "baglid/random.hpp"
#include "baglid/smoothing.hpp"
#include "baglid/sweep.hpp"
#include "baglid/theory_lab.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace baglid;

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    return out;
}

std::vector<Dataset> resolve_datasets(const std::vector<std::string>& names) {
    std::vector<Dataset> out;
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
        for (const auto& info : all_datasets()) out.push_back(info.id);
        return out;
    }
    for (const auto& name : names) out.push_back(parse_dataset(name));
    return out;
}

struct GenerateArgs {
    std::vector<std::string> datasets;
    std::size_t n = 2500;
    std::uint64_t seed = 0;
    std::string out = "data";
    std::string format = "csv";
};

int run_generate(const GenerateArgs& a) {
    fs::create_directories(a.out);
    int failures = 0;
    for (auto d : resolve_datasets(a.datasets)) {
        const GeneratorSpec spec{d, a.n, a.seed};
        const auto cloud = generate(spec);
        const auto report = validate(cloud, spec);
        const auto& info = dataset_info(d);
        const fs::path path = fs::path(a.out) / fmt::format("{}.{}", info.name, a.format == "bin" ? "blid" : "csv");
        if (a.format == "bin")
            write_binary(cloud, path);
        else
            write_csv(cloud, path);
        fmt::print("{:<20} n={} D={} -> {} [{}]\n", info.name, cloud.size(), cloud.dim(), path.string(),
                   report.ok() ? "valid" : "INVALID");
        for (const auto& v : report.violations) fmt::print("  violation: {}\n", v);
        for (const auto& note : report.notes) fmt::print("  note: {}\n", note);
        failures += report.ok() ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

struct EstimateArgs {
    std::string dataset = "M1_Sphere";
    std::string input;
    std::string estimator = "mle";
    std::string variant = "baseline";
    std::size_t k = 10;
    std::size_t k_s = 0;
    double r = 0.1;
    std::size_t bags = 10;
    std::size_t n = 2500;
    std::uint64_t seed = 0;
    std::string out = "estimates.csv";
    std::size_t threads = 1;
    bool skip_divergent = false;
};

SmoothingMode smoothing_for(Variant v) {
    switch (v) {
    case Variant::Baseline:
    case Variant::Bagged: return SmoothingMode::None;
    case Variant::Smoothed: return SmoothingMode::BaselineSmooth;
    case Variant::BaggedPost: return SmoothingMode::Post;
    case Variant::BaggedPre: return SmoothingMode::Pre;
    case Variant::BaggedPrePost: return SmoothingMode::PreAndPost;
    }
    return SmoothingMode::None;
}

int run_estimate(const EstimateArgs& a) {
    const auto dataset = parse_dataset(a.dataset);
    const PointCloud cloud = a.input.empty() ? generate({dataset, a.n, a.seed}) : read_binary(a.input);
    const auto variant = parse_variant(a.variant);
    const EstimatorConfig est{parse_method(a.estimator), a.k, std::nullopt};
    std::optional<BaggingConfig> bagging;
    if (is_bagged(variant)) {
        BaggingConfig cfg;
        cfg.bags = a.bags;
        cfg.rate = a.r;
        cfg.seed = derive_seed(a.seed, 1);
        cfg.policy = a.skip_divergent ? DivergencePolicy::SkipDivergent : DivergencePolicy::Clamp;
        bagging = cfg;
    }
    const SmoothingConfig smoothing{a.k_s, smoothing_for(variant)};
    SearchOptions search;
    search.threads = a.threads;
    const auto estimates = estimate_variant(cloud, est, bagging, smoothing, search);

    auto out = open_out(a.out);
    out << "index,label,gt_lid,estimate,divergent\n";
    for (std::size_t i = 0; i < cloud.size(); ++i)
        out << fmt::format("{},{},{},{},{}\n", i, cloud.label(i), format_double(cloud.gt_lid_of(i)),
                           format_double(estimates[i].value), estimates[i].divergent ? 1 : 0);

    const auto dec = decompose(std::span<const LidEstimate>(estimates), cloud);
    fmt::print("{} {} {} k={}: mse={} var={} bias_sq={} divergent={}\n", a.dataset, a.estimator, a.variant, a.k,
               format_double(dec.total_mse), format_double(dec.total_var), format_double(dec.total_bias_sq),
               dec.divergent_count);
    for (const auto& m : dec.per_manifold)
        fmt::print("  manifold {}: count={} mean={} mse={} var={} bias_sq={}\n", m.label, m.count,
                   format_double(m.mean_estimate), format_double(m.mse), format_double(m.var),
                   format_double(m.bias_sq));
    return 0;
}

struct SweepArgs {
    std::string config;
    std::vector<std::string> datasets;
    std::vector<std::string> estimators;
    std::vector<std::string> variants;
    std::vector<std::size_t> k;
    std::vector<double> r;
    std::vector<std::size_t> bags;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::string out = "sweep";
    std::size_t threads = 1;
    bool timing = false;
    bool quiet = false;
};

void print_progress(std::string_view name) { fmt::print(stderr, "  done {}\n", name); }

int run_sweep_verb(const SweepArgs& a) {
    SweepGrid grid = a.config.empty() ? SweepGrid::defaults() : load_grid(a.config);
    if (!a.datasets.empty()) grid.datasets = resolve_datasets(a.datasets);
    if (!a.estimators.empty()) {
        grid.estimators.clear();
        for (const auto& s : a.estimators) grid.estimators.push_back(parse_method(s));
    }
    if (!a.variants.empty()) {
        grid.variants.clear();
        for (const auto& s : a.variants) grid.variants.push_back(parse_variant(s));
    }
    if (!a.k.empty()) grid.k_values = a.k;
    if (!a.r.empty()) grid.r_values = a.r;
    if (!a.bags.empty()) grid.b_values = a.bags;
    if (a.seed) grid.master_seed = *a.seed;
    if (a.n) grid.n = *a.n;
    grid.validate();

    SweepOptions options;
    options.threads = a.threads;
    options.measure_time = a.timing;
    options.progress = a.quiet ? nullptr : &print_progress;
    const auto result = run_sweep(grid, options);

    const fs::path dir(a.out);
    fs::create_directories(dir);
    write_sweep_csv(result.rows, dir / "sweep.csv");
    write_skipped_csv(result.skipped, dir / "skipped.csv");
    nlohmann::json manifest;
    manifest["schema_version"] = sweep_schema_version;
    manifest["grid"] = grid_to_json(grid);
    manifest["rows"] = result.rows.size();
    manifest["skipped"] = result.skipped.size();
    manifest["grid_size"] = result.grid_size;
    open_out(dir / "manifest.json") << manifest.dump(2) << '\n';
    fmt::print("{} rows, {} skipped, grid size {} -> {}\n", result.rows.size(), result.skipped.size(),
               result.grid_size, (dir / "sweep.csv").string());
    return 0;
}

struct TheoryArgs {
    std::string experiment = "all";
    std::size_t n = 1000;
    std::size_t m = 10;
    double r = 0.1;
    std::vector<std::size_t> bags{1, 2, 5, 10, 50};
    std::size_t trials = 5000;
    std::uint64_t seed = 0;
    std::string out = "theory";
    std::size_t threads = 1;
};

void theory_overlap(const TheoryArgs& a, const fs::path& dir) {
    const auto e = run_overlap(a.n, a.m, a.trials, a.seed, a.threads);
    auto out = open_out(dir / "overlap.csv");
    out << "h,observed,expected\n";
    for (std::size_t h = 0; h < e.histogram.size(); ++h)
        out << fmt::format("{},{},{}\n", h, e.histogram[h], format_double(e.pmf[h] * static_cast<double>(e.trials)));
    fmt::print("overlap n={} m={} trials={}: mean={:.6f} theory={:.6f} se={:.6f} chi2={:.3f} dof={} p={:.4f}\n", e.n,
               e.m, e.trials, e.mean, e.theory_mean, e.standard_error, e.fit.statistic, e.fit.dof, e.fit.p_value);
}

void theory_variance(const TheoryArgs& a, const fs::path& dir) {
    auto out = open_out(dir / "variance.csv");
    out << "n,r,m,B,trials,var_bagged,var_single,var_full,cov_pairs,correlation,predicted,closed_form,sandwich\n";
    for (std::size_t b : a.bags) {
        const auto e = run_variance(a.n, a.r, b, a.trials, derive_seed(a.seed, b), a.threads);
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", e.n, format_double(e.rate), e.m, e.bags,
                           e.trials, format_double(e.var_bagged), format_double(e.var_single),
                           format_double(e.var_full), format_double(e.cov_pairs), format_double(e.correlation),
                           format_double(e.predicted), format_double(e.closed_form), e.sandwich_holds() ? 1 : 0);
        fmt::print("variance B={:<3} var_bag={:.6g} closed_form={:.6g} rel_err={:+.4f} rho={:.4f} sandwich={}\n",
                   b, e.var_bagged, e.closed_form, e.var_bagged / e.closed_form - 1.0, e.correlation,
                   e.sandwich_holds());
    }
}

void theory_covariance(const TheoryArgs& a, const fs::path& dir) {
    const auto c = run_conditional_covariance(a.n, a.r, a.trials, a.seed, a.threads);
    auto out = open_out(dir / "conditional_covariance.csv");
    out << "h,count,available,covariance,standard_error,theory\n";
    for (const auto& b : c.bins)
        out << fmt::format("{},{},{},{},{},{}\n", b.overlap, b.count, b.available ? 1 : 0,
                           format_double(b.covariance), format_double(b.standard_error), format_double(b.theory));
    fmt::print("conditional covariance n={} m={}: cov={:.6g} phi(r)={:.6g} slack={:.6g} bound={} "
               "monotonicity_violations={}\n",
               c.n, c.m, c.unconditional_cov, c.phi_at_rate, c.slack, c.bound_holds(), c.monotonicity_violations);
}

int run_theory(const TheoryArgs& a) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    const bool all = a.experiment == "all";
    if (all || a.experiment == "overlap") theory_overlap(a, dir);
    if (all || a.experiment == "variance") theory_variance(a, dir);
    if (all || a.experiment == "covariance") theory_covariance(a, dir);
    if (!all && a.experiment != "overlap" && a.experiment != "variance" && a.experiment != "covariance")
        throw ConfigError(fmt::format("unknown experiment '{}'", a.experiment));
    return 0;
}

struct ReportArgs {
    std::string input = "sweep/sweep.csv";
    std::string out = "report";
};

int run_report(const ReportArgs& a) {
    const auto rows = read_sweep_csv(a.input);
    const fs::path dir(a.out);
    fs::create_directories(dir);
    const auto best = best_per_dataset(rows);
    write_best_csv(best, dir / "best.csv");
    for (auto v : all_variants()) {
        if (!is_bagged(v)) continue;
        for (auto axis : {HeatmapAxis::K, HeatmapAxis::Bags}) {
            const auto cells = heatmap_data(rows, axis, v);
            if (cells.empty()) continue;
            write_heatmap_csv(cells, axis,
                              dir / fmt::format("heatmap_{}_{}.csv", axis == HeatmapAxis::K ? "k" : "B", to_string(v)));
        }
    }
    fmt::print("{:<20} {:<10} {:<16} {:>4} {:>8} {:>4} {:>14}\n", "dataset", "estimator", "variant", "k", "r", "B",
               "mse");
    for (const auto& r : best)
        fmt::print("{:<20} {:<10} {:<16} {:>4} {:>8.4f} {:>4} {:>14.6g}\n", r.dataset, to_string(r.estimator),
                   to_string(r.variant), r.k, r.r, r.bags, r.mse);
    return 0;
}

struct BenchmarkArgs {
    std::vector<std::size_t> n{2500};
    std::string dataset = "M1_Sphere";
    std::string estimator = "mle";
    std::size_t k = 10;
    std::vector<double> r{0.05, 0.5};
    std::size_t bags = 10;
    std::size_t repeats = 3;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

int run_benchmark(const BenchmarkArgs& a) {
    const EstimatorConfig est{parse_method(a.estimator), a.k, std::nullopt};
    fmt::print("{:>6} {:>5} {:>7} {:>12} {:>12} {:>10} {:>10}\n", "n", "B", "r", "T_base_ms", "T_bag_ms", "predicted",
               "observed");
    for (auto n : a.n) {
        const auto cloud = generate({parse_dataset(a.dataset), n, a.seed});
        for (double r : a.r) {
            const auto rep = benchmark_runtime(cloud, a.bags, r, est, derive_seed(a.seed, 1), a.repeats, a.threads);
            fmt::print("{:>6} {:>5} {:>7.4f} {:>12.3f} {:>12.3f} {:>10} {:>10}\n", n, a.bags, r, rep.base_ms,
                       rep.bagged_ms, rep.predicted_faster ? "bag<base" : "bag>base",
                       rep.observed_faster ? "bag<base" : "bag>base");
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bagged and smoothed local intrinsic dimensionality estimation"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Generate benchmark datasets and validate them");
    g->add_option("--dataset", gen.datasets, "Dataset names, or 'all'");
    g->add_option("--n", gen.n, "Points per dataset");
    g->add_option("--seed", gen.seed, "Generator seed");
    g->add_option("--out", gen.out, "Output directory");
    g->add_option("--format", gen.format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));

    EstimateArgs est;
    auto* e = app.add_subcommand("estimate", "Estimate LID for every point of one dataset");
    e->add_option("--dataset", est.dataset, "Dataset name");
    e->add_option("--input", est.input, "Binary point cloud written by 'generate --format bin'");
    e->add_option("--estimator", est.estimator, "mle, mada or tle");
    e->add_option("--variant", est.variant, "baseline, smoothed, bagged, bagged_post, bagged_pre, bagged_pre_post");
    e->add_option("--k", est.k, "Neighborhood size");
    e->add_option("--ks", est.k_s, "Smoothing neighborhood size (0: same as k)");
    e->add_option("--r", est.r, "Sampling rate");
    e->add_option("--bags", est.bags, "Number of bags");
    e->add_option("--n", est.n, "Points when generating");
    e->add_option("--seed", est.seed, "Seed");
    e->add_option("--out", est.out, "Output CSV file");
    e->add_option("--threads", est.threads, "Worker threads (0: all cores)");
    e->add_flag("--skip-divergent", est.skip_divergent, "Drop divergent bag estimates instead of clamping");

    SweepArgs sw;
    auto* s = app.add_subcommand("sweep", "Evaluate a grid of configurations");
    s->add_option("--config", sw.config, "JSON grid document");
    s->add_option("--dataset", sw.datasets, "Override datasets");
    s->add_option("--estimator", sw.estimators, "Override estimators");
    s->add_option("--variant", sw.variants, "Override variants");
    s->add_option("--k", sw.k, "Override k values");
    s->add_option("--r", sw.r, "Override r values");
    s->add_option("--bags", sw.bags, "Override B values");
    s->add_option("--seed", sw.seed, "Master seed");
    s->add_option("--n", sw.n, "Points per dataset");
    s->add_option("--out", sw.out, "Output directory");
    s->add_option("--threads", sw.threads, "Worker threads (0: all cores)");
    s->add_flag("--timing", sw.timing, "Record wall time per cell (output is then not byte-stable)");
    s->add_flag("--quiet", sw.quiet, "No progress output");

    TheoryArgs th;
    auto* t = app.add_subcommand("theory", "Monte Carlo checks of the subbagging variance results");
    t->add_option("--experiment", th.experiment, "overlap, variance, covariance or all");
    t->add_option("--n", th.n, "Sample size");
    t->add_option("--m", th.m, "Bag size for the overlap experiment");
    t->add_option("--r", th.r, "Sampling rate");
    t->add_option("--bags", th.bags, "B values for the variance experiment");
    t->add_option("--trials", th.trials, "Monte Carlo trials");
    t->add_option("--seed", th.seed, "Seed");
    t->add_option("--out", th.out, "Output directory");
    t->add_option("--threads", th.threads, "Worker threads (0: all cores)");

    ReportArgs rep;
    auto* r = app.add_subcommand("report", "Best-per-dataset table and heatmap data from a sweep");
    r->add_option("--input", rep.input, "sweep.csv from the sweep verb");
    r->add_option("--out", rep.out, "Output directory");

    BenchmarkArgs bench;
    auto* b = app.add_subcommand("benchmark", "Time baseline against bagged estimation");
    b->add_option("--n", bench.n, "Dataset sizes");
    b->add_option("--dataset", bench.dataset, "Dataset name");
    b->add_option("--estimator", bench.estimator, "mle, mada or tle");
    b->add_option("--k", bench.k, "Neighborhood size");
    b->add_option("--r", bench.r, "Sampling rates");
    b->add_option("--bags", bench.bags, "Number of bags");
    b->add_option("--repeats", bench.repeats, "Timed repeats");
    b->add_option("--seed", bench.seed, "Seed");
    b->add_option("--threads", bench.threads, "Worker threads");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*g) return run_generate(gen);
        if (*e) return run_estimate(est);
        if (*s) return run_sweep_verb(sw);
        if (*t) return run_theory(th);
        if (*r) return run_report(rep);
        if (*b) return run_benchmark(bench);
    } catch (const std::exception& ex) {
        fmt::print(stderr, "error: {}\n", ex.what());
        return 2;
    }
    return 0;
}
