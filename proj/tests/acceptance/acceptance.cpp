#include "baglid/bagging.hpp"
#include "baglid/datasets.hpp"
#include "baglid/evaluation.hpp"
#include "baglid/random.hpp"
#include "baglid/sweep.hpp"
#include "baglid/theory_lab.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace baglid;

namespace tol {
constexpr double decomposition_rel = 1e-12;
constexpr std::size_t decomposition_fixtures = 1000;
constexpr double decomposition_seconds = 1.0;
constexpr std::size_t overlap_pairs = 100000;
constexpr double overlap_alpha = 0.01;
constexpr double overlap_mean_se = 3.0;
constexpr double overlap_seconds = 30.0;
constexpr std::size_t variance_trials = 20000;
constexpr double variance_rel = 0.05;
constexpr double variance_seconds = 120.0;
constexpr double r_one_seconds = 60.0;
constexpr double trend_band = 0.10;
constexpr std::size_t trend_min_datasets = 15;
constexpr std::size_t improvement_min_datasets = 17;
constexpr double lollipop_stick = 0.05;
constexpr double lollipop_stick_tol = 0.01;
constexpr double generator_seconds = 60.0;
constexpr double bias_drift = 0.10;
constexpr std::size_t runtime_n = 2500;
} // namespace tol

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, fmt::format("threw: {}", e.what())};
    }
    failures += o.pass ? 0 : 1;
    fmt::print("[criterion {:>2}] {} {} ({}; {:.1f} s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail,
               seconds_since(start));
    std::fflush(stdout);
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

// Rows of one (dataset, variant) keyed by the swept axis value.
std::map<std::string, std::vector<const SweepRow*>> by_dataset(const std::vector<SweepRow>& rows, Variant v) {
    std::map<std::string, std::vector<const SweepRow*>> out;
    for (const auto& r : rows)
        if (r.variant == v) out[r.dataset].push_back(&r);
    return out;
}

// Nonincreasing along `values` (ordered from large to small resampling
// effort reversed as the caller decides) within a relative band.
bool nonincreasing(const std::vector<double>& values, double band) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] * (1.0 + band)) return false;
    return true;
}

Outcome decomposition_identity() {
    const auto start = Clock::now();
    auto eng = make_engine(2024, 0);
    double worst = 0.0;
    for (std::size_t t = 0; t < tol::decomposition_fixtures; ++t) {
        const std::size_t n = 2 + uniform_index(eng, 500);
        const std::size_t manifolds = 1 + uniform_index(eng, 5);
        std::vector<double> gt(manifolds);
        for (auto& g : gt) g = uniform(eng, 1.0, 40.0);
        std::vector<int> labels(n);
        std::vector<double> est(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = 1 + static_cast<int>(uniform_index(eng, manifolds));
            est[i] = gt[static_cast<std::size_t>(labels[i] - 1)] * uniform(eng, 0.2, 2.5);
        }
        const PointCloud cloud(1, std::vector<double>(n, 0.0), std::move(labels), std::move(gt));
        const auto d = decompose(est, cloud);
        if (d.total_mse > 0.0) worst = std::max(worst, std::abs(d.total_mse - d.total_var - d.total_bias_sq) / d.total_mse);
    }
    const double secs = seconds_since(start);
    return {worst <= tol::decomposition_rel && secs < tol::decomposition_seconds,
            fmt::format("worst relative gap {:.2e} <= {:.0e} over {} fixtures, {:.3f} s < {} s", worst,
                        tol::decomposition_rel, tol::decomposition_fixtures, secs, tol::decomposition_seconds)};
}

Outcome overlap_law() {
    const auto start = Clock::now();
    const auto e = run_overlap(100, 10, tol::overlap_pairs, 77);
    const double z = std::abs(e.mean - e.theory_mean) / e.standard_error;
    const double secs = seconds_since(start);
    return {e.fit.p_value > tol::overlap_alpha && z <= tol::overlap_mean_se && secs < tol::overlap_seconds,
            fmt::format("chi2={:.2f} dof={} p={:.3f} > {}; mean={:.4f} is {:.2f} SE from 1.0", e.fit.statistic,
                        e.fit.dof, e.fit.p_value, tol::overlap_alpha, e.mean, z)};
}

Outcome variance_closed_form() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (std::size_t b : {1u, 2u, 5u, 10u, 50u}) {
        const auto e = run_variance(1000, 0.1, b, tol::variance_trials, derive_seed(31, b));
        const double rel = e.var_bagged / e.closed_form - 1.0;
        const bool good = std::abs(rel) <= tol::variance_rel && e.sandwich_holds();
        ok = ok && good;
        detail += fmt::format("{}B={}:{:+.3f}{}", detail.empty() ? "" : " ", b, rel, e.sandwich_holds() ? "" : "!");
    }
    const double secs = seconds_since(start);
    ok = ok && secs < tol::variance_seconds;
    return {ok, fmt::format("relative error vs (1/m)(r+(1-r)/B), limit {}: {}; sandwich at every B", tol::variance_rel,
                            detail)};
}

Outcome r_one_equivalence() {
    const auto start = Clock::now();
    std::size_t checked = 0;
    bool ok = true;
    for (auto d : {Dataset::M1_Sphere, Dataset::M7_Roll, Dataset::Lollipop}) {
        const auto cloud = generate({d, 2500, 5});
        for (auto m : {Method::Mle, Method::Mada}) {
            const EstimatorConfig est{m, 10, std::nullopt};
            const auto base = estimate_all(cloud, est);
            for (std::size_t b : {1u, 3u, 10u}) {
                BaggingConfig cfg;
                cfg.bags = b;
                cfg.rate = 1.0;
                cfg.seed = 9;
                const auto bagged = bagged_estimate_all(cloud, est, cfg);
                for (std::size_t i = 0; i < base.size(); ++i)
                    ok = ok && std::memcmp(&base[i].value, &bagged.aggregate()[i].value, sizeof(double)) == 0;
                ++checked;
            }
        }
    }
    const double secs = seconds_since(start);
    return {ok && secs < tol::r_one_seconds,
            fmt::format("{} (dataset, method, B) configurations bit-identical, {:.1f} s", checked, secs)};
}

Outcome variance_trend_in_r() {
    SweepGrid g = SweepGrid::defaults();
    g.k_values = {10};
    g.b_values = {10};
    g.variants = {Variant::Bagged};
    const auto rows = run_sweep(g).rows;
    std::size_t good = 0;
    std::string bad;
    for (const auto& [name, list] : by_dataset(rows, Variant::Bagged)) {
        // rows are sorted by ascending r; walk from large r to small r
        std::vector<double> var;
        for (auto it = list.rbegin(); it != list.rend(); ++it) var.push_back((*it)->var);
        if (nonincreasing(var, tol::trend_band))
            ++good;
        else
            bad += " " + name;
    }
    return {good >= tol::trend_min_datasets,
            fmt::format("VAR nonincreasing as r decreases (band {}) on {}/19, need {}; exceptions:{}", tol::trend_band,
                        good, tol::trend_min_datasets, bad.empty() ? " none" : bad)};
}

std::vector<SweepRow> default_sweep_rows(std::size_t threads) {
    SweepOptions options;
    options.threads = threads;
    return run_sweep(SweepGrid::defaults(), options).rows;
}

Outcome optimal_improvement(const std::vector<SweepRow>& rows) {
    const auto best = best_per_dataset(rows);
    std::map<std::string, std::map<Variant, double>> mse;
    for (const auto& r : best) mse[r.dataset][r.variant] = r.mse;
    std::size_t bagged_wins = 0, pre_post_best = 0;
    std::string bag_bad;
    for (const auto& [name, by_variant] : mse) {
        if (by_variant.at(Variant::Bagged) <= by_variant.at(Variant::Baseline))
            ++bagged_wins;
        else
            bag_bad += " " + name;
        const auto winner = std::min_element(by_variant.begin(), by_variant.end(),
                                             [](const auto& a, const auto& b) { return a.second < b.second; });
        pre_post_best += winner->first == Variant::BaggedPrePost ? 1 : 0;
    }
    const std::size_t majority = mse.size() / 2 + 1;
    return {bagged_wins >= tol::improvement_min_datasets && pre_post_best >= majority,
            fmt::format("best bagged <= best baseline on {}/19 (need {}{}); pre+post smoothing best on {}/19 (need {})",
                        bagged_wins, tol::improvement_min_datasets, bag_bad.empty() ? "" : ", exceptions:" + bag_bad,
                        pre_post_best, majority)};
}

Outcome generators_valid() {
    const auto start = Clock::now();
    std::size_t valid = 0;
    std::string bad;
    double stick = 0.0;
    for (const auto& info : all_datasets()) {
        const GeneratorSpec spec{info.id, 2500, 13};
        const auto cloud = generate(spec);
        const auto rep = validate(cloud, spec);
        if (rep.ok())
            ++valid;
        else
            bad += fmt::format(" {}({})", info.name, rep.violations.front());
        if (info.id == Dataset::Lollipop)
            stick = static_cast<double>(cloud.manifold_sizes()[0]) / static_cast<double>(cloud.size());
    }
    const double secs = seconds_since(start);
    const bool stick_ok = std::abs(stick - tol::lollipop_stick) <= tol::lollipop_stick_tol;
    return {valid == 19 && stick_ok && secs < tol::generator_seconds,
            fmt::format("{}/19 generators satisfy their constraints{}; Lollipop stick fraction {:.4f} in {}+-{}", valid,
                        bad, stick, tol::lollipop_stick, tol::lollipop_stick_tol)};
}

Outcome bag_count_trend() {
    const auto rows = run_sweep(SweepGrid::bag_count_defaults()).rows;
    std::size_t var_good = 0, bias_flat = 0;
    std::string bad;
    for (const auto& [name, list] : by_dataset(rows, Variant::Bagged)) {
        std::vector<double> var, bias;
        for (const auto* r : list) {
            var.push_back(r->var);
            bias.push_back(r->bias_sq);
        }
        if (nonincreasing(var, tol::trend_band))
            ++var_good;
        else
            bad += " " + name;
        // bias drift across B stays within a fraction of the error scale
        const auto [lo, hi] = std::minmax_element(bias.begin(), bias.end());
        if (*hi - *lo <= tol::bias_drift * (bias.back() + var.front())) ++bias_flat;
    }
    return {var_good >= tol::trend_min_datasets && bias_flat >= tol::trend_min_datasets,
            fmt::format("VAR nonincreasing in B (band {}) on {}/19; bias^2 flat in B on {}/19; need {}; VAR "
                        "exceptions:{}",
                        tol::trend_band, var_good, bias_flat, tol::trend_min_datasets, bad.empty() ? " none" : bad)};
}

Outcome runtime_crossover() {
    const auto cloud = generate({Dataset::M9_Affine, tol::runtime_n, 3});
    const EstimatorConfig est{Method::Mle, 10, std::nullopt};
    const auto fast = benchmark_runtime(cloud, 10, 0.05, est, 1, 5);
    const auto slow = benchmark_runtime(cloud, 10, 0.5, est, 1, 5);
    return {fast.observed_faster && !slow.observed_faster && fast.matches_prediction() && slow.matches_prediction(),
            fmt::format("r*B=0.5: T_bag {:.1f} ms vs T_base {:.1f} ms; r*B=5: T_bag {:.1f} ms vs T_base {:.1f} ms",
                        fast.bagged_ms, fast.base_ms, slow.bagged_ms, slow.base_ms)};
}

Outcome determinism(const std::string& single) {
    const auto multi = csv_of(default_sweep_rows(4));
    SweepGrid g = SweepGrid::defaults();
    g.datasets = {Dataset::M5b_Helix2d, Dataset::M10b_Cubic, Dataset::Lollipop};
    g.estimators = {Method::Mle, Method::Mada, Method::Tle};
    g.k_values = {5, 10, 19};
    g.r_values = {0.042, 0.2, 1.0};
    g.b_values = {1, 10};
    SweepOptions one, three, naive;
    three.threads = 3;
    naive.order_index_limit = 0;
    const auto a = csv_of(run_sweep(g, one).rows);
    const bool ok = single == multi && a == csv_of(run_sweep(g, three).rows) && a == csv_of(run_sweep(g, naive).rows);
    return {ok, fmt::format("default sweep ({} bytes) identical with 1 and 4 threads; 3-estimator sweep identical "
                            "with 1 and 3 threads and with exhaustive search",
                            single.size())};
}

} // namespace

int main() {
    fmt::print("acceptance suite\n");
    report(1, "decomposition identity", decomposition_identity);
    report(2, "bag-overlap law", overlap_law);
    report(3, "closed-form bagged variance", variance_closed_form);
    report(4, "r=1 equivalence", r_one_equivalence);
    report(5, "variance trend in r", variance_trend_in_r);
    std::vector<SweepRow> rows;
    report(6, "optimal-vs-optimal improvement", [&] {
        rows = default_sweep_rows(1);
        return optimal_improvement(rows);
    });
    report(7, "generator validation", generators_valid);
    report(8, "B monotonicity", bag_count_trend);
    report(9, "runtime crossover", runtime_crossover);
    report(10, "determinism", [&] { return determinism(csv_of(rows.empty() ? default_sweep_rows(1) : rows)); });
    fmt::print("{} of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
