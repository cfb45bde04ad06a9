#include "baglid/errors.hpp"
#include "baglid/sweep.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace baglid;
namespace fs = std::filesystem;

namespace {

SweepGrid small_grid() {
    SweepGrid g;
    g.k_values = {5, 10};
    g.r_values = {0.1, 0.3};
    g.b_values = {2, 4};
    g.variants = all_variants();
    g.datasets = {Dataset::M7_Roll, Dataset::Lollipop};
    g.estimators = {Method::Mle, Method::Tle};
    g.master_seed = 11;
    g.n = 300;
    return g;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

} // namespace

TEST_CASE("geometric grids") {
    const auto k = geometric_int_grid(5, 72, 9);
    CHECK(k == std::vector<std::size_t>{5, 7, 10, 14, 19, 26, 37, 52, 72});
    const auto r = geometric_grid(0.042, 0.6, 9);
    CHECK(r.size() == 9);
    CHECK(r.front() == 0.042);
    CHECK(r.back() == 0.6);
    for (std::size_t i = 1; i + 1 < r.size(); ++i) CHECK(r[i] * r[i] == doctest::Approx(r[i - 1] * r[i + 1]));
    const auto b = geometric_int_grid(3, 400, 20);
    CHECK(b.front() == 3);
    CHECK(b.back() == 400);
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(geometric_int_grid(1, 2, 10) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("default grid") {
    const auto g = SweepGrid::defaults();
    CHECK(g.datasets.size() == 19);
    CHECK(g.b_values == std::vector<std::size_t>{10});
    CHECK(g.variants.size() == 6);
    CHECK(grid_cell_count(g) == 19 * (2 * 9 + 4 * 81));
    const auto b = SweepGrid::bag_count_defaults();
    CHECK(b.b_values.size() == 20);
    CHECK(b.r_values == std::vector<double>{0.05});
}

TEST_CASE("variant names") {
    for (auto v : all_variants()) CHECK(parse_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_variant("bagged_smooth"), ConfigError);
}

TEST_CASE("grid documents round trip") {
    const auto g = small_grid();
    const auto doc = grid_to_json(g);
    const auto back = grid_from_json(doc);
    CHECK(back.k_values == g.k_values);
    CHECK(back.r_values == g.r_values);
    CHECK(back.b_values == g.b_values);
    CHECK(back.variants == g.variants);
    CHECK(back.datasets == g.datasets);
    CHECK(back.estimators == g.estimators);
    CHECK(back.master_seed == g.master_seed);
    CHECK(back.n == g.n);

    const auto from_range = grid_from_json(nlohmann::json::parse(R"({"k": {"from": 5, "to": 72, "steps": 9}})"));
    CHECK(from_range.k_values == geometric_int_grid(5, 72, 9));
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"k": []})")), ConfigError);
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"r": [1.5]})")), ConfigError);
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"k": "ten"})")), ConfigError);
    CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"variants": ["nope"]})")), ConfigError);
    CHECK(grid_from_json(nlohmann::json::parse(R"({"preset": "bag_count"})")).b_values.size() == 20);
}

TEST_CASE("shipped configs load") {
    const fs::path dir = BAGLID_CONFIG_DIR;
    const auto def = load_grid(dir / "default_grid.json");
    const auto want = SweepGrid::defaults();
    CHECK(def.k_values == want.k_values);
    CHECK(def.r_values == want.r_values);
    CHECK(def.datasets == want.datasets);
    CHECK(def.variants == want.variants);
    const auto bags = load_grid(dir / "bag_count.json");
    CHECK(bags.b_values == geometric_int_grid(3, 400, 20));
    CHECK(bags.estimators.size() == 2);
    CHECK(load_grid(dir / "quick.json").n == 1000);
    CHECK_THROWS_AS(load_grid(dir / "missing.json"), IoError);
}

TEST_CASE("rows plus skips cover the grid") {
    auto g = small_grid();
    g.k_values = {5, 10, 40};
    const auto res = run_sweep(g);
    CHECK(res.rows.size() + res.skipped.size() == res.grid_size);
    CHECK(res.grid_size == grid_cell_count(g));
    CHECK_FALSE(res.skipped.empty());
    for (const auto& s : res.skipped) CHECK(s.k == 40);
    for (const auto& r : res.rows) {
        CHECK(std::abs(r.mse - (r.var + r.bias_sq)) <= 1e-12 * r.mse);
        CHECK(r.wall_time_ms == 0.0);
        if (!is_bagged(r.variant)) {
            CHECK(r.r == 1.0);
            CHECK(r.bags == 1);
        }
    }
}

TEST_CASE("full-rate bagged rows equal baseline rows") {
    auto g = small_grid();
    g.r_values = {1.0};
    g.variants = {Variant::Baseline, Variant::Smoothed, Variant::Bagged, Variant::BaggedPost};
    const auto res = run_sweep(g);
    for (const auto& r : res.rows) {
        if (!is_bagged(r.variant)) continue;
        const auto want = r.variant == Variant::Bagged ? Variant::Baseline : Variant::Smoothed;
        bool found = false;
        for (const auto& b : res.rows)
            if (b.variant == want && b.dataset == r.dataset && b.estimator == r.estimator && b.k == r.k) {
                found = true;
                CHECK(b.mse == r.mse);
                CHECK(b.var == r.var);
                CHECK(b.bias_sq == r.bias_sq);
            }
        CHECK(found);
    }
    for (const auto& cell : heatmap_data(res.rows, HeatmapAxis::K)) {
        CHECK(cell.log_ratio == 0.0);
        CHECK_FALSE(cell.degenerate);
    }
}

TEST_CASE("sweeps are byte-stable across runs and thread counts") {
    const auto g = small_grid();
    const auto a = csv_of(run_sweep(g).rows);
    CHECK(a == csv_of(run_sweep(g).rows));
    SweepOptions threaded;
    threaded.threads = 3;
    CHECK(a == csv_of(run_sweep(g, threaded).rows));
    SweepOptions naive;
    naive.order_index_limit = 0;
    CHECK(a == csv_of(run_sweep(g, naive).rows));
}

TEST_CASE("smaller B uses a prefix of the larger B's bags") {
    auto g = small_grid();
    g.b_values = {2};
    g.variants = {Variant::Bagged, Variant::BaggedPre};
    const auto two = run_sweep(g).rows;
    g.b_values = {2, 4};
    const auto both = run_sweep(g).rows;
    for (const auto& r : two) {
        bool found = false;
        for (const auto& b : both)
            if (b.bags == 2 && b.variant == r.variant && b.dataset == r.dataset && b.estimator == r.estimator &&
                b.k == r.k && b.r == r.r) {
                found = true;
                CHECK(b.mse == r.mse);
            }
        CHECK(found);
    }
}

TEST_CASE("csv round trip") {
    const auto res = run_sweep(small_grid());
    const auto path = fs::temp_directory_path() / "baglid_sweep_test.csv";
    write_sweep_csv(res.rows, path);
    const auto back = read_sweep_csv(path);
    CHECK(csv_of(back) == csv_of(res.rows));
    fs::remove(path);
    std::istringstream header(csv_of({}));
    std::string line;
    std::getline(header, line);
    CHECK(line == "dataset,estimator,variant,k,r,B,seed,mse,var,bias_sq,divergent_count,wall_time_ms");
}

TEST_CASE("best per dataset picks the minimum") {
    const auto res = run_sweep(small_grid());
    const auto best = best_per_dataset(res.rows);
    CHECK(best.size() == 2 * 2 * 6);
    for (const auto& b : best)
        for (const auto& r : res.rows)
            if (r.dataset == b.dataset && r.estimator == b.estimator && r.variant == b.variant) CHECK(b.mse <= r.mse);
}

TEST_CASE("heatmap cells") {
    const auto rows = run_sweep(small_grid()).rows;
    const auto k_cells = heatmap_data(rows, HeatmapAxis::K);
    CHECK(k_cells.size() == 2 * 2 * 2 * 2 * 2);
    const auto b_cells = heatmap_data(rows, HeatmapAxis::Bags);
    for (const auto& c : b_cells) CHECK((c.y == 2 || c.y == 4));
    std::ostringstream out;
    write_heatmap_csv(k_cells, HeatmapAxis::K, out);
    CHECK(out.str().rfind("dataset,estimator,variant,k,r,log_ratio,degenerate\n", 0) == 0);
}

TEST_CASE("runtime report shape") {
    const auto cloud = generate({Dataset::M7_Roll, 300, 1});
    const auto rep = benchmark_runtime(cloud, 2, 0.2, {Method::Mle, 5, std::nullopt}, 1, 1);
    CHECK(rep.base_ms > 0.0);
    CHECK(rep.bagged_ms > 0.0);
    CHECK(rep.predicted_faster);
    CHECK_THROWS_AS(benchmark_runtime(cloud, 2, 0.2, {Method::Mle, 5, std::nullopt}, 1, 0), ConfigError);
}
