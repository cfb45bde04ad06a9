#pragma once

#include "baglid/bagging.hpp"
#include "baglid/datasets.hpp"
#include "baglid/estimators.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace baglid {

enum class Variant { Baseline, Smoothed, Bagged, BaggedPost, BaggedPre, BaggedPrePost };

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view name);
bool is_bagged(Variant v) noexcept;
const std::vector<Variant>& all_variants();

/// a * (b / a)^(i / (steps - 1)) for i = 0..steps-1.
std::vector<double> geometric_grid(double from, double to, std::size_t steps);
/// Geometric grid rounded to the nearest integer, duplicates removed.
std::vector<std::size_t> geometric_int_grid(double from, double to, std::size_t steps);

struct SweepGrid {
    std::vector<std::size_t> k_values;
    std::vector<double> r_values;
    std::vector<std::size_t> b_values;
    std::vector<Variant> variants;
    std::vector<Dataset> datasets;
    std::vector<Method> estimators;
    std::uint64_t master_seed = 0;
    std::size_t n = 2500;
    std::size_t k_s = 0; // 0: same as k
    DivergencePolicy policy = DivergencePolicy::Clamp;

    /// k from 5 to 72 and r from 0.042 to 0.6 in 9 geometric steps, B = 10,
    /// all six variants, all datasets, MLE.
    static SweepGrid defaults();
    /// r = 0.05, k = 10, B from 3 to 400 in 20 geometric steps, bagged only.
    static SweepGrid bag_count_defaults();
    void validate() const;
};

/// Fields absent from the document keep their defaults(). See README for the schema.
SweepGrid grid_from_json(const nlohmann::json& doc);
nlohmann::json grid_to_json(const SweepGrid& grid);
SweepGrid load_grid(const std::filesystem::path& path);

struct SweepRow {
    std::string dataset;
    Method estimator = Method::Mle;
    Variant variant = Variant::Baseline;
    std::size_t k = 0;
    double r = 1.0; // 1 for unbagged variants
    std::size_t bags = 1;
    std::uint64_t seed = 0;
    double mse = 0.0;
    double var = 0.0;
    double bias_sq = 0.0;
    std::size_t divergent_count = 0;
    double wall_time_ms = 0.0;
};

struct SkippedCell {
    std::string dataset;
    Method estimator = Method::Mle;
    Variant variant = Variant::Baseline;
    std::size_t k = 0;
    double r = 1.0;
    std::size_t bags = 1;
    std::string reason;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SkippedCell> skipped;
    std::size_t grid_size = 0;
};

/// Cells in a grid: unbagged variants contribute |k| cells, bagged ones |k| x |r| x |B|.
std::size_t grid_cell_count(const SweepGrid& grid);

struct SweepOptions {
    std::size_t threads = 1;
    /// Fill wall_time_ms; otherwise it is written as 0 so output is byte-stable.
    bool measure_time = false;
    /// Use the precomputed neighbor ordering for clouds up to this size.
    std::size_t order_index_limit = 6000;
    /// Called after each dataset with its name.
    void (*progress)(std::string_view) = nullptr;
};

/// Evaluates every grid cell. Per (dataset, r) the largest B's bags are drawn
/// once (bag i depends only on the seeds and i) and smaller B use a prefix,
/// so all variants, k and B values share the same bags.
SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

/// Rows in canonical order (dataset table order, estimator, variant, k, r, B).
void sort_rows(std::vector<SweepRow>& rows);

inline constexpr int sweep_schema_version = 1;
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);
void write_skipped_csv(const std::vector<SkippedCell>& skipped, const std::filesystem::path& path);

/// Lowest-MSE row per (dataset, estimator, variant).
std::vector<SweepRow> best_per_dataset(const std::vector<SweepRow>& rows);
void write_best_csv(const std::vector<SweepRow>& best, const std::filesystem::path& path);

enum class HeatmapAxis { K, Bags };

struct HeatmapCell {
    std::string dataset;
    Method estimator = Method::Mle;
    Variant variant = Variant::Bagged;
    std::size_t y = 0; // k or B
    double r = 0.0;
    double log_ratio = 0.0; // ln(MSE_baseline / MSE_variant) at the same k
    bool degenerate = false;
};

/// One log-ratio per (r, k) or (r, B) cell of `variant` rows, against the
/// baseline row with the same dataset, estimator and k.
std::vector<HeatmapCell> heatmap_data(const std::vector<SweepRow>& rows, HeatmapAxis axis,
                                      Variant variant = Variant::Bagged);
void write_heatmap_csv(const std::vector<HeatmapCell>& cells, HeatmapAxis axis, std::ostream& out);
void write_heatmap_csv(const std::vector<HeatmapCell>& cells, HeatmapAxis axis, const std::filesystem::path& path);

struct RuntimeReport {
    std::size_t n = 0;
    std::size_t bags = 0;
    double rate = 0.0;
    Method estimator = Method::Mle;
    double base_ms = 0.0;
    double bagged_ms = 0.0;
    bool predicted_faster = false; // r * B < 1
    bool observed_faster = false;

    bool matches_prediction() const noexcept { return predicted_faster == observed_faster; }
};

/// Times baseline and bagged estimation over every point with exhaustive
/// search. One warmup run is discarded; the median of `repeats` is kept.
RuntimeReport benchmark_runtime(const PointCloud& cloud, std::size_t bags, double rate, const EstimatorConfig& est,
                                std::uint64_t seed, std::size_t repeats = 3, std::size_t threads = 1);

std::string format_double(double v);

} // namespace baglid
