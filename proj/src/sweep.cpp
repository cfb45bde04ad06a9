#include "baglid/sweep.hpp"

#include "baglid/errors.hpp"
#include "baglid/evaluation.hpp"
#include "baglid/parallel.hpp"
#include "baglid/random.hpp"
#include "baglid/smoothing.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace baglid {

std::string_view to_string(Variant v) noexcept {
    switch (v) {
    case Variant::Baseline: return "baseline";
    case Variant::Smoothed: return "smoothed";
    case Variant::Bagged: return "bagged";
    case Variant::BaggedPost: return "bagged_post";
    case Variant::BaggedPre: return "bagged_pre";
    case Variant::BaggedPrePost: return "bagged_pre_post";
    }
    return "?";
}

const std::vector<Variant>& all_variants() {
    static const std::vector<Variant> variants = {Variant::Baseline,   Variant::Smoothed,  Variant::Bagged,
                                                  Variant::BaggedPost, Variant::BaggedPre, Variant::BaggedPrePost};
    return variants;
}

Variant parse_variant(std::string_view name) {
    for (auto v : all_variants())
        if (to_string(v) == name) return v;
    throw ConfigError(fmt::format("unknown variant '{}'", name));
}

bool is_bagged(Variant v) noexcept { return v != Variant::Baseline && v != Variant::Smoothed; }

std::vector<double> geometric_grid(double from, double to, std::size_t steps) {
    if (steps == 0) throw ConfigError("a grid needs at least one step");
    if (!(from > 0.0) || !(to > 0.0)) throw ConfigError("geometric grid endpoints must be positive");
    if (steps == 1) return {from};
    std::vector<double> out;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
        out.push_back(from * std::pow(to / from, t));
    }
    out.back() = to;
    return out;
}

std::vector<std::size_t> geometric_int_grid(double from, double to, std::size_t steps) {
    std::vector<std::size_t> out;
    for (double v : geometric_grid(from, to, steps)) {
        const auto k = static_cast<std::size_t>(std::llround(v));
        if (out.empty() || out.back() != k) out.push_back(k);
    }
    return out;
}

SweepGrid SweepGrid::defaults() {
    SweepGrid g;
    g.k_values = geometric_int_grid(5, 72, 9);
    g.r_values = geometric_grid(0.042, 0.6, 9);
    g.b_values = {10};
    g.variants = all_variants();
    for (const auto& info : all_datasets()) g.datasets.push_back(info.id);
    g.estimators = {Method::Mle};
    return g;
}

SweepGrid SweepGrid::bag_count_defaults() {
    SweepGrid g = defaults();
    g.k_values = {10};
    g.r_values = {0.05};
    g.b_values = geometric_int_grid(3, 400, 20);
    g.variants = {Variant::Bagged};
    return g;
}

void SweepGrid::validate() const {
    if (k_values.empty() || variants.empty() || datasets.empty() || estimators.empty())
        throw ConfigError("sweep grid lists must be nonempty");
    const bool any_bagged = std::any_of(variants.begin(), variants.end(), is_bagged);
    if (any_bagged && (r_values.empty() || b_values.empty()))
        throw ConfigError("bagged variants need nonempty r and B lists");
    for (auto k : k_values)
        if (k < 2) throw ConfigError(fmt::format("k values must be >= 2, got {}", k));
    for (double r : r_values)
        if (!(r > 0.0) || r > 1.0) throw ConfigError(fmt::format("r values must lie in (0, 1], got {}", r));
    for (auto b : b_values)
        if (b < 1) throw ConfigError("B values must be >= 1");
    if (n < 2) throw ConfigError("sweep datasets need at least two points");
}

// ---------------------------------------------------------------------------
// config documents

namespace {

template <class T>
std::vector<T> read_list(const nlohmann::json& v) {
    return v.get<std::vector<T>>();
}

std::vector<double> read_real_axis(const nlohmann::json& v) {
    if (v.is_array()) return read_list<double>(v);
    return geometric_grid(v.at("from").get<double>(), v.at("to").get<double>(), v.at("steps").get<std::size_t>());
}

std::vector<std::size_t> read_int_axis(const nlohmann::json& v) {
    if (v.is_array()) return read_list<std::size_t>(v);
    return geometric_int_grid(v.at("from").get<double>(), v.at("to").get<double>(), v.at("steps").get<std::size_t>());
}

} // namespace

SweepGrid grid_from_json(const nlohmann::json& doc) {
    SweepGrid g = SweepGrid::defaults();
    try {
        if (doc.contains("preset")) {
            const auto preset = doc["preset"].get<std::string>();
            if (preset == "bag_count")
                g = SweepGrid::bag_count_defaults();
            else if (preset != "default")
                throw ConfigError(fmt::format("unknown preset '{}'", preset));
        }
        if (doc.contains("k")) g.k_values = read_int_axis(doc["k"]);
        if (doc.contains("r")) g.r_values = read_real_axis(doc["r"]);
        if (doc.contains("B")) g.b_values = read_int_axis(doc["B"]);
        if (doc.contains("variants")) {
            g.variants.clear();
            for (const auto& s : read_list<std::string>(doc["variants"])) g.variants.push_back(parse_variant(s));
        }
        if (doc.contains("datasets")) {
            g.datasets.clear();
            if (doc["datasets"].is_string() && doc["datasets"].get<std::string>() == "all") {
                for (const auto& info : all_datasets()) g.datasets.push_back(info.id);
            } else {
                for (const auto& s : read_list<std::string>(doc["datasets"])) g.datasets.push_back(parse_dataset(s));
            }
        }
        if (doc.contains("estimators")) {
            g.estimators.clear();
            for (const auto& s : read_list<std::string>(doc["estimators"])) g.estimators.push_back(parse_method(s));
        }
        if (doc.contains("master_seed")) g.master_seed = doc["master_seed"].get<std::uint64_t>();
        if (doc.contains("n")) g.n = doc["n"].get<std::size_t>();
        if (doc.contains("k_s")) g.k_s = doc["k_s"].get<std::size_t>();
        if (doc.contains("divergence_policy")) {
            const auto p = doc["divergence_policy"].get<std::string>();
            if (p == "clamp")
                g.policy = DivergencePolicy::Clamp;
            else if (p == "skip")
                g.policy = DivergencePolicy::SkipDivergent;
            else
                throw ConfigError(fmt::format("unknown divergence policy '{}'", p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("malformed sweep config: {}", e.what()));
    }
    g.validate();
    return g;
}

nlohmann::json grid_to_json(const SweepGrid& grid) {
    nlohmann::json doc;
    doc["k"] = grid.k_values;
    doc["r"] = grid.r_values;
    doc["B"] = grid.b_values;
    for (auto v : grid.variants) doc["variants"].push_back(std::string(to_string(v)));
    for (auto d : grid.datasets) doc["datasets"].push_back(std::string(dataset_info(d).name));
    for (auto m : grid.estimators) doc["estimators"].push_back(std::string(to_string(m)));
    doc["master_seed"] = grid.master_seed;
    doc["n"] = grid.n;
    doc["k_s"] = grid.k_s;
    doc["divergence_policy"] = grid.policy == DivergencePolicy::Clamp ? "clamp" : "skip";
    return doc;
}

SweepGrid load_grid(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("cannot parse '{}': {}", path.string(), e.what()));
    }
    return grid_from_json(doc);
}

std::size_t grid_cell_count(const SweepGrid& grid) {
    std::size_t per_pair = 0;
    for (auto v : grid.variants)
        per_pair += is_bagged(v) ? grid.k_values.size() * grid.r_values.size() * grid.b_values.size()
                                 : grid.k_values.size();
    return per_pair * grid.datasets.size() * grid.estimators.size();
}

// ---------------------------------------------------------------------------
// sweep

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t dataset_seed(std::uint64_t master, Dataset d) {
    return derive_seed(master, 0x1000 + static_cast<std::uint64_t>(d));
}

// Bags depend on the dataset and the rate value, not on the grid layout.
std::uint64_t bag_seed(std::uint64_t master, Dataset d, double r) {
    return derive_seed(dataset_seed(master, d), std::bit_cast<std::uint64_t>(r));
}

std::vector<LidEstimate> prefix_aggregate(const EstimateMatrix& matrix, std::size_t bags, DivergencePolicy policy,
                                          std::size_t threads) {
    std::vector<LidEstimate> out(matrix.queries());
    parallel_for(matrix.queries(), threads,
                 [&](std::size_t q) { out[q] = aggregate(matrix.row(q).first(bags), policy); });
    return out;
}

class DatasetSweep {
public:
    DatasetSweep(const SweepGrid& grid, const SweepOptions& options, Dataset dataset, SweepResult& result)
        : grid_(grid), options_(options), dataset_(dataset), name_(dataset_info(dataset).name), result_(result) {}

    void run() {
        cloud_ = generate({dataset_, grid_.n, dataset_seed(grid_.master_seed, dataset_)});
        const std::size_t n = cloud_.size();
        if (n <= options_.order_index_limit) order_ = NeighborOrder::build(cloud_, options_.threads);
        search_.threads = options_.threads;
        search_.order = n <= options_.order_index_limit ? &order_ : nullptr;
        everyone_ = all_indices(n);
        everyone_mask_ = membership_mask(n, everyone_);

        std::size_t depth = 0;
        for (auto k : grid_.k_values) depth = std::max({depth, k, k_s(k)});
        full_ = knn_table(cloud_, everyone_, everyone_, std::min(depth, n - 1), search_);

        for (auto method : grid_.estimators) run_estimator(method);
    }

private:
    std::size_t k_s(std::size_t k) const { return grid_.k_s == 0 ? k : grid_.k_s; }

    bool wants(Variant v) const {
        return std::find(grid_.variants.begin(), grid_.variants.end(), v) != grid_.variants.end();
    }

    void skip(Method method, Variant v, std::size_t k, double r, std::size_t bags, std::string reason) {
        result_.skipped.push_back({std::string(name_), method, v, k, r, bags, std::move(reason)});
    }

    void emit(Method method, Variant v, std::size_t k, double r, std::size_t bags,
              std::span<const LidEstimate> estimates, double ms) {
        const auto dec = decompose(estimates, cloud_);
        SweepRow row;
        row.dataset = std::string(name_);
        row.estimator = method;
        row.variant = v;
        row.k = k;
        row.r = r;
        row.bags = bags;
        row.seed = grid_.master_seed;
        row.mse = dec.total_mse;
        row.var = dec.total_var;
        row.bias_sq = dec.total_bias_sq;
        row.divergent_count = dec.divergent_count;
        row.wall_time_ms = options_.measure_time ? ms : 0.0;
        result_.rows.push_back(std::move(row));
    }

    void run_estimator(Method method) {
        const std::size_t n = cloud_.size();
        for (auto k : grid_.k_values) {
            const bool want_base = wants(Variant::Baseline);
            const bool want_smooth = wants(Variant::Smoothed);
            if (!want_base && !want_smooth) break;
            if (k > full_.k() || k_s(k) > n) {
                const auto reason = fmt::format("k={} exceeds the {} other points available", k, n - 1);
                if (want_base) skip(method, Variant::Baseline, k, 1.0, 1, reason);
                if (want_smooth) skip(method, Variant::Smoothed, k, 1.0, 1, reason);
                continue;
            }
            const EstimatorConfig est{method, k, std::nullopt};
            auto start = Clock::now();
            std::vector<LidEstimate> base;
            try {
                base = estimate_table(cloud_, full_, est, options_.threads);
            } catch (const Error& e) {
                if (want_base) skip(method, Variant::Baseline, k, 1.0, 1, e.what());
                if (want_smooth) skip(method, Variant::Smoothed, k, 1.0, 1, e.what());
                continue;
            }
            const double base_ms = elapsed_ms(start);
            if (want_base) emit(method, Variant::Baseline, k, 1.0, 1, base, base_ms);
            if (want_smooth) {
                start = Clock::now();
                const auto smoothed =
                    smooth_with_table(full_, everyone_mask_, everyone_, base, k_s(k), options_.threads);
                emit(method, Variant::Smoothed, k, 1.0, 1, smoothed, base_ms + elapsed_ms(start));
            }
        }

        std::vector<Variant> bagged;
        for (auto v : grid_.variants)
            if (is_bagged(v)) bagged.push_back(v);
        if (bagged.empty()) return;
        for (double r : grid_.r_values) run_rate(method, r, bagged);
    }

    void run_rate(Method method, double r, const std::vector<Variant>& variants) {
        const std::size_t n = cloud_.size();
        const std::size_t m = bag_size(n, r);
        const std::size_t max_bags = *std::max_element(grid_.b_values.begin(), grid_.b_values.end());

        std::vector<std::size_t> feasible;
        std::size_t depth = 0;
        for (auto k : grid_.k_values) {
            if (k + 1 > m || k_s(k) + 1 > m || k_s(k) > full_.k() + 1) {
                const auto reason = fmt::format("k={} (k_s={}) needs bags larger than m={}; raise r or lower k", k,
                                                k_s(k), m);
                for (auto v : variants)
                    for (auto b : grid_.b_values) skip(method, v, k, r, b, reason);
                continue;
            }
            feasible.push_back(k);
            depth = std::max({depth, k, k_s(k)});
        }
        if (feasible.empty()) return;
        depth = std::min(depth, m - 1);

        BaggingConfig cfg;
        cfg.bags = max_bags;
        cfg.rate = r;
        cfg.seed = bag_seed(grid_.master_seed, dataset_, r);
        cfg.policy = grid_.policy;
        auto start = Clock::now();
        const auto hoods = search_bags(cloud_, draw_bags(n, cfg), depth, search_);
        const double search_ms = elapsed_ms(start);

        for (auto k : feasible) {
            const EstimatorConfig est{method, k, std::nullopt};
            start = Clock::now();
            EstimateMatrix matrix;
            try {
                matrix = estimate_bags(cloud_, hoods, est, grid_.policy, options_.threads);
            } catch (const Error& e) {
                for (auto v : variants)
                    for (auto b : grid_.b_values) skip(method, v, k, r, b, e.what());
                continue;
            }
            const double estimate_ms = search_ms + elapsed_ms(start);

            std::optional<EstimateMatrix> pre;
            double pre_ms = 0.0;
            const bool want_pre = std::any_of(variants.begin(), variants.end(), [](Variant v) {
                return v == Variant::BaggedPre || v == Variant::BaggedPrePost;
            });
            if (want_pre) {
                start = Clock::now();
                pre = pre_smooth(hoods, matrix, k_s(k), grid_.policy, options_.threads);
                pre_ms = elapsed_ms(start);
            }

            for (auto b : grid_.b_values) {
                for (auto v : variants) {
                    start = Clock::now();
                    std::vector<LidEstimate> values;
                    double shared = estimate_ms;
                    switch (v) {
                    case Variant::Bagged: values = prefix_aggregate(matrix, b, grid_.policy, options_.threads); break;
                    case Variant::BaggedPost:
                        values = post(prefix_aggregate(matrix, b, grid_.policy, options_.threads), k);
                        break;
                    case Variant::BaggedPre:
                        values = prefix_aggregate(*pre, b, grid_.policy, options_.threads);
                        shared += pre_ms;
                        break;
                    case Variant::BaggedPrePost:
                        values = post(prefix_aggregate(*pre, b, grid_.policy, options_.threads), k);
                        shared += pre_ms;
                        break;
                    default: continue;
                    }
                    emit(method, v, k, r, b, values, shared + elapsed_ms(start));
                }
            }
        }
    }

    std::vector<LidEstimate> post(const std::vector<LidEstimate>& values, std::size_t k) const {
        return smooth_with_table(full_, everyone_mask_, everyone_, values, k_s(k), options_.threads);
    }

    const SweepGrid& grid_;
    const SweepOptions& options_;
    Dataset dataset_;
    std::string_view name_;
    SweepResult& result_;
    PointCloud cloud_;
    NeighborOrder order_;
    SearchOptions search_;
    std::vector<Index> everyone_;
    std::vector<char> everyone_mask_;
    NeighborTable full_;
};

} // namespace

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options) {
    grid.validate();
    SweepResult result;
    result.grid_size = grid_cell_count(grid);
    for (auto d : grid.datasets) {
        DatasetSweep(grid, options, d, result).run();
        if (options.progress) options.progress(dataset_info(d).name);
    }
    sort_rows(result.rows);
    return result;
}

namespace {

std::size_t dataset_rank(std::string_view name) {
    for (const auto& info : all_datasets())
        if (info.name == name) return static_cast<std::size_t>(info.id);
    return all_datasets().size();
}

auto row_key(const SweepRow& r) {
    return std::make_tuple(dataset_rank(r.dataset), r.dataset, static_cast<int>(r.estimator),
                           static_cast<int>(r.variant), r.k, r.r, r.bags, r.seed);
}

} // namespace

void sort_rows(std::vector<SweepRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return row_key(a) < row_key(b); });
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view sweep_header = "dataset,estimator,variant,k,r,B,seed,mse,var,bias_sq,divergent_count,wall_time_ms";

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

} // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << sweep_header << '\n';
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.dataset, to_string(r.estimator),
                           to_string(r.variant), r.k, format_double(r.r), r.bags, r.seed, format_double(r.mse),
                           format_double(r.var), format_double(r.bias_sq), r.divergent_count,
                           format_double(r.wall_time_ms));
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_sweep_csv(rows, out);
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    std::string line;
    if (!std::getline(in, line) || line != sweep_header)
        throw IoError(fmt::format("'{}' is not a sweep result file", path.string()));
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 12) throw IoError(fmt::format("sweep row has {} cells, expected 12", c.size()));
        try {
            SweepRow r;
            r.dataset = c[0];
            r.estimator = parse_method(c[1]);
            r.variant = parse_variant(c[2]);
            r.k = std::stoull(c[3]);
            r.r = std::stod(c[4]);
            r.bags = std::stoull(c[5]);
            r.seed = std::stoull(c[6]);
            r.mse = std::stod(c[7]);
            r.var = std::stod(c[8]);
            r.bias_sq = std::stod(c[9]);
            r.divergent_count = std::stoull(c[10]);
            r.wall_time_ms = std::stod(c[11]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error& e) {
            throw IoError(fmt::format("malformed sweep row '{}': {}", line, e.what()));
        }
    }
    return rows;
}

void write_skipped_csv(const std::vector<SkippedCell>& skipped, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "dataset,estimator,variant,k,r,B,reason\n";
    for (const auto& s : skipped) {
        std::string reason = s.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        out << fmt::format("{},{},{},{},{},{},{}\n", s.dataset, to_string(s.estimator), to_string(s.variant), s.k,
                           format_double(s.r), s.bags, reason);
    }
}

std::vector<SweepRow> best_per_dataset(const std::vector<SweepRow>& rows) {
    std::map<std::tuple<std::size_t, std::string, int, int>, SweepRow> best;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(dataset_rank(r.dataset), r.dataset, static_cast<int>(r.estimator),
                                         static_cast<int>(r.variant));
        auto it = best.find(key);
        if (it == best.end() || r.mse < it->second.mse) best[key] = r;
    }
    std::vector<SweepRow> out;
    for (auto& [key, row] : best) out.push_back(row);
    return out;
}

void write_best_csv(const std::vector<SweepRow>& best, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_sweep_csv(best, out);
}

std::vector<HeatmapCell> heatmap_data(const std::vector<SweepRow>& rows, HeatmapAxis axis, Variant variant) {
    std::map<std::tuple<std::string, int, std::size_t>, double> baseline;
    for (const auto& r : rows)
        if (r.variant == Variant::Baseline)
            baseline[{r.dataset, static_cast<int>(r.estimator), r.k}] = r.mse;

    std::vector<HeatmapCell> cells;
    for (const auto& r : rows) {
        if (r.variant != variant) continue;
        const auto it = baseline.find({r.dataset, static_cast<int>(r.estimator), r.k});
        if (it == baseline.end()) continue;
        HeatmapCell cell;
        cell.dataset = r.dataset;
        cell.estimator = r.estimator;
        cell.variant = variant;
        cell.y = axis == HeatmapAxis::K ? r.k : r.bags;
        cell.r = r.r;
        const auto lr = log_ratio(it->second, r.mse);
        cell.log_ratio = lr.value;
        cell.degenerate = lr.degenerate;
        cells.push_back(std::move(cell));
    }
    return cells;
}

void write_heatmap_csv(const std::vector<HeatmapCell>& cells, HeatmapAxis axis, std::ostream& out) {
    out << "dataset,estimator,variant," << (axis == HeatmapAxis::K ? "k" : "B") << ",r,log_ratio,degenerate\n";
    for (const auto& c : cells)
        out << fmt::format("{},{},{},{},{},{},{}\n", c.dataset, to_string(c.estimator), to_string(c.variant), c.y,
                           format_double(c.r), format_double(c.log_ratio), c.degenerate ? 1 : 0);
}

void write_heatmap_csv(const std::vector<HeatmapCell>& cells, HeatmapAxis axis, const std::filesystem::path& path) {
    auto out = open_out(path);
    write_heatmap_csv(cells, axis, out);
}

// ---------------------------------------------------------------------------
// runtime

RuntimeReport benchmark_runtime(const PointCloud& cloud, std::size_t bags, double rate, const EstimatorConfig& est,
                                std::uint64_t seed, std::size_t repeats, std::size_t threads) {
    if (repeats < 1) throw ConfigError("need at least one timing repeat");
    const SearchOptions naive{threads, nullptr};
    BaggingConfig cfg;
    cfg.bags = bags;
    cfg.rate = rate;
    cfg.seed = seed;

    auto median_ms = [&](auto&& work) {
        work(); // warmup
        std::vector<double> times;
        for (std::size_t i = 0; i < repeats; ++i) {
            const auto start = Clock::now();
            work();
            times.push_back(elapsed_ms(start));
        }
        std::sort(times.begin(), times.end());
        return times[times.size() / 2];
    };

    RuntimeReport report;
    report.n = cloud.size();
    report.bags = bags;
    report.rate = rate;
    report.estimator = est.method;
    report.base_ms = median_ms([&] { (void)estimate_all(cloud, est, naive); });
    report.bagged_ms = median_ms([&] { (void)bagged_estimate_all(cloud, est, cfg, naive); });
    report.predicted_faster = rate * static_cast<double>(bags) < 1.0;
    report.observed_faster = report.bagged_ms < report.base_ms;
    return report;
}

} // namespace baglid
