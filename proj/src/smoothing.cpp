#include "baglid/smoothing.hpp"

#include "baglid/errors.hpp"
#include "baglid/parallel.hpp"
#include "baglid/stats.hpp"

#include <algorithm>
#include <string>

#include <fmt/format.h>

namespace baglid {

std::string_view to_string(SmoothingMode mode) noexcept {
    switch (mode) {
    case SmoothingMode::None: return "none";
    case SmoothingMode::BaselineSmooth: return "baseline_smooth";
    case SmoothingMode::Post: return "post";
    case SmoothingMode::Pre: return "pre";
    case SmoothingMode::PreAndPost: return "pre_and_post";
    }
    return "?";
}

SmoothingMode parse_smoothing_mode(std::string_view name) {
    for (auto mode : {SmoothingMode::None, SmoothingMode::BaselineSmooth, SmoothingMode::Post, SmoothingMode::Pre,
                      SmoothingMode::PreAndPost})
        if (name == to_string(mode)) return mode;
    throw ConfigError(fmt::format("unknown smoothing mode '{}'", name));
}

namespace {

void check_smoothing_capacity(std::size_t k_s, std::size_t reference_size) {
    if (k_s < 1 || k_s > reference_size)
        throw CapacityError(fmt::format("smoothing over k_s={} neighbors needs a reference of at least that size, "
                                        "got {}",
                                        k_s, reference_size));
}

LidEstimate neighborhood_mean(std::span<const Index> neighbors, std::span<const LidEstimate> values,
                              std::optional<Index> self, std::size_t k_s) {
    std::vector<double> pool;
    pool.reserve(k_s);
    bool divergent = false;
    if (self) {
        pool.push_back(values[*self].value);
        divergent = values[*self].divergent;
    }
    for (std::size_t i = 0; pool.size() < k_s; ++i) {
        const auto& v = values[neighbors[i]];
        pool.push_back(v.value);
        divergent = divergent || v.divergent;
    }
    return {stable_mean(pool), divergent, k_s};
}

std::size_t neighbors_needed(std::size_t k, std::size_t k_s) { return std::max(k, k_s); }

} // namespace

std::vector<LidEstimate> smooth(const PointCloud& cloud, std::span<const Index> reference,
                                std::span<const LidEstimate> values, std::span<const Query> queries,
                                std::size_t k_s) {
    if (reference.empty()) throw EmptyReferenceError("smoothing needs a nonempty reference");
    check_smoothing_capacity(k_s, reference.size());
    if (values.size() != cloud.size())
        throw DimensionMismatchError("smoothing needs one value slot per cloud point");
    const auto mask = membership_mask(cloud.size(), reference);
    std::vector<LidEstimate> out;
    out.reserve(queries.size());
    for (const auto& q : queries) {
        const bool member = q.index && mask[*q.index];
        const std::size_t others = member ? k_s - 1 : k_s;
        NeighborList nn;
        if (others > 0) nn = knn(cloud, reference, q, others);
        out.push_back(neighborhood_mean(nn.indices, values, member ? q.index : std::nullopt, k_s));
    }
    return out;
}

std::vector<LidEstimate> smooth_with_table(const NeighborTable& table, std::span<const char> membership,
                                           std::span<const Index> queries, std::span<const LidEstimate> values,
                                           std::size_t k_s, std::size_t threads) {
    const auto reference_size = static_cast<std::size_t>(std::count(membership.begin(), membership.end(), 1));
    check_smoothing_capacity(k_s, reference_size);
    if (table.rows() != queries.size()) throw DimensionMismatchError("neighbor table rows do not match the queries");
    std::vector<LidEstimate> out(queries.size());
    parallel_for(queries.size(), threads, [&](std::size_t row) {
        const Index q = queries[row];
        const bool member = membership[q] != 0;
        if ((member ? k_s - 1 : k_s) > table.k())
            throw CapacityError(fmt::format("smoothing needs {} neighbors but the table holds {}", k_s, table.k()));
        out[row] = neighborhood_mean(table.indices(row), values, member ? std::optional<Index>(q) : std::nullopt, k_s);
    });
    return out;
}

EstimateMatrix pre_smooth(const BagNeighborhoods& hoods, const EstimateMatrix& matrix, std::size_t k_s,
                          DivergencePolicy policy, std::size_t threads) {
    const std::size_t n = matrix.queries();
    const std::size_t bags = matrix.bags();
    const auto queries = all_indices(n);
    EstimateMatrix out(n, bags);
    std::vector<LidEstimate> column(n);
    for (std::size_t b = 0; b < bags; ++b) {
        for (std::size_t q = 0; q < n; ++q) column[q] = matrix.at(q, b);
        const auto smoothed = smooth_with_table(hoods.tables[b], hoods.membership[b], queries, column, k_s, threads);
        for (std::size_t q = 0; q < n; ++q) out.at(q, b) = smoothed[q];
    }
    parallel_for(n, threads, [&](std::size_t q) { out.aggregate()[q] = aggregate(out.row(q), policy); });
    return out;
}

std::vector<LidEstimate> baseline_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                         const SmoothingConfig& smoothing, const SearchOptions& options) {
    est.validate();
    const std::size_t k_s = smoothing.resolve(est.k);
    const auto everyone = all_indices(cloud.size());
    const auto table = knn_table(cloud, everyone, everyone, neighbors_needed(est.k, k_s), options);
    const auto base = estimate_table(cloud, table, est, options.threads);
    const auto mask = membership_mask(cloud.size(), everyone);
    return smooth_with_table(table, mask, everyone, base, k_s, options.threads);
}

namespace {

struct BaggedRun {
    BagNeighborhoods hoods;
    EstimateMatrix matrix;
};

BaggedRun run_bags(const PointCloud& cloud, const EstimatorConfig& est, const BaggingConfig& bag_config,
                   std::size_t k_s, const SearchOptions& options) {
    est.validate();
    bag_config.validate(cloud.size());
    const std::size_t m = bag_config.bag_size(cloud.size());
    check_bag_capacity(est.k, m);
    check_smoothing_capacity(k_s, m);
    BaggedRun run;
    run.hoods = search_bags(cloud, draw_bags(cloud.size(), bag_config), neighbors_needed(est.k, k_s), options);
    run.matrix = estimate_bags(cloud, run.hoods, est, bag_config.policy, options.threads);
    return run;
}

std::vector<LidEstimate> post_smooth(const PointCloud& cloud, std::span<const LidEstimate> values, std::size_t k_s,
                                     const SearchOptions& options) {
    const auto everyone = all_indices(cloud.size());
    const auto table = knn_table(cloud, everyone, everyone, std::max<std::size_t>(k_s, 1), options);
    const auto mask = membership_mask(cloud.size(), everyone);
    return smooth_with_table(table, mask, everyone, values, k_s, options.threads);
}

} // namespace

std::vector<LidEstimate> bagged_post_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                            const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                            const SearchOptions& options) {
    const std::size_t k_s = smoothing.resolve(est.k);
    const auto run = run_bags(cloud, est, bag_config, k_s, options);
    return post_smooth(cloud, run.matrix.aggregate(), k_s, options);
}

std::vector<LidEstimate> bagged_pre_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                           const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                           const SearchOptions& options) {
    const std::size_t k_s = smoothing.resolve(est.k);
    const auto run = run_bags(cloud, est, bag_config, k_s, options);
    const auto pre = pre_smooth(run.hoods, run.matrix, k_s, bag_config.policy, options.threads);
    return {pre.aggregate().begin(), pre.aggregate().end()};
}

std::vector<LidEstimate> bagged_pre_post_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                                const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                                const SearchOptions& options) {
    const std::size_t k_s = smoothing.resolve(est.k);
    const auto run = run_bags(cloud, est, bag_config, k_s, options);
    const auto pre = pre_smooth(run.hoods, run.matrix, k_s, bag_config.policy, options.threads);
    return post_smooth(cloud, pre.aggregate(), k_s, options);
}

std::vector<LidEstimate> estimate_variant(const PointCloud& cloud, const EstimatorConfig& est,
                                          const std::optional<BaggingConfig>& bag_config,
                                          const SmoothingConfig& smoothing, const SearchOptions& options) {
    if (!bag_config) {
        switch (smoothing.mode) {
        case SmoothingMode::None: return estimate_all(cloud, est, options);
        case SmoothingMode::BaselineSmooth: return baseline_smooth(cloud, est, smoothing, options);
        default:
            throw ConfigError(fmt::format("smoothing mode '{}' requires bagging", to_string(smoothing.mode)));
        }
    }
    switch (smoothing.mode) {
    case SmoothingMode::None: {
        const auto m = bagged_estimate_all(cloud, est, *bag_config, options);
        return {m.aggregate().begin(), m.aggregate().end()};
    }
    case SmoothingMode::Post: return bagged_post_smooth(cloud, est, *bag_config, smoothing, options);
    case SmoothingMode::Pre: return bagged_pre_smooth(cloud, est, *bag_config, smoothing, options);
    case SmoothingMode::PreAndPost: return bagged_pre_post_smooth(cloud, est, *bag_config, smoothing, options);
    case SmoothingMode::BaselineSmooth: throw ConfigError("baseline_smooth cannot be combined with bagging");
    }
    throw ConfigError("unknown smoothing mode");
}

} // namespace baglid
