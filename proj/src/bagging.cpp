#include "baglid/bagging.hpp"

#include "baglid/errors.hpp"
#include "baglid/parallel.hpp"
#include "baglid/random.hpp"
#include "baglid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace baglid {

std::size_t bag_size(std::size_t n, double rate) {
    if (!(rate > 0.0) || rate > 1.0) throw ConfigError(fmt::format("sampling rate must lie in (0, 1], got {}", rate));
    const double product = static_cast<double>(n) * rate;
    const double nearest = std::round(product);
    if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, product)) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(product));
}

void BaggingConfig::validate(std::size_t n) const {
    if (bags < 1) throw ConfigError("number of bags must be at least 1");
    const std::size_t m = bag_size(n);
    if (m < 1 || m > n) throw ConfigError(fmt::format("bag size {} is outside [1, {}]", m, n));
}

BagIndexSet draw_bag(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t ordinal) {
    if (m > n) throw ConfigError(fmt::format("cannot draw {} distinct indices out of {}", m, n));
    auto eng = make_engine(seed, ordinal);
    std::vector<Index> pool(n);
    std::iota(pool.begin(), pool.end(), Index{0});
    // Partial Fisher-Yates: the first m slots end up a uniform m-subset.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(eng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<BagIndexSet> draw_bags(std::size_t n, const BaggingConfig& config) {
    config.validate(n);
    const std::size_t m = config.bag_size(n);
    std::vector<BagIndexSet> bags;
    bags.reserve(config.bags);
    for (std::size_t i = 0; i < config.bags; ++i) bags.push_back(draw_bag(n, m, config.seed, i));
    return bags;
}

LidEstimate aggregate(std::span<const LidEstimate> row, DivergencePolicy policy) {
    if (row.empty()) throw ConfigError("cannot aggregate an empty row of estimates");
    std::vector<double> all;
    std::vector<double> finite;
    all.reserve(row.size());
    std::size_t divergent = 0;
    std::size_t k_used = row.front().k_used;
    for (const auto& e : row) {
        all.push_back(e.value);
        if (e.divergent)
            ++divergent;
        else
            finite.push_back(e.value);
    }
    if (policy == DivergencePolicy::SkipDivergent && !finite.empty())
        return {stable_mean(finite), false, k_used};
    const bool flagged = policy == DivergencePolicy::Clamp ? divergent > 0 : true;
    return {stable_mean(all), flagged, k_used};
}

void check_bag_capacity(std::size_t k, std::size_t m) {
    if (k + 1 > m)
        throw CapacityError(fmt::format("k={} needs bags of at least {} points but bags hold {}; raise the sampling "
                                        "rate or lower k",
                                        k, k + 1, m));
}

BagNeighborhoods search_bags(const PointCloud& cloud, std::vector<BagIndexSet> bags, std::size_t k,
                             const SearchOptions& options) {
    BagNeighborhoods hoods;
    const auto queries = all_indices(cloud.size());
    for (const auto& bag : bags) {
        check_bag_capacity(k, bag.size());
        hoods.membership.push_back(membership_mask(cloud.size(), bag));
        hoods.tables.push_back(knn_table(cloud, bag, queries, k, options));
    }
    hoods.bags = std::move(bags);
    return hoods;
}

EstimateMatrix estimate_bags(const PointCloud& cloud, const BagNeighborhoods& hoods, const EstimatorConfig& est,
                             DivergencePolicy policy, std::size_t threads, std::size_t bag_count) {
    if (bag_count == 0) bag_count = hoods.tables.size();
    if (bag_count > hoods.tables.size()) throw ConfigError("requested more bags than were searched");
    if (est.k > hoods.k()) throw CapacityError("bag neighborhoods were searched with fewer neighbors than k");
    EstimateMatrix matrix(cloud.size(), bag_count);
    for (std::size_t b = 0; b < bag_count; ++b) {
        const auto column = estimate_table(cloud, hoods.tables[b], est, threads);
        for (std::size_t q = 0; q < column.size(); ++q) matrix.at(q, b) = column[q];
    }
    parallel_for(cloud.size(), threads, [&](std::size_t q) { matrix.aggregate()[q] = aggregate(matrix.row(q), policy); });
    return matrix;
}

EstimateMatrix bagged_estimate_all(const PointCloud& cloud, const EstimatorConfig& est,
                                   const BaggingConfig& bag_config, const SearchOptions& options) {
    est.validate();
    bag_config.validate(cloud.size());
    check_bag_capacity(est.k, bag_config.bag_size(cloud.size()));
    auto hoods = search_bags(cloud, draw_bags(cloud.size(), bag_config), est.k, options);
    return estimate_bags(cloud, hoods, est, bag_config.policy, options.threads);
}

} // namespace baglid
