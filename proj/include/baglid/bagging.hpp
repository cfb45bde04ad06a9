#pragma once

#include "baglid/estimators.hpp"
#include "baglid/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace baglid {

/// How divergent single-bag estimates enter the bag average.
enum class DivergencePolicy {
    Clamp,         ///< clamped values join the mean; any divergent entry flags the result
    SkipDivergent, ///< mean over finite entries; flagged only when every entry diverged
};

/// Bag size m = ceil(n * rate). Products within 1e-9 of an integer are
/// snapped to it so that decimal rates such as 0.042 * 2500 give 105, not 106.
std::size_t bag_size(std::size_t n, double rate);

struct BaggingConfig {
    std::size_t bags = 10;
    double rate = 0.1;
    std::uint64_t seed = 0;
    DivergencePolicy policy = DivergencePolicy::Clamp;

    std::size_t bag_size(std::size_t n) const { return baglid::bag_size(n, rate); }
    void validate(std::size_t n) const;
};

/// Indices of one bag, ascending and distinct.
using BagIndexSet = std::vector<Index>;

/// Bag `ordinal` of size m, uniform over all m-subsets of [0, n). Depends
/// only on (n, m, seed, ordinal).
BagIndexSet draw_bag(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t ordinal);

std::vector<BagIndexSet> draw_bags(std::size_t n, const BaggingConfig& config);

/// Per-query x per-bag estimates and their per-query aggregate.
class EstimateMatrix {
public:
    EstimateMatrix() = default;
    EstimateMatrix(std::size_t queries, std::size_t bags)
        : queries_(queries), bags_(bags), per_bag_(queries * bags), aggregate_(queries) {}

    std::size_t queries() const noexcept { return queries_; }
    std::size_t bags() const noexcept { return bags_; }

    std::span<const LidEstimate> row(std::size_t q) const { return {per_bag_.data() + q * bags_, bags_}; }
    LidEstimate& at(std::size_t q, std::size_t b) { return per_bag_[q * bags_ + b]; }
    const LidEstimate& at(std::size_t q, std::size_t b) const { return per_bag_[q * bags_ + b]; }

    std::span<const LidEstimate> aggregate() const noexcept { return aggregate_; }
    std::span<LidEstimate> aggregate() noexcept { return aggregate_; }

    friend bool operator==(const EstimateMatrix&, const EstimateMatrix&) = default;

private:
    std::size_t queries_ = 0;
    std::size_t bags_ = 0;
    std::vector<LidEstimate> per_bag_;
    std::vector<LidEstimate> aggregate_;
};

/// Bag average of one query's single-bag estimates.
LidEstimate aggregate(std::span<const LidEstimate> row, DivergencePolicy policy = DivergencePolicy::Clamp);

/// Neighbor tables of every cloud point inside every bag, searched once and
/// shared by all estimators and smoothing variants that use the same bags.
struct BagNeighborhoods {
    std::vector<BagIndexSet> bags;
    std::vector<std::vector<char>> membership; // per bag, mask over the cloud
    std::vector<NeighborTable> tables;         // per bag, one row per cloud point

    std::size_t k() const noexcept { return tables.empty() ? 0 : tables.front().k(); }
};

/// Searches `k` neighbors of each cloud point within each bag. A point inside
/// a bag is never its own neighbor.
BagNeighborhoods search_bags(const PointCloud& cloud, std::vector<BagIndexSet> bags, std::size_t k,
                             const SearchOptions& options = {});

/// Single-bag estimates for the first `bag_count` bags (all when 0) and their
/// aggregate.
EstimateMatrix estimate_bags(const PointCloud& cloud, const BagNeighborhoods& hoods, const EstimatorConfig& est,
                             DivergencePolicy policy, std::size_t threads = 1, std::size_t bag_count = 0);

/// Bagged estimate at every point of the cloud: draws the bags once, then for
/// each bag estimates in-bag queries from the bag minus the query and
/// out-of-bag queries from the full bag, then averages across bags.
EstimateMatrix bagged_estimate_all(const PointCloud& cloud, const EstimatorConfig& est,
                                   const BaggingConfig& bag_config, const SearchOptions& options = {});

/// Throws CapacityError when k neighbors cannot be found inside bags of size m.
void check_bag_capacity(std::size_t k, std::size_t m);

} // namespace baglid
