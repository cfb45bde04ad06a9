#pragma once

#include "baglid/bagging.hpp"
#include "baglid/estimators.hpp"
#include "baglid/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace baglid {

enum class SmoothingMode {
    None,           ///< identity
    BaselineSmooth, ///< smooth baseline estimates over the full cloud
    Post,           ///< smooth bagged aggregates over the full cloud
    Pre,            ///< smooth single-bag estimates inside each bag, then aggregate
    PreAndPost,     ///< Pre followed by Post
};

std::string_view to_string(SmoothingMode mode) noexcept;
SmoothingMode parse_smoothing_mode(std::string_view name);

struct SmoothingConfig {
    /// Neighborhood size; 0 means "same as the estimator's k".
    std::size_t k_s = 0;
    SmoothingMode mode = SmoothingMode::None;

    std::size_t resolve(std::size_t estimator_k) const noexcept { return k_s == 0 ? estimator_k : k_s; }
};

/// Averages `values` (indexed by cloud point; only reference entries are
/// read) over the k_s nearest reference points of each query. A query that
/// belongs to the reference counts itself as one of the k_s.
std::vector<LidEstimate> smooth(const PointCloud& cloud, std::span<const Index> reference,
                                std::span<const LidEstimate> values, std::span<const Query> queries,
                                std::size_t k_s);

/// Table-driven form of smooth() for member queries: row i of `table` holds
/// the reference neighbors of queries[i] (self excluded), `membership` marks
/// the reference.
std::vector<LidEstimate> smooth_with_table(const NeighborTable& table, std::span<const char> membership,
                                           std::span<const Index> queries, std::span<const LidEstimate> values,
                                           std::size_t k_s, std::size_t threads = 1);

/// Smooths each bag's column of single-bag estimates using only in-bag
/// neighborhoods, then re-aggregates across the first `bag_count` bags.
EstimateMatrix pre_smooth(const BagNeighborhoods& hoods, const EstimateMatrix& matrix, std::size_t k_s,
                          DivergencePolicy policy, std::size_t threads = 1);

std::vector<LidEstimate> baseline_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                         const SmoothingConfig& smoothing, const SearchOptions& options = {});

std::vector<LidEstimate> bagged_post_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                            const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                            const SearchOptions& options = {});

std::vector<LidEstimate> bagged_pre_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                           const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                           const SearchOptions& options = {});

std::vector<LidEstimate> bagged_pre_post_smooth(const PointCloud& cloud, const EstimatorConfig& est,
                                                const BaggingConfig& bag_config, const SmoothingConfig& smoothing,
                                                const SearchOptions& options = {});

/// Per-point estimates for any combination: no bagging with mode None or
/// BaselineSmooth, bagging with None, Post, Pre or PreAndPost.
std::vector<LidEstimate> estimate_variant(const PointCloud& cloud, const EstimatorConfig& est,
                                          const std::optional<BaggingConfig>& bag_config,
                                          const SmoothingConfig& smoothing, const SearchOptions& options = {});

} // namespace baglid
