#pragma once

#include "baglid/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace baglid {

enum class Method { Mle, Mada, Tle };

std::string_view to_string(Method method) noexcept;
/// Accepts "mle", "mada", "tle" in any case; throws ConfigError otherwise.
Method parse_method(std::string_view name);

/// Averaging convention for the MLE log-ratio sum: over the k-1 inner
/// neighbors (default) or over all k neighbors.
enum class MleNormalization { KMinusOne, K };

struct EstimatorConfig {
    Method method = Method::Mle;
    std::size_t k = 10;
    /// Value reported for divergent estimates. Estimates above it are also
    /// treated as divergent. Unset means 10 x ambient dimension when the cloud
    /// is known, +infinity otherwise.
    std::optional<double> clamp_max;
    MleNormalization mle_normalization = MleNormalization::KMinusOne;

    void validate() const;
};

double default_clamp(std::size_t ambient_dim) noexcept;

struct LidEstimate {
    double value = 0.0;
    bool divergent = false;
    std::size_t k_used = 0;

    friend bool operator==(const LidEstimate&, const LidEstimate&) = default;
};

// The distance spans below are the ordered neighbor distances r_1 <= ... <= r_k.

/// Levina-Bickel maximum likelihood: -1 / mean_i ln(r_i / r_k).
LidEstimate estimate_mle(std::span<const double> distances, const EstimatorConfig& config);

/// Two-scale estimate ln 2 / ln(r_k / r_ceil(k/2)).
LidEstimate estimate_mada(std::span<const double> distances, const EstimatorConfig& config);

/// Tight-locality estimator: pools the query distances with the distances
/// implied by every ordered pair of neighbors inside the k-NN ball.
LidEstimate estimate_tle(const PointCloud& cloud, std::span<const Index> neighbors,
                         std::span<const double> distances, const EstimatorConfig& config);

/// Dispatches on config.method using the first config.k neighbors.
LidEstimate estimate_from_neighbors(const PointCloud& cloud, std::span<const Index> neighbors,
                                    std::span<const double> distances, const EstimatorConfig& config);

/// n-sample estimate at `query` using `reference` as the sample.
LidEstimate estimate_at(const PointCloud& cloud, std::span<const Index> reference, const Query& query,
                        const EstimatorConfig& config);

/// One estimate per row of a neighbor table (first config.k columns), with the
/// clamp resolved against the cloud's ambient dimension.
std::vector<LidEstimate> estimate_table(const PointCloud& cloud, const NeighborTable& table,
                                        const EstimatorConfig& config, std::size_t threads = 1);

/// Baseline estimate at every point of the cloud with the full cloud as sample.
std::vector<LidEstimate> estimate_all(const PointCloud& cloud, const EstimatorConfig& config,
                                      const SearchOptions& options = {});

/// config with clamp_max filled in from the cloud when unset.
EstimatorConfig resolve_clamp(const EstimatorConfig& config, std::size_t ambient_dim);

} // namespace baglid
