#include "baglid/estimators.hpp"

#include "baglid/errors.hpp"
#include "baglid/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace baglid {

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::Mle: return "mle";
    case Method::Mada: return "mada";
    case Method::Tle: return "tle";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "mle") return Method::Mle;
    if (lower == "mada") return Method::Mada;
    if (lower == "tle") return Method::Tle;
    throw ConfigError(fmt::format("unknown estimator '{}' (expected mle, mada or tle)", name));
}

void EstimatorConfig::validate() const {
    if (k < 2) throw ConfigError(fmt::format("{} needs k >= 2, got {}", to_string(method), k));
    if (clamp_max && !(*clamp_max > 0.0)) throw ConfigError("clamp_max must be positive");
}

double default_clamp(std::size_t ambient_dim) noexcept { return 10.0 * static_cast<double>(ambient_dim); }

EstimatorConfig resolve_clamp(const EstimatorConfig& config, std::size_t ambient_dim) {
    EstimatorConfig out = config;
    if (!out.clamp_max) out.clamp_max = default_clamp(ambient_dim);
    return out;
}

namespace {

void require_neighbors(std::span<const double> distances, std::size_t min_k) {
    if (distances.size() < min_k)
        throw CapacityError(fmt::format("estimator needs at least {} neighbors, got {}", min_k, distances.size()));
}

void require_positive(std::span<const double> distances) {
    for (std::size_t i = 0; i < distances.size(); ++i)
        if (!(distances[i] > 0.0))
            throw ZeroDistanceError(fmt::format("neighbor {} lies at distance zero from the query", i + 1));
}

// Maps a raw estimate onto the output contract: positive and finite, or
// flagged divergent and replaced by the clamp value.
LidEstimate finish(double raw, std::size_t k, const EstimatorConfig& config) {
    const double cap = config.clamp_max.value_or(std::numeric_limits<double>::infinity());
    if (!std::isfinite(raw) || raw <= 0.0 || raw > cap) return {cap, true, k};
    return {raw, false, k};
}

} // namespace

LidEstimate estimate_mle(std::span<const double> distances, const EstimatorConfig& config) {
    require_neighbors(distances, 2);
    require_positive(distances);
    const std::size_t k = distances.size();
    const double r_k = distances[k - 1];
    double log_sum = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) log_sum += std::log(distances[i] / r_k);
    const double denom = config.mle_normalization == MleNormalization::KMinusOne ? static_cast<double>(k - 1)
                                                                                : static_cast<double>(k);
    if (log_sum == 0.0) return finish(std::numeric_limits<double>::infinity(), k, config);
    return finish(-denom / log_sum, k, config);
}

LidEstimate estimate_mada(std::span<const double> distances, const EstimatorConfig& config) {
    require_neighbors(distances, 2);
    require_positive(distances);
    const std::size_t k = distances.size();
    const double r_half = distances[(k + 1) / 2 - 1];
    const double ratio = std::log(distances[k - 1] / r_half);
    if (ratio == 0.0) return finish(std::numeric_limits<double>::infinity(), k, config);
    return finish(std::numbers::ln2 / ratio, k, config);
}

LidEstimate estimate_tle(const PointCloud& cloud, std::span<const Index> neighbors,
                         std::span<const double> distances, const EstimatorConfig& config) {
    require_neighbors(distances, 2);
    if (neighbors.size() != distances.size())
        throw DimensionMismatchError("neighbor indices and distances differ in length");
    require_positive(distances);
    const std::size_t k = distances.size();
    const double r = distances[k - 1];
    const double r2 = r * r;

    // Each ordered pair (i, j) contributes two distance samples s_ij, t_ij;
    // each neighbor contributes r_i twice. Coincident neighbor pairs carry no
    // information and are dropped from the count.
    double log_sum = 0.0;
    std::size_t coincident = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double ri2 = distances[i] * distances[i];
        const auto xi = cloud.point(neighbors[i]);
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const double v2 = squared_distance(xi, cloud.point(neighbors[j]));
            if (v2 == 0.0) {
                ++coincident;
                continue;
            }
            const double rj2 = distances[j] * distances[j];
            const double z2 = 2.0 * ri2 + 2.0 * rj2 - v2;
            double s = 0.0;
            double t = 0.0;
            if (distances[i] == r) {
                s = r * v2 / (r2 + v2 - rj2);
                t = r * z2 / (r2 + z2 - rj2);
            } else {
                const double gap = r2 - ri2;
                const double a = ri2 + v2 - rj2;
                s = r * (std::sqrt(a * a + 4.0 * v2 * gap) - a) / (2.0 * gap);
                const double b = ri2 + z2 - rj2;
                t = r * (std::sqrt(b * b + 4.0 * z2 * gap) - b) / (2.0 * gap);
            }
            log_sum += std::log(s / r) + std::log(t / r);
        }
    }
    for (std::size_t i = 0; i < k; ++i) log_sum += 2.0 * std::log(distances[i] / r);

    const double count = 2.0 * (static_cast<double>(k * k) - static_cast<double>(coincident));
    if (log_sum == 0.0 || !std::isfinite(log_sum)) return finish(std::numeric_limits<double>::infinity(), k, config);
    return finish(-count / log_sum, k, config);
}

LidEstimate estimate_from_neighbors(const PointCloud& cloud, std::span<const Index> neighbors,
                                    std::span<const double> distances, const EstimatorConfig& config) {
    if (distances.size() < config.k)
        throw CapacityError(fmt::format("estimator configured with k={} but only {} neighbors supplied", config.k,
                                        distances.size()));
    const auto d = distances.first(config.k);
    switch (config.method) {
    case Method::Mle: return estimate_mle(d, config);
    case Method::Mada: return estimate_mada(d, config);
    case Method::Tle: return estimate_tle(cloud, neighbors.first(config.k), d, config);
    }
    throw ConfigError("unknown estimator method");
}

LidEstimate estimate_at(const PointCloud& cloud, std::span<const Index> reference, const Query& query,
                        const EstimatorConfig& config) {
    config.validate();
    const auto resolved = resolve_clamp(config, cloud.dim());
    const auto nn = knn(cloud, reference, query, config.k);
    return estimate_from_neighbors(cloud, nn.indices, nn.distances, resolved);
}

std::vector<LidEstimate> estimate_table(const PointCloud& cloud, const NeighborTable& table,
                                        const EstimatorConfig& config, std::size_t threads) {
    config.validate();
    const auto resolved = resolve_clamp(config, cloud.dim());
    std::vector<LidEstimate> out(table.rows());
    parallel_for(table.rows(), threads, [&](std::size_t row) {
        out[row] = estimate_from_neighbors(cloud, table.indices(row), table.distances(row), resolved);
    });
    return out;
}

std::vector<LidEstimate> estimate_all(const PointCloud& cloud, const EstimatorConfig& config,
                                      const SearchOptions& options) {
    config.validate();
    const auto everyone = all_indices(cloud.size());
    const auto table = knn_table(cloud, everyone, everyone, config.k, options);
    return estimate_table(cloud, table, config, options.threads);
}

} // namespace baglid
