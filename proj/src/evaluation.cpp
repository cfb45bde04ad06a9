#include "baglid/evaluation.hpp"

#include "baglid/errors.hpp"
#include "baglid/stats.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace baglid {

MseDecomposition decompose(std::span<const double> estimates, const PointCloud& cloud) {
    if (estimates.size() != cloud.size())
        throw DimensionMismatchError(
            fmt::format("{} estimates supplied for a cloud of {} points", estimates.size(), cloud.size()));
    for (double e : estimates)
        if (!std::isfinite(e)) throw ConfigError("decomposition needs finite estimates");

    const std::size_t n = cloud.size();
    const std::size_t manifolds = cloud.manifold_count();
    std::vector<std::vector<double>> groups(manifolds);
    for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(cloud.label(i) - 1)].push_back(estimates[i]);

    MseDecomposition out;
    for (std::size_t l = 0; l < manifolds; ++l) {
        const auto& g = groups[l];
        ManifoldError m;
        m.label = static_cast<int>(l + 1);
        m.count = g.size();
        m.weight = static_cast<double>(g.size()) / static_cast<double>(n);
        if (!g.empty()) {
            const double truth = cloud.gt_lid()[l];
            m.mean_estimate = stable_mean(g);
            double sq_err = 0.0;
            double sq_dev = 0.0;
            for (double e : g) {
                sq_err += (e - truth) * (e - truth);
                sq_dev += (e - m.mean_estimate) * (e - m.mean_estimate);
            }
            const double count = static_cast<double>(g.size());
            m.mse = sq_err / count;
            m.var = sq_dev / count;
            m.bias_sq = (m.mean_estimate - truth) * (m.mean_estimate - truth);
        }
        out.total_mse += m.weight * m.mse;
        out.total_var += m.weight * m.var;
        out.total_bias_sq += m.weight * m.bias_sq;
        out.per_manifold.push_back(m);
    }
    return out;
}

MseDecomposition decompose(std::span<const LidEstimate> estimates, const PointCloud& cloud) {
    std::vector<double> values;
    values.reserve(estimates.size());
    std::size_t divergent = 0;
    for (const auto& e : estimates) {
        values.push_back(e.value);
        if (e.divergent) ++divergent;
    }
    auto out = decompose(values, cloud);
    out.divergent_count = divergent;
    return out;
}

LogRatio log_ratio(double base_mse, double variant_mse) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (base_mse > 0.0 && variant_mse > 0.0) return {std::log(base_mse / variant_mse), false};
    if (base_mse > 0.0) return {inf, true};
    if (variant_mse > 0.0) return {-inf, true};
    return {0.0, true};
}

LogRatio log_ratio(const MseDecomposition& base, const MseDecomposition& variant) {
    return log_ratio(base.total_mse, variant.total_mse);
}

} // namespace baglid
