#pragma once

#include "baglid/estimators.hpp"
#include "baglid/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace baglid {

struct ManifoldError {
    int label = 0;
    std::size_t count = 0;
    double weight = 0.0; // |D_i| / n
    double mse = 0.0;
    double var = 0.0;
    double bias_sq = 0.0;
    double mean_estimate = 0.0;
};

/// Manifold-wise MSE decomposition. Per manifold the variance is taken around
/// the manifold's own mean estimate (population form, 1/|D_i|); totals are
/// the |D_i|/n weighted sums, so total_mse = total_var + total_bias_sq.
struct MseDecomposition {
    std::vector<ManifoldError> per_manifold;
    double total_mse = 0.0;
    double total_var = 0.0;
    double total_bias_sq = 0.0;
    std::size_t divergent_count = 0;
};

MseDecomposition decompose(std::span<const double> estimates, const PointCloud& cloud);
MseDecomposition decompose(std::span<const LidEstimate> estimates, const PointCloud& cloud);

struct LogRatio {
    double value = 0.0;
    bool degenerate = false; // a zero MSE was involved; value is 0 or +/-infinity
};

/// ln(base / variant); positive when the variant has the lower MSE.
LogRatio log_ratio(const MseDecomposition& base, const MseDecomposition& variant);
LogRatio log_ratio(double base_mse, double variant_mse);

} // namespace baglid
