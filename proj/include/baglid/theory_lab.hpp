#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace baglid {

/// P(|A ∩ B| = h) for two independent uniform m-subsets of an n-set.
double hypergeometric_pmf(std::size_t n, std::size_t m, std::size_t h);

struct ChiSquareTest {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    std::size_t bins = 0; // after merging sparse bins
};

/// Goodness of fit of observed counts against probabilities. Adjacent bins
/// are merged until every expected count reaches `min_expected`.
ChiSquareTest chi_square_gof(const std::vector<std::size_t>& observed, const std::vector<double>& probabilities,
                             double min_expected = 5.0);

struct OverlapExperiment {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    std::vector<std::size_t> histogram; // index h = overlap size, 0..m
    std::vector<double> pmf;            // hypergeometric law
    double mean = 0.0;
    double theory_mean = 0.0; // m^2 / n
    double theory_variance = 0.0;
    double standard_error = 0.0; // of the mean, from the theoretical variance
    ChiSquareTest fit;
};

/// Overlap sizes of `trials` independent pairs of bags drawn by the bagging
/// sampler.
OverlapExperiment run_overlap(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed,
                              std::size_t threads = 1);

/// Bagged sample mean of n i.i.d. standard normals.
struct VarianceExperiment {
    std::size_t n = 0;
    double rate = 0.0;
    std::size_t m = 0;
    std::size_t bags = 0;
    std::size_t trials = 0;
    double var_bagged = 0.0;   // Var of the B-bag average
    double var_single = 0.0;   // Var of one bag's mean
    double var_full = 0.0;     // Var of the full-sample mean
    double cov_pairs = 0.0;    // Cov between two different bags' means
    double correlation = 0.0;  // cov_pairs / var_single
    double predicted = 0.0;    // var_single * (rho + (1 - rho) / B), measured rho
    double closed_form = 0.0;  // (1/m) (r + (1 - r) / B), exact for the sample mean

    bool sandwich_holds() const noexcept { return cov_pairs <= var_bagged && var_bagged <= var_single; }
};

VarianceExperiment run_variance(std::size_t n, double rate, std::size_t bags, std::size_t trials,
                                std::uint64_t seed, std::size_t threads = 1);

struct CovarianceBin {
    std::size_t overlap = 0;
    std::size_t count = 0;
    bool available = false; // fewer than 30 samples are not reported
    double covariance = 0.0;
    double standard_error = 0.0;
    double theory = 0.0; // h / m^2 for unit-variance data
};

struct ConditionalCovarianceCurve {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t trials = 0;
    std::vector<CovarianceBin> bins;
    /// Consecutive available bins whose covariance drops by more than two
    /// combined standard errors.
    std::size_t monotonicity_violations = 0;
    double unconditional_cov = 0.0;
    double phi_at_rate = 0.0; // phi(r) = r / m with phi(x) = x / m
    double slack = 0.0;       // the O(1/n) allowance, 1/n

    bool bound_holds() const noexcept { return unconditional_cov <= phi_at_rate + slack; }
};

ConditionalCovarianceCurve run_conditional_covariance(std::size_t n, double rate, std::size_t trials,
                                                      std::uint64_t seed, std::size_t threads = 1);

} // namespace baglid
