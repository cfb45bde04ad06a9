#include "baglid/theory_lab.hpp"

#include "baglid/bagging.hpp"
#include "baglid/errors.hpp"
#include "baglid/parallel.hpp"
#include "baglid/random.hpp"
#include "baglid/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

namespace baglid {

namespace {

double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

std::size_t overlap_size(const BagIndexSet& a, const BagIndexSet& b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

void check_subset_size(std::size_t n, std::size_t m) {
    if (m < 1 || m > n) throw ConfigError(fmt::format("bag size {} must lie in [1, {}]", m, n));
}

double bag_mean(std::span<const double> data, const BagIndexSet& bag) {
    std::vector<double> values;
    values.reserve(bag.size());
    for (Index i : bag) values.push_back(data[i]);
    return stable_mean(values);
}

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed, std::size_t trial) {
    auto eng = make_engine(seed ^ 0xA5A5A5A5DEADBEEFull, trial);
    std::vector<double> x(n);
    for (auto& v : x) v = standard_normal(eng);
    return x;
}

} // namespace

double hypergeometric_pmf(std::size_t n, std::size_t m, std::size_t h) {
    if (h > m || m > n) return 0.0;
    if (m - h > n - m) return 0.0;
    return std::exp(log_binomial(m, h) + log_binomial(n - m, m - h) - log_binomial(n, m));
}

ChiSquareTest chi_square_gof(const std::vector<std::size_t>& observed, const std::vector<double>& probabilities,
                             double min_expected) {
    if (observed.size() != probabilities.size() || observed.empty())
        throw ConfigError("observed counts and probabilities must have the same nonzero length");
    double total = 0.0;
    for (auto c : observed) total += static_cast<double>(c);

    // Greedy left-to-right merge; a sparse tail is folded into the last bin.
    std::vector<double> obs;
    std::vector<double> expct;
    double o = 0.0;
    double e = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o += static_cast<double>(observed[i]);
        e += probabilities[i] * total;
        if (e >= min_expected) {
            obs.push_back(o);
            expct.push_back(e);
            o = e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (expct.empty()) {
            obs.push_back(o);
            expct.push_back(e);
        } else {
            obs.back() += o;
            expct.back() += e;
        }
    }

    ChiSquareTest test;
    test.bins = obs.size();
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (expct[i] > 0.0) test.statistic += (obs[i] - expct[i]) * (obs[i] - expct[i]) / expct[i];
    }
    test.dof = obs.size() > 1 ? obs.size() - 1 : 0;
    if (test.dof == 0) {
        test.p_value = 1.0;
        return test;
    }
    boost::math::chi_squared dist(static_cast<double>(test.dof));
    test.p_value = boost::math::cdf(boost::math::complement(dist, test.statistic));
    return test;
}

OverlapExperiment run_overlap(std::size_t n, std::size_t m, std::size_t trials, std::uint64_t seed,
                              std::size_t threads) {
    check_subset_size(n, m);
    if (trials < 1) throw ConfigError("need at least one trial");
    std::vector<std::size_t> overlaps(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const auto a = draw_bag(n, m, seed, 2 * t);
        const auto b = draw_bag(n, m, seed, 2 * t + 1);
        overlaps[t] = overlap_size(a, b);
    });

    OverlapExperiment ex;
    ex.n = n;
    ex.m = m;
    ex.trials = trials;
    ex.histogram.assign(m + 1, 0);
    CompensatedSum sum;
    for (auto h : overlaps) {
        ++ex.histogram[h];
        sum.add(static_cast<double>(h));
    }
    ex.mean = sum.value() / static_cast<double>(trials);
    for (std::size_t h = 0; h <= m; ++h) ex.pmf.push_back(hypergeometric_pmf(n, m, h));
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    ex.theory_mean = mm * mm / nn;
    ex.theory_variance = n > 1 ? mm * (mm / nn) * ((nn - mm) / nn) * ((nn - mm) / (nn - 1.0)) : 0.0;
    ex.standard_error = std::sqrt(ex.theory_variance / static_cast<double>(trials));
    ex.fit = chi_square_gof(ex.histogram, ex.pmf);
    return ex;
}

VarianceExperiment run_variance(std::size_t n, double rate, std::size_t bags, std::size_t trials,
                                std::uint64_t seed, std::size_t threads) {
    const std::size_t m = bag_size(n, rate);
    check_subset_size(n, m);
    if (bags < 1) throw ConfigError("need at least one bag");
    if (trials < 2) throw ConfigError("need at least two trials");
    // At least two bags per trial so the pairwise covariance is always measurable.
    const std::size_t drawn = std::max<std::size_t>(bags, 2);

    std::vector<double> bagged(trials), single(trials), full(trials), bag_sum(trials), pair_sum(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const auto x = normal_sample(n, seed, t);
        const std::uint64_t bag_seed = derive_seed(seed, t);
        std::vector<double> means(drawn);
        for (std::size_t b = 0; b < drawn; ++b) means[b] = bag_mean(x, draw_bag(n, m, bag_seed, b));
        bagged[t] = stable_mean(std::span<const double>(means).first(bags));
        single[t] = means[0];
        full[t] = stable_mean(x);
        CompensatedSum s, s2;
        for (double v : means) {
            s.add(v);
            s2.add(v * v);
        }
        bag_sum[t] = s.value();
        pair_sum[t] = (s.value() * s.value() - s2.value()) / 2.0;
    });

    VarianceExperiment ex;
    ex.n = n;
    ex.rate = rate;
    ex.m = m;
    ex.bags = bags;
    ex.trials = trials;
    ex.var_bagged = moments(bagged).variance;
    ex.var_single = moments(single).variance;
    ex.var_full = moments(full).variance;

    CompensatedSum total, pairs;
    for (std::size_t t = 0; t < trials; ++t) {
        total.add(bag_sum[t]);
        pairs.add(pair_sum[t]);
    }
    const double count = static_cast<double>(trials * drawn);
    const double pair_count = static_cast<double>(trials) * static_cast<double>(drawn * (drawn - 1) / 2);
    const double mu = total.value() / count;
    const double t = static_cast<double>(trials);
    ex.cov_pairs = (pairs.value() / pair_count - mu * mu) * t / (t - 1.0);
    ex.correlation = ex.var_single > 0.0 ? ex.cov_pairs / ex.var_single : 0.0;
    const double b = static_cast<double>(bags);
    ex.predicted = ex.var_single * (ex.correlation + (1.0 - ex.correlation) / b);
    const double r = static_cast<double>(m) / static_cast<double>(n);
    ex.closed_form = (1.0 / static_cast<double>(m)) * (r + (1.0 - r) / b);
    return ex;
}

ConditionalCovarianceCurve run_conditional_covariance(std::size_t n, double rate, std::size_t trials,
                                                      std::uint64_t seed, std::size_t threads) {
    const std::size_t m = bag_size(n, rate);
    check_subset_size(n, m);
    if (trials < 2) throw ConfigError("need at least two trials");
    std::vector<std::size_t> overlap(trials);
    std::vector<double> first(trials), second(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const auto x = normal_sample(n, seed, t);
        const std::uint64_t bag_seed = derive_seed(seed, t);
        const auto a = draw_bag(n, m, bag_seed, 0);
        const auto b = draw_bag(n, m, bag_seed, 1);
        overlap[t] = overlap_size(a, b);
        first[t] = bag_mean(x, a);
        second[t] = bag_mean(x, b);
    });

    ConditionalCovarianceCurve curve;
    curve.n = n;
    curve.m = m;
    curve.trials = trials;
    const double mm = static_cast<double>(m);
    std::vector<std::vector<double>> a_by_bin(m + 1), b_by_bin(m + 1);
    for (std::size_t t = 0; t < trials; ++t) {
        a_by_bin[overlap[t]].push_back(first[t]);
        b_by_bin[overlap[t]].push_back(second[t]);
    }
    for (std::size_t h = 0; h <= m; ++h) {
        CovarianceBin bin;
        bin.overlap = h;
        bin.count = a_by_bin[h].size();
        bin.theory = static_cast<double>(h) / (mm * mm);
        bin.available = bin.count >= 30;
        if (bin.available) {
            bin.covariance = covariance(a_by_bin[h], b_by_bin[h]);
            const double va = moments(a_by_bin[h]).variance;
            const double vb = moments(b_by_bin[h]).variance;
            bin.standard_error =
                std::sqrt((va * vb + bin.covariance * bin.covariance) / static_cast<double>(bin.count));
        }
        curve.bins.push_back(bin);
    }
    const CovarianceBin* previous = nullptr;
    for (const auto& bin : curve.bins) {
        if (!bin.available) continue;
        if (previous != nullptr) {
            const double noise = 2.0 * std::hypot(previous->standard_error, bin.standard_error);
            if (bin.covariance < previous->covariance - noise) ++curve.monotonicity_violations;
        }
        previous = &bin;
    }
    curve.unconditional_cov = covariance(first, second);
    curve.phi_at_rate = (static_cast<double>(m) / static_cast<double>(n)) / mm;
    curve.slack = 1.0 / static_cast<double>(n);
    return curve;
}

} // namespace baglid
