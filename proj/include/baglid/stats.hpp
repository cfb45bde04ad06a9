#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace baglid {

/// Arithmetic mean that does not depend on the order of its inputs and
/// returns x exactly when every input equals x: values are summed in sorted
/// order as offsets from the minimum.
inline double stable_mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double base = sorted.front();
    double offset = 0.0;
    for (double v : sorted) offset += v - base;
    return base + offset / static_cast<double>(sorted.size());
}

} // namespace baglid

namespace baglid {

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Sample mean and unbiased variance with compensated two-pass sums.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

inline Moments moments(std::span<const double> values) {
    Moments m;
    if (values.empty()) return m;
    CompensatedSum s;
    for (double v : values) s.add(v);
    m.mean = s.value() / static_cast<double>(values.size());
    if (values.size() < 2) return m;
    CompensatedSum dev;
    for (double v : values) dev.add((v - m.mean) * (v - m.mean));
    m.variance = dev.value() / static_cast<double>(values.size() - 1);
    return m;
}

/// Unbiased sample covariance of paired values.
inline double covariance(std::span<const double> a, std::span<const double> b) {
    const auto ma = moments(a);
    const auto mb = moments(b);
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add((a[i] - ma.mean) * (b[i] - mb.mean));
    return a.size() < 2 ? 0.0 : s.value() / static_cast<double>(a.size() - 1);
}

} // namespace baglid
