#pragma once

#include "baglid/geometry.hpp"
#include "baglid/random.hpp"

#include <cstdint>
#include <vector>

namespace fixtures {

inline baglid::PointCloud line(std::vector<double> xs, double gt = 1.0) {
    std::vector<int> labels(xs.size(), 1);
    return baglid::PointCloud(1, std::move(xs), std::move(labels), {gt});
}

inline baglid::PointCloud uniform_segment(std::size_t n, std::uint64_t seed) {
    auto eng = baglid::make_engine(seed, 0);
    std::vector<double> xs(n);
    for (auto& x : xs) x = baglid::uniform01(eng);
    return line(std::move(xs));
}

inline baglid::PointCloud gaussian_cloud(std::size_t n, std::size_t dim, std::uint64_t seed, double gt) {
    auto eng = baglid::make_engine(seed, 0);
    std::vector<double> coords(n * dim);
    for (auto& c : coords) c = baglid::standard_normal(eng);
    return baglid::PointCloud(dim, std::move(coords), std::vector<int>(n, 1), {gt});
}

} // namespace fixtures
