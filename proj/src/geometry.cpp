#include "baglid/geometry.hpp"

#include "baglid/errors.hpp"
#include "baglid/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/format.h>

namespace baglid {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, std::vector<int> labels,
                       std::vector<double> gt_lid)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)), gt_lid_(std::move(gt_lid)) {
    if (dim_ == 0) throw ConfigError("point cloud dimension must be at least 1");
    if (labels_.empty()) throw ConfigError("point cloud must contain at least one point");
    if (coords_.size() != labels_.size() * dim_)
        throw DimensionMismatchError(fmt::format("expected {} coordinates for {} points of dim {}, got {}",
                                                 labels_.size() * dim_, labels_.size(), dim_,
                                                 coords_.size()));
    if (gt_lid_.empty()) throw ConfigError("point cloud needs at least one ground-truth LID");
    for (double d : gt_lid_)
        if (!std::isfinite(d) || d <= 0.0) throw ConfigError("ground-truth LID values must be finite and > 0");
    const int max_label = static_cast<int>(gt_lid_.size());
    for (int l : labels_)
        if (l < 1 || l > max_label)
            throw ConfigError(fmt::format("manifold label {} outside [1..{}]", l, max_label));
}

std::vector<std::size_t> PointCloud::manifold_sizes() const {
    std::vector<std::size_t> sizes(gt_lid_.size(), 0);
    for (int l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
    return sizes;
}

PointCloud PointCloud::scaled(double factor) const {
    PointCloud out = *this;
    for (double& x : out.coords_) x *= factor;
    return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double pairwise_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatchError(fmt::format("cannot measure distance between points of dim {} and {}",
                                                 a.size(), b.size()));
    return std::sqrt(squared_distance(a, b));
}

namespace {

struct Candidate {
    double sq;
    Index index;
};

constexpr bool closer(const Candidate& a, const Candidate& b) noexcept {
    return a.sq < b.sq || (a.sq == b.sq && a.index < b.index);
}

// Fills `out` with the k closest candidates, sorted.
void select_k(std::vector<Candidate>& candidates, std::size_t k) {
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                      candidates.end(), closer);
}

void check_capacity(std::size_t k, std::size_t available) {
    if (k < 1 || k > available)
        throw CapacityError(fmt::format("requested k={} neighbors but only {} reference points are available",
                                        k, available));
}

} // namespace

NeighborList knn(const PointCloud& cloud, std::span<const Index> reference, const Query& query,
                 std::size_t k) {
    if (reference.empty()) throw EmptyReferenceError("knn called with an empty reference set");
    if (query.location.size() != cloud.dim())
        throw DimensionMismatchError(fmt::format("query has dim {}, cloud has dim {}", query.location.size(),
                                                 cloud.dim()));
    std::vector<Candidate> candidates;
    candidates.reserve(reference.size());
    for (Index j : reference) {
        if (query.index && *query.index == j) continue;
        candidates.push_back({squared_distance(query.location, cloud.point(j)), j});
    }
    check_capacity(k, candidates.size());
    select_k(candidates, k);

    NeighborList out;
    out.indices.reserve(k);
    out.distances.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.indices.push_back(candidates[i].index);
        out.distances.push_back(std::sqrt(candidates[i].sq));
        if (candidates[i].sq == 0.0) out.has_duplicates = true;
    }
    return out;
}

NeighborOrder NeighborOrder::build(const PointCloud& cloud, std::size_t threads) {
    NeighborOrder order;
    const std::size_t n = cloud.size();
    order.n_ = n;
    if (n < 2) return order;
    order.indices_.resize(n * (n - 1));
    order.distances_.resize(n * (n - 1));
    parallel_for(n, threads, [&](std::size_t q) {
        thread_local std::vector<Candidate> row;
        row.clear();
        const auto x = cloud.point(q);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == q) continue;
            row.push_back({squared_distance(x, cloud.point(j)), static_cast<Index>(j)});
        }
        std::sort(row.begin(), row.end(), closer);
        const std::size_t base = q * (n - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            order.indices_[base + i] = row[i].index;
            order.distances_[base + i] = std::sqrt(row[i].sq);
        }
    });
    return order;
}

std::vector<char> membership_mask(std::size_t n, std::span<const Index> reference) {
    std::vector<char> mask(n, 0);
    for (Index j : reference) mask[j] = 1;
    return mask;
}

std::vector<Index> all_indices(std::size_t n) {
    std::vector<Index> out(n);
    std::iota(out.begin(), out.end(), Index{0});
    return out;
}

NeighborTable knn_table(const PointCloud& cloud, std::span<const Index> reference,
                        std::span<const Index> queries, std::size_t k, const SearchOptions& options) {
    if (reference.empty()) throw EmptyReferenceError("knn called with an empty reference set");
    const auto mask = membership_mask(cloud.size(), reference);
    for (Index q : queries) check_capacity(k, reference.size() - static_cast<std::size_t>(mask[q]));

    NeighborTable table(queries.size(), k);
    if (options.order != nullptr) {
        const NeighborOrder& order = *options.order;
        if (order.size() != cloud.size()) throw ConfigError("neighbor order was built for a different cloud");
        parallel_for(queries.size(), options.threads, [&](std::size_t row) {
            const auto idx = order.row_indices(queries[row]);
            const auto dist = order.row_distances(queries[row]);
            auto out_idx = table.indices(row);
            auto out_dist = table.distances(row);
            std::size_t found = 0;
            for (std::size_t pos = 0; found < k; ++pos) {
                if (!mask[idx[pos]]) continue;
                out_idx[found] = idx[pos];
                out_dist[found] = dist[pos];
                ++found;
            }
        });
        return table;
    }

    parallel_for(queries.size(), options.threads, [&](std::size_t row) {
        thread_local std::vector<Candidate> candidates;
        candidates.clear();
        const Index q = queries[row];
        const auto x = cloud.point(q);
        for (Index j : reference) {
            if (j == q) continue;
            candidates.push_back({squared_distance(x, cloud.point(j)), j});
        }
        select_k(candidates, k);
        auto out_idx = table.indices(row);
        auto out_dist = table.distances(row);
        for (std::size_t i = 0; i < k; ++i) {
            out_idx[i] = candidates[i].index;
            out_dist[i] = std::sqrt(candidates[i].sq);
        }
    });
    return table;
}

} // namespace baglid
