#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace baglid {

using Index = std::uint32_t;

/// n points in R^dim stored row-major, each tagged with a manifold label in
/// [1..L] whose ground-truth LID is gt_lid[label - 1].
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t dim, std::vector<double> coords, std::vector<int> labels,
               std::vector<double> gt_lid);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t manifold_count() const noexcept { return gt_lid_.size(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    int label(std::size_t i) const { return labels_[i]; }
    double gt_lid_of(int label) const { return gt_lid_[static_cast<std::size_t>(label - 1)]; }

    std::span<const double> coords() const noexcept { return coords_; }
    std::span<const int> labels() const noexcept { return labels_; }
    std::span<const double> gt_lid() const noexcept { return gt_lid_; }

    /// Number of points carrying each label (entry l-1 for label l).
    std::vector<std::size_t> manifold_sizes() const;

    /// Copy with every coordinate multiplied by `factor`.
    PointCloud scaled(double factor) const;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<int> labels_;
    std::vector<double> gt_lid_;
};

/// A query is either a point of the cloud (by index) or an external location.
struct Query {
    std::optional<Index> index;
    std::span<const double> location;

    static Query member(const PointCloud& cloud, Index i) { return {i, cloud.point(i)}; }
    static Query at(std::span<const double> x) { return {std::nullopt, x}; }
};

struct NeighborList {
    std::vector<Index> indices;
    std::vector<double> distances; // nondecreasing
    bool has_duplicates = false;   // some neighbor sits at distance zero

    std::size_t size() const noexcept { return indices.size(); }
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Euclidean distance. Throws DimensionMismatchError on unequal lengths.
double pairwise_distance(std::span<const double> a, std::span<const double> b);

/// Exact k nearest neighbors of `query` among `reference` (indices into the
/// cloud). A query that is itself in the reference is skipped. Ties are broken
/// by ascending point index.
NeighborList knn(const PointCloud& cloud, std::span<const Index> reference, const Query& query,
                 std::size_t k);

/// Full neighbor ordering of every point of a cloud, used as a search index:
/// row q lists all other points sorted by (distance, index). Searching a
/// subset of the cloud reduces to filtering a row, which gives results
/// identical to exhaustive search. Memory is O(n^2).
class NeighborOrder {
public:
    static NeighborOrder build(const PointCloud& cloud, std::size_t threads = 0);

    std::size_t size() const noexcept { return n_; }
    std::span<const Index> row_indices(std::size_t q) const {
        return {indices_.data() + q * (n_ - 1), n_ - 1};
    }
    std::span<const double> row_distances(std::size_t q) const {
        return {distances_.data() + q * (n_ - 1), n_ - 1};
    }

private:
    std::size_t n_ = 0;
    std::vector<Index> indices_;
    std::vector<double> distances_;
};

/// k nearest reference neighbors for a batch of member queries, stored as a
/// rows x k table.
class NeighborTable {
public:
    NeighborTable() = default;
    NeighborTable(std::size_t rows, std::size_t k)
        : rows_(rows), k_(k), indices_(rows * k), distances_(rows * k) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t k() const noexcept { return k_; }

    std::span<const Index> indices(std::size_t row) const { return {indices_.data() + row * k_, k_}; }
    std::span<const double> distances(std::size_t row) const {
        return {distances_.data() + row * k_, k_};
    }
    std::span<Index> indices(std::size_t row) { return {indices_.data() + row * k_, k_}; }
    std::span<double> distances(std::size_t row) { return {distances_.data() + row * k_, k_}; }

    friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t k_ = 0;
    std::vector<Index> indices_;
    std::vector<double> distances_;
};

struct SearchOptions {
    std::size_t threads = 1;
    /// When set, searches filter the precomputed ordering instead of scanning.
    const NeighborOrder* order = nullptr;
};

/// knn for every cloud point listed in `queries` against `reference`; row i
/// belongs to queries[i]. Membership in the reference is detected per query.
NeighborTable knn_table(const PointCloud& cloud, std::span<const Index> reference,
                        std::span<const Index> queries, std::size_t k,
                        const SearchOptions& options = {});

/// Membership mask of `reference` over a cloud of size n.
std::vector<char> membership_mask(std::size_t n, std::span<const Index> reference);

/// All indices 0..n-1.
std::vector<Index> all_indices(std::size_t n);

} // namespace baglid
