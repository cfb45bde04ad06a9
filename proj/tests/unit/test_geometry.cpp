#include "baglid/datasets.hpp"
#include "baglid/errors.hpp"
#include "baglid/geometry.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace baglid;

TEST_CASE("pairwise distance") {
    const std::vector<double> a{0, 0}, b{3, 4};
    CHECK(pairwise_distance(a, b) == 5.0);
    CHECK(pairwise_distance(a, a) == 0.0);
    CHECK(pairwise_distance(b, a) == pairwise_distance(a, b));
    const std::vector<double> c{1, 2, 3};
    CHECK_THROWS_AS(pairwise_distance(a, c), DimensionMismatchError);
}

TEST_CASE("pairwise distance matches componentwise oracle") {
    auto eng = make_engine(7, 0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> a(13), b(13);
        for (auto& x : a) x = standard_normal(eng);
        for (auto& x : b) x = standard_normal(eng);
        long double sum = 0;
        for (std::size_t i = 0; i < a.size(); ++i) sum += (long double)(a[i] - b[i]) * (a[i] - b[i]);
        const double oracle = std::sqrt(static_cast<double>(sum));
        CHECK(std::abs(pairwise_distance(a, b) - oracle) <= 1e-12 * oracle);
    }
}

TEST_CASE("point cloud validation") {
    CHECK_THROWS_AS(PointCloud(0, {}, {}, {1.0}), ConfigError);
    CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}, {1, 1}, {1.0}), DimensionMismatchError);
    CHECK_THROWS_AS(PointCloud(1, {1.0}, {2}, {1.0}), ConfigError);
    CHECK_THROWS_AS(PointCloud(1, {1.0}, {1}, {0.0}), ConfigError);
    const PointCloud c(1, {1.0, 2.0}, {1, 2}, {1.0, 3.0});
    CHECK(c.manifold_count() == 2);
    CHECK(c.gt_lid_of(c.label(1)) == 3.0);
    CHECK(c.manifold_sizes() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("knn on a line") {
    const auto cloud = fixtures::line({0, 1, 3});
    const auto ref = all_indices(3);
    const auto res = knn(cloud, ref, Query::member(cloud, 0), 2);
    CHECK(res.indices == std::vector<Index>{1, 2});
    CHECK(res.distances == std::vector<double>{1, 3});
    CHECK_FALSE(res.has_duplicates);
    CHECK_THROWS_AS(knn(cloud, ref, Query::member(cloud, 0), 3), CapacityError);
    CHECK_THROWS_AS(knn(cloud, std::span<const Index>{}, Query::member(cloud, 0), 1), EmptyReferenceError);
}

TEST_CASE("external query returns the whole bag at k = m") {
    const auto cloud = fixtures::uniform_segment(50, 3);
    const std::vector<Index> bag{2, 5, 11, 17, 30};
    const std::vector<double> x{0.5};
    const auto res = knn(cloud, bag, Query::at(x), bag.size());
    auto got = res.indices;
    std::sort(got.begin(), got.end());
    CHECK(got == bag);
    // non-member cloud point also sees all m
    const auto res2 = knn(cloud, bag, Query::member(cloud, 0), bag.size());
    CHECK(res2.size() == bag.size());
}

TEST_CASE("ties are broken by ascending index") {
    const auto cloud = fixtures::line({0, -1, 1, 2, -2});
    const auto res = knn(cloud, all_indices(5), Query::member(cloud, 0), 4);
    CHECK(res.indices == std::vector<Index>{1, 2, 3, 4});
}

TEST_CASE("duplicates are reported") {
    const auto cloud = fixtures::line({0, 0, 1});
    const auto res = knn(cloud, all_indices(3), Query::member(cloud, 0), 2);
    CHECK(res.has_duplicates);
    CHECK(res.distances[0] == 0.0);
}

TEST_CASE("M9_Affine self query matches brute force and excludes itself") {
    const auto cloud = generate({Dataset::M9_Affine, 500, 11});
    const auto ref = all_indices(cloud.size());
    for (Index q : {0u, 17u, 499u}) {
        const auto res = knn(cloud, ref, Query::member(cloud, q), 10);
        REQUIRE(res.size() == 10);
        std::vector<std::pair<double, Index>> brute;
        for (Index j = 0; j < cloud.size(); ++j)
            if (j != q) brute.emplace_back(pairwise_distance(cloud.point(q), cloud.point(j)), j);
        std::sort(brute.begin(), brute.end());
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(res.distances[i] > 0.0);
            CHECK(res.indices[i] == brute[i].second);
            CHECK(res.distances[i] == doctest::Approx(brute[i].first).epsilon(1e-12));
            CHECK(res.indices[i] != q);
        }
    }
}

TEST_CASE("knn prefix property") {
    const auto cloud = fixtures::gaussian_cloud(300, 4, 5, 4.0);
    const auto ref = all_indices(cloud.size());
    const auto big = knn(cloud, ref, Query::member(cloud, 9), 30);
    for (std::size_t k : {1u, 5u, 29u}) {
        const auto small = knn(cloud, ref, Query::member(cloud, 9), k);
        CHECK(std::equal(small.indices.begin(), small.indices.end(), big.indices.begin()));
        CHECK(std::equal(small.distances.begin(), small.distances.end(), big.distances.begin()));
    }
}

TEST_CASE("reference order does not matter") {
    const auto cloud = fixtures::gaussian_cloud(200, 3, 9, 3.0);
    auto ref = all_indices(cloud.size());
    const auto a = knn(cloud, ref, Query::member(cloud, 4), 12);
    std::reverse(ref.begin(), ref.end());
    std::rotate(ref.begin(), ref.begin() + 77, ref.end());
    const auto b = knn(cloud, ref, Query::member(cloud, 4), 12);
    CHECK(a.indices == b.indices);
    CHECK(a.distances == b.distances);
}

TEST_CASE("ordering index gives the same tables as exhaustive search") {
    const auto cloud = generate({Dataset::M5b_Helix2d, 400, 3});
    const auto order = NeighborOrder::build(cloud, 2);
    std::vector<Index> bag;
    for (Index i = 0; i < cloud.size(); i += 3) bag.push_back(i);
    const auto queries = all_indices(cloud.size());
    const auto naive = knn_table(cloud, bag, queries, 15, {1, nullptr});
    const auto fast = knn_table(cloud, bag, queries, 15, {1, &order});
    const auto threaded = knn_table(cloud, bag, queries, 15, {3, &order});
    CHECK(naive == fast);
    CHECK(naive == threaded);
}

TEST_CASE("table capacity is checked per query") {
    const auto cloud = fixtures::line({0, 1, 2, 3});
    const std::vector<Index> ref{0, 1};
    CHECK_NOTHROW(knn_table(cloud, ref, std::vector<Index>{2, 3}, 2));
    CHECK_THROWS_AS(knn_table(cloud, ref, std::vector<Index>{0}, 2), CapacityError);
}
