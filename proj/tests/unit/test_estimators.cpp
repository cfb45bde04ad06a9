#include "baglid/datasets.hpp"
#include "baglid/errors.hpp"
#include "baglid/estimators.hpp"
#include "baglid/stats.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>

using namespace baglid;

namespace {

EstimatorConfig cfg(Method m, std::size_t k, double clamp = 1e6) { return {m, k, clamp}; }

double mean_value(const std::vector<LidEstimate>& v) {
    std::vector<double> x;
    for (const auto& e : v) x.push_back(e.value);
    return stable_mean(x);
}

double variance_of(const std::vector<LidEstimate>& v) {
    std::vector<double> x;
    for (const auto& e : v) x.push_back(e.value);
    return moments(x).variance;
}

} // namespace

TEST_CASE("method names") {
    CHECK(parse_method("MLE") == Method::Mle);
    CHECK(parse_method("mada") == Method::Mada);
    CHECK(parse_method("Tle") == Method::Tle);
    CHECK_THROWS_AS(parse_method("twonn"), ConfigError);
    CHECK(to_string(Method::Tle) == "tle");
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(cfg(Method::Mle, 1).validate(), ConfigError);
    CHECK_NOTHROW(cfg(Method::Mle, 2).validate());
}

TEST_CASE("MLE hand examples") {
    const std::vector<double> d{std::exp(-1.0), 1.0};
    const auto e = estimate_mle(d, cfg(Method::Mle, 2));
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(e.divergent);

    auto one_over_k = cfg(Method::Mle, 2);
    one_over_k.mle_normalization = MleNormalization::K;
    CHECK(estimate_mle(d, one_over_k).value == doctest::Approx(2.0));

    const std::vector<double> same{0.5, 0.5, 0.5};
    const auto div = estimate_mle(same, cfg(Method::Mle, 3, 40.0));
    CHECK(div.divergent);
    CHECK(div.value == 40.0);
}

TEST_CASE("values above the clamp are divergent") {
    const std::vector<double> d{0.999999, 1.0};
    const auto e = estimate_mle(d, cfg(Method::Mle, 2, 10.0));
    CHECK(e.divergent);
    CHECK(e.value == 10.0);
}

TEST_CASE("zero distances are rejected") {
    const std::vector<double> d{0.0, 1.0};
    CHECK_THROWS_AS(estimate_mle(d, cfg(Method::Mle, 2)), ZeroDistanceError);
}

TEST_CASE("MADA hand examples") {
    const std::vector<double> a{0.25, 0.5, 0.75, 1.0};
    CHECK(estimate_mada(a, cfg(Method::Mada, 4)).value == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<double> b{0.25, 0.5, 0.6, 0.5 * std::sqrt(2.0)};
    CHECK(estimate_mada(b, cfg(Method::Mada, 4)).value == doctest::Approx(2.0).epsilon(1e-12));
    const std::vector<double> c{0.5, 0.5, 0.5};
    CHECK(estimate_mada(c, cfg(Method::Mada, 3)).divergent);
}

TEST_CASE("MLE on a uniform segment averages to one") {
    double total = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        const auto cloud = fixtures::uniform_segment(2500, static_cast<std::uint64_t>(s));
        const auto est = estimate_all(cloud, cfg(Method::Mle, 10));
        const double m = mean_value(est);
        CHECK(m == doctest::Approx(1.0).epsilon(0.15));
        total += m;
    }
    CHECK(total / seeds == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("MADA on the S-curve averages to two") {
    const auto cloud = generate({Dataset::M13a_Scurve, 2500, 1});
    const auto est = estimate_all(cloud, {Method::Mada, 10, std::nullopt});
    CHECK(mean_value(est) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("TLE on collinear neighbors is close to one") {
    const auto cloud = fixtures::line({0.0, 0.1, -0.17, 0.26, -0.33, 0.41, -0.52, 0.6, 0.69, -0.77, 0.9});
    const auto tle = estimate_at(cloud, all_indices(cloud.size()), Query::member(cloud, 0), cfg(Method::Tle, 10));
    const auto mle = estimate_at(cloud, all_indices(cloud.size()), Query::member(cloud, 0), cfg(Method::Mle, 10));
    CHECK(tle.value == doctest::Approx(1.0).epsilon(0.3));
    CHECK(std::abs(tle.value - 1.0) <= std::abs(mle.value - 1.0) + 0.3);
}

TEST_CASE("TLE divergent fixture") {
    // four neighbors at unit distance, symmetric around the query
    const PointCloud cloud(2, {0, 0, 1, 0, -1, 0, 0, 1, 0, -1}, std::vector<int>(5, 1), {2.0});
    const auto e = estimate_at(cloud, all_indices(5), Query::member(cloud, 0), cfg(Method::Tle, 4, 20.0));
    CHECK(e.divergent);
    CHECK(e.value == 20.0);
}

TEST_CASE("TLE has lower variance than MLE on M9_Affine") {
    const auto cloud = generate({Dataset::M9_Affine, 2500, 2});
    const auto mle = estimate_all(cloud, {Method::Mle, 20, std::nullopt});
    const auto tle = estimate_all(cloud, {Method::Tle, 20, std::nullopt});
    CHECK(variance_of(tle) < variance_of(mle));
}

TEST_CASE("every generator gives finite positive estimates at k = 10") {
    for (const auto& info : all_datasets()) {
        const auto cloud = generate({info.id, 600, 4});
        for (auto m : {Method::Mle, Method::Mada, Method::Tle}) {
            const auto est = estimate_all(cloud, {m, 10, std::nullopt});
            for (const auto& e : est) {
                REQUIRE(std::isfinite(e.value));
                REQUIRE(e.value > 0.0);
            }
        }
    }
}

TEST_CASE("reference of size k + 1 uses exactly k neighbors") {
    const auto cloud = fixtures::gaussian_cloud(40, 3, 8, 3.0);
    const std::vector<Index> ref{0, 3, 5, 7, 9, 11};
    const auto e = estimate_at(cloud, ref, Query::member(cloud, 0), cfg(Method::Mle, 5));
    CHECK(e.k_used == 5);
    CHECK_THROWS_AS(estimate_at(cloud, ref, Query::member(cloud, 0), cfg(Method::Mle, 6)), CapacityError);
}

TEST_CASE("estimates are deterministic, scale invariant and thread invariant") {
    const auto cloud = generate({Dataset::M7_Roll, 800, 5});
    for (auto m : {Method::Mle, Method::Mada, Method::Tle}) {
        const EstimatorConfig c{m, 12, std::nullopt};
        const auto a = estimate_all(cloud, c);
        CHECK(a == estimate_all(cloud, c));
        CHECK(a == estimate_all(cloud, c, {3, nullptr}));
        const auto scaled = estimate_all(cloud.scaled(8.0), c);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(scaled[i].value == doctest::Approx(a[i].value).epsilon(1e-9));
    }
}
