#include <algorithm>
#include <vector>

#include "doctest.h"
#include "egolayers/cluster.hpp"
#include "egolayers/rng.hpp"
#include "oracles.hpp"

using namespace egolayers;

namespace {

std::vector<double> random_desc(SplitMix64& rng, int n, double scale = 100.0) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values.push_back(rng.next_double() * scale);
  std::sort(values.rbegin(), values.rend());
  return values;
}

const std::vector<double> kSixValues{12, 11, 10, 3, 2, 1};

}  // namespace

TEST_CASE("kmeans_1d on a well-separated pair") {
  const ClusterConfig config = kmeans_1d(kSixValues, 2);
  CHECK(config.sizes == std::vector<int>{3, 3});
  CHECK(config.centroids[0] == doctest::Approx(11.0));
  CHECK(config.centroids[1] == doctest::Approx(2.0));
  CHECK(config.wcss == doctest::Approx(4.0));
  CHECK(config.boundaries == std::vector<int>{3});
  CHECK(config.cluster_min[0] == doctest::Approx(10.0));
  CHECK(config.cluster_min[1] == doctest::Approx(1.0));
}

TEST_CASE("kmeans_1d with k=1 reproduces the total sum of squares") {
  const ClusterConfig config = kmeans_1d(kSixValues, 1);
  CHECK(config.sizes == std::vector<int>{6});
  CHECK(config.centroids[0] == doctest::Approx(6.5));
  CHECK(config.wcss == doctest::Approx(config.ss_tot));
  CHECK(config.ss_tot == doctest::Approx(125.5));
}

TEST_CASE("kmeans_1d argument errors") {
  CHECK_THROWS_AS(kmeans_1d(kSixValues, 0), ArgumentError);
  CHECK_THROWS_AS(kmeans_1d(kSixValues, -2), ArgumentError);
  CHECK_THROWS_AS(kmeans_1d(kSixValues, 7), ArgumentError);
  const std::vector<double> unsorted{1.0, 5.0, 2.0};
  CHECK_THROWS_AS(kmeans_1d(unsorted, 2), ArgumentError);
}

TEST_CASE("kmeans_1d matches exhaustive enumeration on random instances") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(4));
    const int n = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(11 - k)));
    const auto values = random_desc(rng, n);
    const ClusterConfig config = kmeans_1d(values, k);
    const double expected = oracles::brute_force_wcss(values, k);
    CHECK(config.wcss ==
          doctest::Approx(expected).epsilon(1e-9).scale(std::max(1.0, expected)));
  }
}

TEST_CASE("kmeans_1d is deterministic, including tie cases") {
  const std::vector<double> ties{4, 4, 4, 4, 2, 2, 2, 2};
  const ClusterConfig a = kmeans_1d(ties, 3);
  const ClusterConfig b = kmeans_1d(ties, 3);
  CHECK(a.boundaries == b.boundaries);
  CHECK(a.sizes == b.sizes);
  CHECK(a.wcss == b.wcss);
  // equal-WCSS partitions resolve to the lexicographically smallest
  // boundary vector: the forced split of one duplicate run happens as
  // early as possible
  CHECK(a.boundaries == std::vector<int>{1, 4});
}

TEST_CASE("variance_explained") {
  CHECK(variance_explained(kmeans_1d(kSixValues, 1)) == doctest::Approx(0.0));
  CHECK(variance_explained(kmeans_1d(kSixValues, 6)) == doctest::Approx(1.0));
  CHECK(variance_explained(kmeans_1d(kSixValues, 2)) ==
        doctest::Approx((125.5 - 4.0) / 125.5));
  // all-identical values: SS_TOT = 0 reports a perfect fit
  const std::vector<double> flat{5, 5, 5, 5};
  CHECK(variance_explained(kmeans_1d(flat, 2)) == doctest::Approx(1.0));
}

TEST_CASE("aic_score (pooled variance form)") {
  SUBCASE("equal WCSS scores favor the smaller k") {
    ClusterConfig two;
    two.k = 2;
    two.wcss = 10.0;
    two.ss_tot = 100.0;
    ClusterConfig three = two;
    three.k = 3;
    CHECK(aic_score(two, 20) < aic_score(three, 20));
  }
  SUBCASE("perfect fit stays finite through the floor") {
    ClusterConfig perfect;
    perfect.k = 3;
    perfect.wcss = 0.0;
    perfect.ss_tot = 50.0;
    const double score = aic_score(perfect, 10);
    CHECK(std::isfinite(score));
    perfect.ss_tot = 0.0;
    CHECK(std::isfinite(aic_score(perfect, 10)));
  }
  SUBCASE("two clusters beat one on separated data") {
    const ClusterConfig one = kmeans_1d(kSixValues, 1);
    const ClusterConfig two = kmeans_1d(kSixValues, 2);
    CHECK(aic_score(two, 6) < aic_score(one, 6));
  }
}

TEST_CASE("classification_aic also separates the six-value example") {
  const ClusterConfig one = kmeans_1d(kSixValues, 1);
  const ClusterConfig two = kmeans_1d(kSixValues, 2);
  CHECK(classification_aic(two, 6) < classification_aic(one, 6));
}

TEST_CASE("select_k recovers planted bands") {
  // four value bands, ratio 3 apart, mild within-band spread
  SplitMix64 rng(77);
  std::vector<double> values;
  const double bases[] = {81, 27, 9, 3};
  const int sizes[] = {3, 5, 12, 30};
  for (int band = 0; band < 4; ++band) {
    for (int i = 0; i < sizes[band]; ++i) {
      values.push_back(bases[band] * (1.0 + 0.08 * rng.next_double()));
    }
  }
  std::sort(values.rbegin(), values.rend());
  const KStarResult result = select_k(values, 20);
  CHECK(result.k_star == 4);
  REQUIRE(result.mean_silhouette.has_value());
  CHECK(*result.mean_silhouette > 0.6);
  CHECK(result.per_k.size() == 20);
}

TEST_CASE("select_k trivial cases") {
  const std::vector<double> single{42.0};
  CHECK(select_k(single, 20).k_star == 1);

  const std::vector<double> flat(50, 3.25);
  const KStarResult result = select_k(flat, 20);
  CHECK(result.k_star == 1);
  CHECK_FALSE(result.mean_silhouette.has_value());

  CHECK_THROWS_AS(select_k(std::vector<double>{}, 20), ArgumentError);
}

TEST_CASE("select_k per-k table exposes both criteria") {
  SplitMix64 rng(11);
  const auto values = random_desc(rng, 30);
  const KStarResult result = select_k(values, 10);
  for (const auto& row : result.per_k) {
    const ClusterConfig config = kmeans_1d(values, row.k);
    CHECK(row.wcss == doctest::Approx(config.wcss));
    CHECK(row.aic_pooled ==
          doctest::Approx(aic_score(config, values.size())));
    CHECK(row.aic ==
          doctest::Approx(classification_aic(config, values.size())));
  }
}

TEST_CASE("silhouette of two tight far-apart clusters is 1") {
  const std::vector<double> values{100, 100, 100, 5, 5, 5};
  const auto s = silhouette_mean(values, kmeans_1d(values, 2));
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(1.0));
}

TEST_CASE("silhouette: singleton cluster contributes zero") {
  const std::vector<double> values{100, 10, 9};
  const ClusterConfig config = kmeans_1d(values, 2);
  REQUIRE(config.sizes == std::vector<int>{1, 2});
  // remaining two points are symmetric; their s values average with the 0
  const double expected = oracles::naive_silhouette(values, config.sizes);
  const auto s = silhouette_mean(values, config);
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("silhouette sentinel for k=1") {
  const std::vector<double> values{3, 2, 1};
  CHECK_FALSE(silhouette_mean(values, kmeans_1d(values, 1)).has_value());
}

TEST_CASE("silhouette matches the direct evaluation on random instances") {
  SplitMix64 rng(909);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(2));
    const int n = std::max(k + 1, 12);
    const auto values = random_desc(rng, n);
    const ClusterConfig config = kmeans_1d(values, k);
    const auto s = silhouette_mean(values, config);
    REQUIRE(s.has_value());
    CHECK(*s == doctest::Approx(oracles::naive_silhouette(values, config.sizes))
                    .epsilon(1e-12));
  }
}

TEST_CASE("WCSS is non-increasing and VAR_exp non-decreasing in k") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(40));
    const auto values = random_desc(rng, n);
    double prev_wcss = std::numeric_limits<double>::infinity();
    double prev_var = -1.0;
    for (int k = 1; k <= std::min(n, 12); ++k) {
      const ClusterConfig config = kmeans_1d(values, k);
      const double var = variance_explained(config);
      CHECK(config.wcss <= prev_wcss + 1e-9 * std::max(1.0, config.ss_tot));
      CHECK(var >= prev_var - 1e-12);
      CHECK(var >= 0.0);
      CHECK(var <= 1.0);
      prev_wcss = config.wcss;
      prev_var = var;
    }
  }
}

TEST_CASE("scaling all values leaves assignments, k* and silhouette alone") {
  SplitMix64 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8 + static_cast<int>(rng.below(30));
    const auto values = random_desc(rng, n);
    const double c = 0.25 + 10.0 * rng.next_double();
    std::vector<double> scaled = values;
    for (auto& v : scaled) v *= c;

    const KStarResult base = select_k(values, 15);
    const KStarResult other = select_k(scaled, 15);
    CHECK(base.k_star == other.k_star);

    const ClusterConfig config = kmeans_1d(values, base.k_star);
    const ClusterConfig scaled_config = kmeans_1d(scaled, base.k_star);
    CHECK(config.sizes == scaled_config.sizes);
    CHECK(scaled_config.wcss ==
          doctest::Approx(c * c * config.wcss).epsilon(1e-9));
    if (base.mean_silhouette.has_value()) {
      REQUIRE(other.mean_silhouette.has_value());
      CHECK(*base.mean_silhouette ==
            doctest::Approx(*other.mean_silhouette).epsilon(1e-9));
    }
  }
}
