#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "egolayers/cluster.hpp"
#include "egolayers/common.hpp"

namespace egolayers {

/// Nested concentric layers for one ego. Layer i is the union of annuli
/// 0..i (annulus 0 = highest-frequency cluster).
struct LayerProfile {
  UserId ego = 0;
  int k = 0;
  std::vector<int> annulus_sizes;      // members per cluster, innermost first
  std::vector<int> cumulative_sizes;   // prefix sums of annulus_sizes
  std::vector<double> min_freq;        // smallest member frequency per annulus
  std::vector<double> ratios;          // cumulative_sizes[i+1] / cumulative_sizes[i]
};

/// Converts a clustering (clusters ordered by descending centroid) into
/// nested layers with per-layer minimum contact frequencies.
LayerProfile nest_clusters(UserId ego, const ClusterConfig& config);

/// Element-wise ratios of consecutive cumulative sizes; empty below two
/// layers.
std::vector<double> scaling_ratios(const LayerProfile& profile);

/// Empirical CCDF evaluated at each distinct value, ascending:
/// (x, P(X >= x)). P at the minimum is 1.0.
std::vector<std::pair<double, double>> ccdf(std::span<const double> values);

/// Mergeable moment accumulator; merge is associative, so population
/// aggregation can be split any way and folded back.
struct RunningStat {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const RunningStat& other) {
    n += other.n;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
  /// Sample standard deviation (n-1 denominator); 0 below two samples.
  double sd() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var =
        (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
  double se() const {
    return n == 0 ? 0.0 : sd() / std::sqrt(static_cast<double>(n));
  }
};

struct LayerStat {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::uint64_t count = 0;
};

/// Population aggregate: Table-style per-layer statistics plus the k*
/// distribution. CCDFs, filter counts and silhouette are attached by the
/// pipeline.
struct PopulationReport {
  // filter bookkeeping
  std::uint64_t egos_total = 0;
  std::uint64_t egos_active = 0;
  std::uint64_t egos_discarded_low_rate = 0;
  std::uint64_t egos_empty_active = 0;
  std::uint64_t egos_skipped_small_k = 0;
  std::uint64_t egos_analyzed = 0;
  std::uint64_t relationships_analyzed = 0;

  // fixed-k layer statistics
  int k = 0;
  std::vector<LayerStat> cumulative_size;
  std::vector<LayerStat> min_freq;
  std::vector<double> mean_annulus_size;
  std::vector<double> cumulative_ratios;  // ratios of mean cumulative sizes

  // k* distribution
  bool has_kstar = false;
  double kstar_mean = 0.0;
  double kstar_median = 0.0;
  int kstar_mode = 0;
  std::map<int, std::uint64_t> kstar_histogram;

  // silhouette (at k* in selection mode, at the fixed k otherwise)
  double mean_silhouette = 0.0;
  std::uint64_t silhouette_count = 0;
  std::uint64_t silhouette_not_applicable = 0;

  // DBSCAN cross-check
  bool has_dbscan = false;
  std::vector<LayerStat> dbscan_cumulative;
  std::vector<double> dbscan_mean_abs_diff;
  double dbscan_exact_fraction = 0.0;
  double dbscan_mean_noise = 0.0;
  std::uint64_t dbscan_infeasible = 0;

  // CCDF tables
  std::vector<std::pair<double, double>> ccdf_contact_freq;
  std::vector<std::pair<double, double>> ccdf_ego_size;
  std::vector<std::pair<double, double>> ccdf_active_size;
};

/// Aggregates per-ego layer profiles (all at the same fixed k) and k*
/// results into per-layer means, SD and SE plus the k* histogram. Either
/// span may be empty, but not both.
PopulationReport aggregate(std::span<const LayerProfile> profiles,
                           std::span<const KStarResult> kstars);

}  // namespace egolayers
