#pragma once

#include <optional>
#include <span>
#include <vector>

#include "egolayers/common.hpp"

namespace egolayers {

/// One k-means result over an ego's descending-sorted contact frequencies.
/// Clusters are contiguous intervals of the sorted values; cluster 0 holds
/// the highest frequencies.
struct ClusterConfig {
  int k = 0;
  std::vector<int> boundaries;      // start index of cluster j+1, size k-1
  std::vector<double> centroids;    // descending
  std::vector<int> sizes;           // sum to n
  std::vector<double> cluster_ss;   // within sum of squares per cluster
  std::vector<double> cluster_min;  // smallest member frequency per cluster
  double wcss = 0.0;
  double ss_tot = 0.0;
  double value_range = 0.0;  // max - min of the clustered values
  std::optional<double> mean_silhouette;
};

struct KStarEntry {
  int k = 0;
  double wcss = 0.0;
  double var_exp = 0.0;
  double aic = 0.0;         // classification AIC (the selection criterion)
  double aic_pooled = 0.0;  // pooled-variance form, for external comparison
};

struct KStarResult {
  int k_star = 0;
  std::vector<KStarEntry> per_k;  // k = 1..min(k_max, n)
  std::optional<double> mean_silhouette;  // at k_star; empty when k_star == 1
};

/// Globally optimal 1-D k-means over descending-sorted values by dynamic
/// programming over contiguous partitions. Deterministic; ties between
/// equal-WCSS partitions resolve to the lexicographically smallest boundary
/// vector.
ClusterConfig kmeans_1d(std::span<const double> values_desc, int k);

/// (SS_TOT - WCSS) / SS_TOT, in [0, 1]; 1 when SS_TOT == 0.
double variance_explained(const ClusterConfig& config);

/// Pooled-variance AIC: n * ln(max(WCSS, eps_floor) / n) + 2k, with
/// eps_floor = 1e-12 * SS_TOT (absolute 1e-12 when SS_TOT == 0). Lower is
/// better. Useful for recomputing alternative criteria from the per-k
/// table; see classification_aic for why selection does not use it.
double aic_score(const ClusterConfig& config, std::size_t n);

/// AIC of the Gaussian classification likelihood with per-cluster variance
/// and mixing weights (3k - 1 parameters). Per-cluster variances are floored
/// at range^2 / (12 n^2), the quantization noise of n points over the data
/// range, so point-mass clusters stay finite. This is the criterion
/// select_k minimizes: unlike the pooled form, its argmin settles on the
/// number of separated value bands instead of growing with k.
double classification_aic(const ClusterConfig& config, std::size_t n);

/// Scans k = 1..min(k_max, n), returns the argmin of classification_aic
/// (ties to the smaller k) with the full per-k table and the mean
/// silhouette at k_star.
KStarResult select_k(std::span<const double> values_desc, int k_max = 20);

/// Mean silhouette s(x) = (b(x) - a(x)) / max(a(x), b(x)) over all points;
/// singleton clusters contribute 0. Empty for k == 1 (not applicable).
std::optional<double> silhouette_mean(std::span<const double> values_desc,
                                      const ClusterConfig& config);

}  // namespace egolayers
