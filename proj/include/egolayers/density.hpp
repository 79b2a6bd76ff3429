#pragma once

#include <span>
#include <utility>
#include <vector>

#include "egolayers/common.hpp"

namespace egolayers {

/// DBSCAN output over descending-sorted frequencies. Clusters are contiguous
/// index ranges ordered from the highest-frequency cluster outward; points
/// in no cluster are noise.
struct DensityClustering {
  double eps = 0.0;
  std::vector<std::pair<int, int>> clusters;  // inclusive [first, last] index ranges
  std::vector<int> cluster_sizes;
  std::vector<int> noise;  // indices of excluded points
  int achieved_k = 0;
  bool exact = false;   // set by calibrate_eps when achieved_k == target
  int iterations = 0;   // eps steps taken by calibrate_eps
};

/// 1-D DBSCAN. A point is core iff at least min_pts points (itself included)
/// lie within eps; clusters are chains of core points plus density-reachable
/// border points. A border point reachable from two clusters joins the
/// higher-frequency side.
DensityClustering dbscan_1d(std::span<const double> values_desc, double eps,
                            int min_pts = 2);

/// Iterates DBSCAN from eps = value range downward (factor 0.95 per step)
/// until the cluster count reaches target_k or eps falls below the minimum
/// positive gap between distinct values. Returns the clustering whose count
/// came closest to target_k, preferring the larger eps on ties; `exact` is
/// set when the target was hit. Requires n >= 2 * target_k (min_pts = 2
/// caps the cluster count at floor(n/2)).
DensityClustering calibrate_eps(std::span<const double> values_desc,
                                int target_k, int min_pts = 2);

}  // namespace egolayers
