#include "egolayers/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace egolayers {

DensityClustering dbscan_1d(std::span<const double> values_desc, double eps,
                            int min_pts) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
  if (min_pts < 2) throw ArgumentError("min_pts must be at least 2");
  const int n = static_cast<int>(values_desc.size());
  for (int i = 1; i < n; ++i) {
    if (values_desc[static_cast<std::size_t>(i)] >
        values_desc[static_cast<std::size_t>(i - 1)]) {
      throw ArgumentError("values must be sorted in descending order");
    }
  }

  DensityClustering out;
  out.eps = eps;
  if (n == 0) return out;

  const auto value = [&](int i) {
    return values_desc[static_cast<std::size_t>(i)];
  };

  // neighbor counts (self included) via a sliding window over sorted values
  std::vector<bool> core(static_cast<std::size_t>(n), false);
  {
    int lo = 0, hi = 0;  // window [lo, hi] of points within eps of i
    for (int i = 0; i < n; ++i) {
      while (value(lo) - value(i) > eps) ++lo;
      if (hi < i) hi = i;
      while (hi + 1 < n && value(i) - value(hi + 1) <= eps) ++hi;
      core[static_cast<std::size_t>(i)] = (hi - lo + 1) >= min_pts;
    }
  }

  // chain adjacent core points, then attach borders (ties go to the
  // higher-frequency = earlier side)
  std::vector<int> cluster(static_cast<std::size_t>(n), -1);
  int cluster_count = 0;
  int last_core = -1;
  for (int i = 0; i < n; ++i) {
    if (!core[static_cast<std::size_t>(i)]) continue;
    if (last_core >= 0 && value(last_core) - value(i) <= eps) {
      cluster[static_cast<std::size_t>(i)] = cluster_count - 1;
    } else {
      cluster[static_cast<std::size_t>(i)] = cluster_count++;
    }
    last_core = i;
  }
  std::vector<int> prev_core(static_cast<std::size_t>(n), -1);
  std::vector<int> next_core(static_cast<std::size_t>(n), -1);
  for (int i = 0, pc = -1; i < n; ++i) {
    if (core[static_cast<std::size_t>(i)]) pc = i;
    prev_core[static_cast<std::size_t>(i)] = pc;
  }
  for (int i = n - 1, nc = -1; i >= 0; --i) {
    if (core[static_cast<std::size_t>(i)]) nc = i;
    next_core[static_cast<std::size_t>(i)] = nc;
  }
  for (int i = 0; i < n; ++i) {
    if (core[static_cast<std::size_t>(i)]) continue;
    const int p = prev_core[static_cast<std::size_t>(i)];
    const int q = next_core[static_cast<std::size_t>(i)];
    if (p >= 0 && value(p) - value(i) <= eps) {
      cluster[static_cast<std::size_t>(i)] = cluster[static_cast<std::size_t>(p)];
    } else if (q >= 0 && value(i) - value(q) <= eps) {
      cluster[static_cast<std::size_t>(i)] = cluster[static_cast<std::size_t>(q)];
    }
  }

  out.achieved_k = cluster_count;
  out.clusters.assign(static_cast<std::size_t>(cluster_count),
                      {n, -1});
  for (int i = 0; i < n; ++i) {
    const int c = cluster[static_cast<std::size_t>(i)];
    if (c < 0) {
      out.noise.push_back(i);
      continue;
    }
    auto& range = out.clusters[static_cast<std::size_t>(c)];
    range.first = std::min(range.first, i);
    range.second = std::max(range.second, i);
  }
  out.cluster_sizes.reserve(out.clusters.size());
  for (const auto& [first, last] : out.clusters) {
    out.cluster_sizes.push_back(last - first + 1);
  }
  return out;
}

DensityClustering calibrate_eps(std::span<const double> values_desc,
                                int target_k, int min_pts) {
  const int n = static_cast<int>(values_desc.size());
  if (target_k < 1) throw ArgumentError("target_k must be positive");
  if (n < 2 * target_k) {
    throw ArgumentError("infeasible target: " + std::to_string(target_k) +
                        " clusters need at least " +
                        std::to_string(2 * target_k) + " points (MinPts=2)");
  }

  const double range = values_desc.front() - values_desc.back();
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i) {
    const double gap = values_desc[static_cast<std::size_t>(i - 1)] -
                       values_desc[static_cast<std::size_t>(i)];
    if (gap > 0.0) min_gap = std::min(min_gap, gap);
  }
  const bool has_gap = std::isfinite(min_gap);

  double eps = range > 0.0 ? range : 1.0;
  DensityClustering best;
  int best_diff = -1;
  int iterations = 0;
  constexpr int kMaxIterations = 100000;
  while (true) {
    DensityClustering current = dbscan_1d(values_desc, eps, min_pts);
    const int achieved = current.achieved_k;
    const int diff = std::abs(achieved - target_k);
    if (best_diff < 0 || diff < best_diff) {  // ties keep the larger eps
      best_diff = diff;
      best = std::move(current);
    }
    if (achieved >= target_k) break;  // first eps reaching the target count
    ++iterations;
    eps *= 0.95;
    if (!has_gap || eps < min_gap || iterations > kMaxIterations) break;
  }
  best.exact = best.achieved_k == target_k;
  best.iterations = iterations;
  return best;
}

}  // namespace egolayers
