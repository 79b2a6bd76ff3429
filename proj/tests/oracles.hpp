// Independent reference implementations used as test oracles. These stay
// deliberately naive (exhaustive enumeration, direct formula evaluation) and
// must not share code with the library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace oracles {

/// WCSS of one contiguous partition, computed the slow two-pass way.
inline double partition_wcss(std::span<const double> values,
                             const std::vector<int>& sizes) {
  double total = 0.0;
  std::size_t pos = 0;
  for (const int size : sizes) {
    double mean = 0.0;
    for (int i = 0; i < size; ++i) mean += values[pos + static_cast<std::size_t>(i)];
    mean /= size;
    for (int i = 0; i < size; ++i) {
      const double d = values[pos + static_cast<std::size_t>(i)] - mean;
      total += d * d;
    }
    pos += static_cast<std::size_t>(size);
  }
  return total;
}

/// Exhaustive minimum WCSS over every contiguous partition of the values
/// into exactly k parts. Optimal 1-D clusters are contiguous intervals of
/// the sorted sequence, so this enumeration is an exact oracle.
inline double brute_force_wcss(std::span<const double> values, int k) {
  const int n = static_cast<int>(values.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> sizes;
  const auto recurse = [&](auto&& self, int remaining, int parts) -> void {
    if (parts == 1) {
      sizes.push_back(remaining);
      best = std::min(best, partition_wcss(values, sizes));
      sizes.pop_back();
      return;
    }
    for (int take = 1; take <= remaining - (parts - 1); ++take) {
      sizes.push_back(take);
      self(self, remaining - take, parts - 1);
      sizes.pop_back();
    }
  };
  recurse(recurse, n, k);
  return best;
}

/// Direct evaluation of the silhouette: a(x) is the average distance to the
/// other members of x's cluster, b(x) the smallest average distance to any
/// other cluster, s(x) = (b - a) / max(a, b) with singletons scoring 0.
inline double naive_silhouette(std::span<const double> values,
                               const std::vector<int>& sizes) {
  const int n = static_cast<int>(values.size());
  std::vector<int> label(static_cast<std::size_t>(n));
  {
    int cluster = 0, left = sizes[0];
    for (int i = 0; i < n; ++i) {
      while (left == 0) left = sizes[static_cast<std::size_t>(++cluster)];
      label[static_cast<std::size_t>(i)] = cluster;
      --left;
    }
  }
  const int k = static_cast<int>(sizes.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (sizes[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])] == 1) continue;
    std::vector<double> sum(static_cast<std::size_t>(k), 0.0);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      sum[static_cast<std::size_t>(label[static_cast<std::size_t>(j)])] +=
          std::abs(values[static_cast<std::size_t>(i)] -
                   values[static_cast<std::size_t>(j)]);
    }
    const int own = label[static_cast<std::size_t>(i)];
    const double a =
        sum[static_cast<std::size_t>(own)] /
        (sizes[static_cast<std::size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own) continue;
      b = std::min(b, sum[static_cast<std::size_t>(c)] /
                          sizes[static_cast<std::size_t>(c)]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / n;
}

}  // namespace oracles
