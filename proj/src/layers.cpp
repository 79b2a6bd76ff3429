#include "egolayers/layers.hpp"

#include <algorithm>
#include <vector>

namespace egolayers {

LayerProfile nest_clusters(UserId ego, const ClusterConfig& config) {
  LayerProfile profile;
  profile.ego = ego;
  profile.k = config.k;
  profile.annulus_sizes = config.sizes;
  profile.cumulative_sizes.reserve(config.sizes.size());
  int running = 0;
  for (const int s : config.sizes) {
    running += s;
    profile.cumulative_sizes.push_back(running);
  }
  profile.min_freq = config.cluster_min;
  for (std::size_t i = 1; i < profile.min_freq.size(); ++i) {
    if (profile.min_freq[i] > profile.min_freq[i - 1]) {
      throw ArgumentError("clusters are not ordered by descending frequency");
    }
  }
  profile.ratios = scaling_ratios(profile);
  return profile;
}

std::vector<double> scaling_ratios(const LayerProfile& profile) {
  std::vector<double> ratios;
  const auto& cum = profile.cumulative_sizes;
  if (cum.size() < 2) return ratios;
  ratios.reserve(cum.size() - 1);
  for (std::size_t i = 1; i < cum.size(); ++i) {
    ratios.push_back(static_cast<double>(cum[i]) /
                     static_cast<double>(cum[i - 1]));
  }
  return ratios;
}

std::vector<std::pair<double, double>> ccdf(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("CCDF of empty data");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> table;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    // count of X >= sorted[i] is everything at or after the first occurrence
    table.emplace_back(sorted[i], (n - static_cast<double>(i)) / n);
  }
  return table;
}

PopulationReport aggregate(std::span<const LayerProfile> profiles,
                           std::span<const KStarResult> kstars) {
  if (profiles.empty() && kstars.empty()) {
    throw ArgumentError("nothing to aggregate");
  }
  PopulationReport report;

  if (!profiles.empty()) {
    const int k = profiles.front().k;
    for (const auto& p : profiles) {
      if (p.k != k) {
        throw ArgumentError("layer profiles mix different k values");
      }
    }
    report.k = k;
    std::vector<RunningStat> cum(static_cast<std::size_t>(k));
    std::vector<RunningStat> freq(static_cast<std::size_t>(k));
    std::vector<RunningStat> annulus(static_cast<std::size_t>(k));
    for (const auto& p : profiles) {
      for (int i = 0; i < k; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        cum[idx].add(p.cumulative_sizes[idx]);
        freq[idx].add(p.min_freq[idx]);
        annulus[idx].add(p.annulus_sizes[idx]);
      }
    }
    for (int i = 0; i < k; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      report.cumulative_size.push_back(
          {cum[idx].mean(), cum[idx].sd(), cum[idx].se(), cum[idx].n});
      report.min_freq.push_back(
          {freq[idx].mean(), freq[idx].sd(), freq[idx].se(), freq[idx].n});
      report.mean_annulus_size.push_back(annulus[idx].mean());
      if (i > 0) {
        report.cumulative_ratios.push_back(cum[idx].mean() /
                                           cum[idx - 1].mean());
      }
    }
  }

  if (!kstars.empty()) {
    report.has_kstar = true;
    std::vector<int> ks;
    ks.reserve(kstars.size());
    double sum = 0.0;
    for (const auto& r : kstars) {
      ks.push_back(r.k_star);
      sum += r.k_star;
      ++report.kstar_histogram[r.k_star];
    }
    report.kstar_mean = sum / static_cast<double>(ks.size());
    std::sort(ks.begin(), ks.end());
    const std::size_t mid = ks.size() / 2;
    report.kstar_median =
        ks.size() % 2 == 1
            ? ks[mid]
            : (static_cast<double>(ks[mid - 1]) + ks[mid]) / 2.0;
    std::uint64_t best_count = 0;
    for (const auto& [k, count] : report.kstar_histogram) {
      if (count > best_count) {  // map order makes ties go to the smaller k
        best_count = count;
        report.kstar_mode = k;
      }
    }
  }
  return report;
}

}  // namespace egolayers
