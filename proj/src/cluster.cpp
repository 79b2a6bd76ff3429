#include "egolayers/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace egolayers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_sorted_desc(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1]) {
      throw ArgumentError("values must be sorted in descending order");
    }
  }
}

/// Suffix dynamic program over contiguous partitions, computed once up to
/// k_max and read out per k. Interval costs use prefix sums of
/// mean-centered values, which keeps the quadratic terms well conditioned.
class KMeansDp {
 public:
  KMeansDp(std::span<const double> values, int k_max)
      : values_(values), n_(static_cast<int>(values.size())) {
    check_sorted_desc(values);
    if (n_ == 0) throw ArgumentError("k-means over empty values");
    if (k_max < 1) throw ArgumentError("k must be positive");
    k_max_ = std::min(k_max, n_);

    // prefix sums of centered and raw values
    double mean = 0.0;
    for (const double v : values_) mean += v;
    mean /= n_;
    prefix_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
    prefix_sq_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
    prefix_raw_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
    for (int i = 0; i < n_; ++i) {
      const double c = values_[static_cast<std::size_t>(i)] - mean;
      prefix_[i + 1] = prefix_[i] + c;
      prefix_sq_[i + 1] = prefix_sq_[i] + c * c;
      prefix_raw_[i + 1] = prefix_raw_[i] + values_[static_cast<std::size_t>(i)];
    }

    // cost[j][i]: best WCSS of suffix i.. into j clusters.
    const auto rows = static_cast<std::size_t>(k_max_) + 1;
    const auto cols = static_cast<std::size_t>(n_) + 1;
    cost_.assign(rows, std::vector<double>(cols, kInf));
    choice_.assign(rows, std::vector<int>(cols, -1));
    cost_[0][static_cast<std::size_t>(n_)] = 0.0;
    for (int j = 1; j <= k_max_; ++j) {
      for (int i = n_ - j; i >= 0; --i) {
        double best = kInf;
        int best_end = -1;
        // cluster j spans i..e; leftmost argmin keeps boundary vectors
        // lexicographically smallest on ties
        for (int e = i; e <= n_ - j; ++e) {
          const double cand = interval_cost(i, e) +
                              cost_[static_cast<std::size_t>(j - 1)]
                                   [static_cast<std::size_t>(e + 1)];
          if (cand < best) {
            best = cand;
            best_end = e;
          }
        }
        cost_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = best;
        choice_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            best_end;
      }
    }
  }

  int k_max() const { return k_max_; }
  int n() const { return n_; }

  ClusterConfig extract(int k) const {
    if (k < 1 || k > k_max_) throw ArgumentError("k out of computed range");
    ClusterConfig config;
    config.k = k;
    config.ss_tot = interval_cost(0, n_ - 1);
    config.value_range =
        values_.front() - values_.back();

    int i = 0;
    double wcss = 0.0;
    for (int j = k; j >= 1; --j) {
      const int e =
          choice_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      const int size = e - i + 1;
      config.sizes.push_back(size);
      const double ss = interval_cost(i, e);
      config.cluster_ss.push_back(ss);
      wcss += ss;
      config.centroids.push_back((prefix_raw_[e + 1] - prefix_raw_[i]) / size);
      config.cluster_min.push_back(values_[static_cast<std::size_t>(e)]);
      if (j > 1) config.boundaries.push_back(e + 1);
      i = e + 1;
    }
    config.wcss = wcss;
    return config;
  }

 private:
  double interval_cost(int a, int b) const {
    const double s = prefix_[b + 1] - prefix_[a];
    const double ss = prefix_sq_[b + 1] - prefix_sq_[a];
    const double m = b - a + 1;
    return std::max(0.0, ss - s * s / m);
  }

  std::span<const double> values_;
  int n_;
  int k_max_;
  std::vector<double> prefix_, prefix_sq_, prefix_raw_;
  std::vector<std::vector<double>> cost_;
  std::vector<std::vector<int>> choice_;
};

}  // namespace

ClusterConfig kmeans_1d(std::span<const double> values_desc, int k) {
  if (k < 1) throw ArgumentError("k must be positive");
  if (static_cast<std::size_t>(k) > values_desc.size()) {
    throw ArgumentError("k exceeds the number of values");
  }
  return KMeansDp(values_desc, k).extract(k);
}

double variance_explained(const ClusterConfig& config) {
  if (config.ss_tot <= 0.0) return 1.0;
  const double v = (config.ss_tot - config.wcss) / config.ss_tot;
  return std::clamp(v, 0.0, 1.0);
}

double aic_score(const ClusterConfig& config, std::size_t n) {
  if (n == 0) throw ArgumentError("empty data");
  const double floor =
      config.ss_tot > 0.0 ? 1e-12 * config.ss_tot : 1e-12;
  const double wcss = std::max(config.wcss, floor);
  const double dn = static_cast<double>(n);
  return dn * std::log(wcss / dn) + 2.0 * config.k;
}

double classification_aic(const ClusterConfig& config, std::size_t n) {
  if (n == 0) throw ArgumentError("empty data");
  const double dn = static_cast<double>(n);
  const double range = config.value_range;
  const double var_floor =
      range > 0.0 ? range * range / (12.0 * dn * dn) : 1e-12;
  double log_lik = 0.0;
  for (std::size_t c = 0; c < config.sizes.size(); ++c) {
    const double m = config.sizes[c];
    const double var = std::max(config.cluster_ss[c] / m, var_floor);
    log_lik += m * (std::log(m) - std::log(dn)) -
               0.5 * m * std::log(2.0 * std::numbers::pi * var) - 0.5 * m;
  }
  const double params = 3.0 * config.k - 1.0;
  return -2.0 * log_lik + 2.0 * params;
}

KStarResult select_k(std::span<const double> values_desc, int k_max) {
  if (values_desc.empty()) throw ArgumentError("select_k over empty values");
  if (k_max < 1) throw ArgumentError("k_max must be positive");
  const std::size_t n = values_desc.size();
  const KMeansDp dp(values_desc, k_max);

  KStarResult result;
  double best_aic = kInf;
  ClusterConfig best_config;
  for (int k = 1; k <= dp.k_max(); ++k) {
    ClusterConfig config = dp.extract(k);
    KStarEntry entry;
    entry.k = k;
    entry.wcss = config.wcss;
    entry.var_exp = variance_explained(config);
    entry.aic = classification_aic(config, n);
    entry.aic_pooled = aic_score(config, n);
    result.per_k.push_back(entry);
    if (entry.aic < best_aic) {  // strict: ties keep the smaller k
      best_aic = entry.aic;
      result.k_star = k;
      best_config = std::move(config);
    }
  }
  result.mean_silhouette = silhouette_mean(values_desc, best_config);
  return result;
}

std::optional<double> silhouette_mean(std::span<const double> values_desc,
                                      const ClusterConfig& config) {
  if (config.k < 2) return std::nullopt;
  const int n = static_cast<int>(values_desc.size());

  // cluster index ranges and prefix sums over the sorted values
  std::vector<int> starts(config.sizes.size() + 1, 0);
  for (std::size_t c = 0; c < config.sizes.size(); ++c) {
    starts[c + 1] = starts[c] + config.sizes[c];
  }
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + values_desc[static_cast<std::size_t>(i)];
  }

  // sum of |x_i - x_t| over t in [lo, hi]; values are sorted, so the pieces
  // left and right of i resolve without absolute values
  const auto distance_sum = [&](int i, int lo, int hi) {
    const double x = values_desc[static_cast<std::size_t>(i)];
    double total = 0.0;
    const int left_hi = std::min(hi, i - 1);
    if (lo <= left_hi) {
      const double cnt = left_hi - lo + 1;
      total += (prefix[left_hi + 1] - prefix[lo]) - cnt * x;
    }
    const int right_lo = std::max(lo, i + 1);
    if (right_lo <= hi) {
      const double cnt = hi - right_lo + 1;
      total += cnt * x - (prefix[hi + 1] - prefix[right_lo]);
    }
    return total;
  };

  double total_s = 0.0;
  for (std::size_t c = 0; c < config.sizes.size(); ++c) {
    const int lo = starts[c];
    const int hi = starts[c + 1] - 1;
    const int m = config.sizes[c];
    for (int i = lo; i <= hi; ++i) {
      if (m == 1) continue;  // singleton contributes s = 0
      const double a = distance_sum(i, lo, hi) / (m - 1);
      double b = kInf;
      for (std::size_t o = 0; o < config.sizes.size(); ++o) {
        if (o == c) continue;
        const double avg =
            distance_sum(i, starts[o], starts[o + 1] - 1) / config.sizes[o];
        b = std::min(b, avg);
      }
      const double denom = std::max(a, b);
      if (denom > 0.0) total_s += (b - a) / denom;
    }
  }
  return total_s / n;
}

}  // namespace egolayers
