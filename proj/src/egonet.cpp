#include "egolayers/egonet.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace egolayers {

double contact_frequency(Count n, double duration_years) {
  const double d = std::max(duration_years, kMinDurationYears);
  return static_cast<double>(n) / d;
}

double edge_duration_events(Timestamp first_interaction,
                            Timestamp download_time) {
  if (first_interaction > download_time) {
    throw ValidationError("first interaction after download time");
  }
  const double years =
      static_cast<double>(download_time - first_interaction) / kSecondsPerYear;
  return std::max(years, kMinDurationYears);
}

double edge_duration_windowed(const std::array<Count, 4>& counts,
                              double span_days) {
  const std::array<Count, 4> increments{counts[0], counts[1] - counts[0],
                                        counts[2] - counts[1],
                                        counts[3] - counts[2]};
  for (int i = 3; i >= 0; --i) {
    if (increments[i] > 0) {
      const double days =
          i == 3 ? span_days : kWindowEndpointsDays[static_cast<std::size_t>(i)];
      return days / kDaysPerYear;
    }
  }
  throw ArgumentError("all-zero edge has no duration; drop it before calling");
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<UserId, UserId>& p) const {
    std::uint64_t h = p.first * 0x9E3779B97F4A7C15ull;
    h ^= p.second + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

void sort_relationships(std::vector<Relationship>& rels) {
  std::sort(rels.begin(), rels.end(),
            [](const Relationship& x, const Relationship& y) {
              if (x.freq != y.freq) return x.freq > y.freq;
              return x.alter < y.alter;
            });
}

}  // namespace

std::vector<EgoNetwork> build_ego_networks(const EdgeStore& store) {
  // undirected relationship per unordered pair
  struct PairData {
    Count n = 0;
    double duration_years = 0.0;
    Timestamp first = 0;
    bool has_first = false;
  };
  std::unordered_map<std::pair<UserId, UserId>, PairData, PairHash> pairs;

  if (store.mode() == EdgeStore::Mode::events) {
    for (const auto& e : store.event_edges()) {
      const auto key = std::minmax(e.src, e.dst);
      auto& p = pairs[{key.first, key.second}];
      p.n += e.count;
      if (!p.has_first || e.first < p.first) {
        p.first = e.first;
        p.has_first = true;
      }
    }
    for (auto& [key, p] : pairs) {
      p.duration_years = edge_duration_events(p.first, store.download_time());
    }
  } else {
    for (const auto& e : store.window_edges()) {
      if (e.counts[3] == 0) continue;  // no interactions, not a relationship
      auto& p = pairs[{e.a, e.b}];
      p.n = e.counts[3];
      p.duration_years = edge_duration_windowed(e.counts, store.span_days());
    }
  }

  std::unordered_map<UserId, EgoNetwork> egos;
  egos.reserve(pairs.size());
  std::unordered_map<UserId, Timestamp> earliest;  // event stores only
  for (const auto& [key, p] : pairs) {
    if (p.n == 0) continue;
    const double freq = contact_frequency(p.n, p.duration_years);
    for (const UserId ego_id : {key.first, key.second}) {
      const UserId alter = ego_id == key.first ? key.second : key.first;
      auto& ego = egos[ego_id];
      ego.ego = ego_id;
      ego.relationships.push_back({alter, p.n, p.duration_years, freq});
      if (store.mode() == EdgeStore::Mode::events) {
        auto [it, inserted] = earliest.try_emplace(ego_id, p.first);
        if (!inserted) it->second = std::min(it->second, p.first);
      }
    }
  }

  std::vector<EgoNetwork> result;
  result.reserve(egos.size());
  for (auto& [id, ego] : egos) {
    if (store.mode() == EdgeStore::Mode::events) {
      ego.span_years =
          edge_duration_events(earliest.at(id), store.download_time());
    } else {
      ego.span_years = store.span_days() / kDaysPerYear;
    }
    sort_relationships(ego.relationships);
    result.push_back(std::move(ego));
  }
  std::sort(result.begin(), result.end(),
            [](const EgoNetwork& a, const EgoNetwork& b) {
              return a.ego < b.ego;
            });
  return result;
}

EgoFilterResult filter_active_egos(std::vector<EgoNetwork> egos,
                                   double min_rate_per_month) {
  EgoFilterResult result;
  result.kept.reserve(egos.size());
  for (auto& ego : egos) {
    if (!(ego.span_years > 0.0)) {
      throw ArgumentError("ego " + std::to_string(ego.ego) +
                          " has non-positive observation span");
    }
    const double months = ego.span_years * kMonthsPerYear;
    const double rate =
        static_cast<double>(ego.total_interactions()) / months;
    if (rate > min_rate_per_month) {
      result.kept.push_back(std::move(ego));
    } else {
      ++result.discarded;
    }
  }
  return result;
}

EgoNetwork filter_active_edges(const EgoNetwork& ego,
                               double min_freq_per_year) {
  EgoNetwork filtered;
  filtered.ego = ego.ego;
  filtered.span_years = ego.span_years;
  filtered.relationships.reserve(ego.relationships.size());
  for (const auto& r : ego.relationships) {
    if (r.freq > min_freq_per_year) filtered.relationships.push_back(r);
  }
  return filtered;
}

}  // namespace egolayers
