#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "egolayers/common.hpp"
#include "egolayers/ingest.hpp"

namespace egolayers {

/// One ego-alter relationship with its estimated contact frequency.
struct Relationship {
  UserId alter = 0;
  Count n_interactions = 0;
  double duration_years = 0.0;
  double freq = 0.0;  // interactions per year
};

/// The star of relationships around one ego, ordered by descending contact
/// frequency (ties by ascending alter id).
struct EgoNetwork {
  UserId ego = 0;
  double span_years = 0.0;  // observation span used by the activity filter
  std::vector<Relationship> relationships;

  Count total_interactions() const {
    Count total = 0;
    for (const auto& r : relationships) total += r.n_interactions;
    return total;
  }
};

/// f = n / d with d clamped to a minimum of one day.
double contact_frequency(Count n, double duration_years);

/// Relationship duration for event logs: time since first contact, seen from
/// the download time. Clamped to at least one day.
double edge_duration_events(Timestamp first_interaction,
                            Timestamp download_time);

/// Relationship duration for windowed logs: the right endpoint of the oldest
/// window whose incremental count (c1, c2-c1, c3-c2, c4-c3) is nonzero,
/// using endpoints {30, 182.5, 365.25, span_T} days. All-zero edges must be
/// dropped before calling.
double edge_duration_windowed(const std::array<Count, 4>& counts,
                              double span_days);

/// One EgoNetwork per node with at least one nonzero-interaction edge,
/// ordered by ego id. Directed event counts are summed over both directions.
std::vector<EgoNetwork> build_ego_networks(const EdgeStore& store);

struct EgoFilterResult {
  std::vector<EgoNetwork> kept;
  std::size_t discarded = 0;
};

/// Keeps egos whose average interaction rate is strictly greater than
/// min_rate interactions per month.
EgoFilterResult filter_active_egos(std::vector<EgoNetwork> egos,
                                   double min_rate_per_month = 10.0);

/// Keeps relationships with contact frequency strictly greater than
/// min_freq per year; order is preserved.
EgoNetwork filter_active_edges(const EgoNetwork& ego,
                               double min_freq_per_year = 1.0);

}  // namespace egolayers
