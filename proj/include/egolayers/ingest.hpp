#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "egolayers/common.hpp"

namespace egolayers {

/// One directed, timestamped interaction (post, comment, reply).
struct InteractionEvent {
  UserId src = 0;
  UserId dst = 0;
  Timestamp timestamp = 0;
};

/// Undirected edge with cumulative interaction counts over four nested
/// windows: last month, last six months, last year, entire link duration.
struct WindowedEdge {
  UserId a = 0;
  UserId b = 0;
  std::array<Count, 4> counts{};  // c1 <= c2 <= c3 <= c4
};

/// Right endpoints (days) of the first three windows; the fourth is the
/// dataset span.
inline constexpr std::array<double, 3> kWindowEndpointsDays{30.0, 182.5,
                                                            365.25};

/// Aggregated edges from one parsed log: directed (src,dst) entries with an
/// event count and earliest timestamp for event logs, or undirected
/// window-count entries for windowed logs.
class EdgeStore {
 public:
  enum class Mode { events, windowed };

  struct EventEdge {
    UserId src = 0;
    UserId dst = 0;
    Count count = 0;
    Timestamp first = 0;
  };

  struct WindowEdgeEntry {
    UserId a = 0;  // a < b
    UserId b = 0;
    std::array<Count, 4> counts{};
  };

  static EdgeStore make_event_store(Timestamp download_time);
  static EdgeStore make_windowed_store(double span_days);

  Mode mode() const { return mode_; }
  Timestamp download_time() const { return download_time_; }

  /// Dataset span in days: the given T for windowed stores, download minus
  /// the earliest event for event stores (0 when empty).
  double span_days() const;

  void add_event(const InteractionEvent& ev);
  void add_window_row(const WindowedEdge& edge);  // throws on duplicate pair

  const std::vector<EventEdge>& event_edges() const { return event_edges_; }
  const std::vector<WindowEdgeEntry>& window_edges() const {
    return window_edges_;
  }

  /// Every user id referenced by any edge, ascending.
  std::vector<UserId> sorted_nodes() const;
  std::size_t node_count() const;

  /// Sum of directed counts (event stores) or of c4 (windowed stores).
  Count total_interactions() const;

  /// Multiplies every stored count by two on edges incident to the sampled
  /// node set; used by reconstruct_missing and tests.
  void double_counts_if(const std::vector<UserId>& sampled_sorted);

 private:
  EdgeStore() = default;

  struct PairHash {
    std::size_t operator()(const std::pair<UserId, UserId>& p) const {
      std::uint64_t h = p.first * 0x9E3779B97F4A7C15ull;
      h ^= p.second + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  Mode mode_ = Mode::events;
  Timestamp download_time_ = 0;
  double span_days_ = 0.0;
  Timestamp earliest_event_ = 0;
  bool any_event_ = false;

  std::unordered_map<std::pair<UserId, UserId>, std::size_t, PairHash> index_;
  std::vector<EventEdge> event_edges_;
  std::vector<WindowEdgeEntry> window_edges_;
};

/// Parses CSV with header `src,dst,timestamp` into a directed event store.
/// Rows with src == dst are rejected; timestamps must lie in
/// [0, download_time].
EdgeStore parse_event_log(std::istream& in, Timestamp download_time);

/// Parses CSV with header `a,b,c1,c2,c3,c4` into an undirected windowed
/// store keyed by unordered pair. Counts must be cumulative
/// (c1 <= c2 <= c3 <= c4); duplicate pairs (in either order) are rejected.
EdgeStore parse_windowed_edges(std::istream& in, double span_days);

EdgeStore parse_event_log_file(const std::string& path,
                               Timestamp download_time);
EdgeStore parse_windowed_edges_file(const std::string& path, double span_days);

/// Samples ceil(fraction * N) nodes without replacement using the seed and
/// doubles the interaction counts of every edge incident to at least one
/// sampled node, exactly once per edge. Node and edge sets are unchanged.
EdgeStore reconstruct_missing(EdgeStore store, double fraction,
                              std::uint64_t seed);

}  // namespace egolayers
