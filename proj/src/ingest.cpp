#include "egolayers/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "egolayers/rng.hpp"

namespace egolayers {

namespace {

// Splits a CSV line into at most max_fields comma-separated views.
// Returns the field count, or -1 when there are too many fields.
int split_fields(std::string_view line, std::string_view* out,
                 int max_fields) {
  int count = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (count == max_fields) return -1;
    if (comma == std::string_view::npos) {
      out[count++] = line.substr(pos);
      return count;
    }
    out[count++] = line.substr(pos, comma - pos);
    pos = comma + 1;
  }
}

template <class Int>
bool parse_int(std::string_view field, Int& value) {
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

EdgeStore EdgeStore::make_event_store(Timestamp download_time) {
  EdgeStore store;
  store.mode_ = Mode::events;
  store.download_time_ = download_time;
  return store;
}

EdgeStore EdgeStore::make_windowed_store(double span_days) {
  EdgeStore store;
  store.mode_ = Mode::windowed;
  store.span_days_ = span_days;
  return store;
}

double EdgeStore::span_days() const {
  if (mode_ == Mode::windowed) return span_days_;
  if (!any_event_) return 0.0;
  return static_cast<double>(download_time_ - earliest_event_) /
         kSecondsPerDay;
}

void EdgeStore::add_event(const InteractionEvent& ev) {
  const auto key = std::make_pair(ev.src, ev.dst);
  auto [it, inserted] = index_.try_emplace(key, event_edges_.size());
  if (inserted) {
    event_edges_.push_back({ev.src, ev.dst, 1, ev.timestamp});
  } else {
    auto& edge = event_edges_[it->second];
    edge.count += 1;
    edge.first = std::min(edge.first, ev.timestamp);
  }
  if (!any_event_ || ev.timestamp < earliest_event_) {
    earliest_event_ = ev.timestamp;
    any_event_ = true;
  }
}

void EdgeStore::add_window_row(const WindowedEdge& edge) {
  const UserId lo = std::min(edge.a, edge.b);
  const UserId hi = std::max(edge.a, edge.b);
  auto [it, inserted] =
      index_.try_emplace(std::make_pair(lo, hi), window_edges_.size());
  if (!inserted) {
    throw ValidationError("duplicate edge (" + std::to_string(edge.a) + "," +
                          std::to_string(edge.b) + ")");
  }
  window_edges_.push_back({lo, hi, edge.counts});
}

std::vector<UserId> EdgeStore::sorted_nodes() const {
  std::vector<UserId> nodes;
  nodes.reserve(2 * (event_edges_.size() + window_edges_.size()));
  for (const auto& e : event_edges_) {
    nodes.push_back(e.src);
    nodes.push_back(e.dst);
  }
  for (const auto& e : window_edges_) {
    nodes.push_back(e.a);
    nodes.push_back(e.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::size_t EdgeStore::node_count() const { return sorted_nodes().size(); }

Count EdgeStore::total_interactions() const {
  Count total = 0;
  for (const auto& e : event_edges_) total += e.count;
  for (const auto& e : window_edges_) total += e.counts[3];
  return total;
}

void EdgeStore::double_counts_if(const std::vector<UserId>& sampled_sorted) {
  auto sampled = [&](UserId id) {
    return std::binary_search(sampled_sorted.begin(), sampled_sorted.end(),
                              id);
  };
  for (auto& e : event_edges_) {
    if (sampled(e.src) || sampled(e.dst)) e.count *= 2;
  }
  for (auto& e : window_edges_) {
    if (sampled(e.a) || sampled(e.b)) {
      for (auto& c : e.counts) c *= 2;
    }
  }
}

EdgeStore parse_event_log(std::istream& in, Timestamp download_time) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (strip_cr(line) != "src,dst,timestamp") {
    throw ParseError(1, "expected header 'src,dst,timestamp'");
  }
  EdgeStore store = EdgeStore::make_event_store(download_time);
  std::size_t line_no = 1;
  std::string_view fields[4];
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    if (split_fields(row, fields, 4) != 3) {
      throw ParseError(line_no, "expected 3 fields 'src,dst,timestamp'");
    }
    InteractionEvent ev;
    if (!parse_int(fields[0], ev.src) || !parse_int(fields[1], ev.dst) ||
        !parse_int(fields[2], ev.timestamp)) {
      throw ParseError(line_no, "non-integer field");
    }
    if (ev.src == ev.dst) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": self-interaction (src == dst)");
    }
    if (ev.timestamp < 0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": negative timestamp");
    }
    if (ev.timestamp > download_time) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": timestamp after download time");
    }
    store.add_event(ev);
  }
  return store;
}

EdgeStore parse_windowed_edges(std::istream& in, double span_days) {
  if (!(span_days > 0.0)) {
    throw ArgumentError("dataset span must be positive");
  }
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (strip_cr(line) != "a,b,c1,c2,c3,c4") {
    throw ParseError(1, "expected header 'a,b,c1,c2,c3,c4'");
  }
  EdgeStore store = EdgeStore::make_windowed_store(span_days);
  std::size_t line_no = 1;
  std::string_view fields[7];
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    if (split_fields(row, fields, 7) != 6) {
      throw ParseError(line_no, "expected 6 fields 'a,b,c1,c2,c3,c4'");
    }
    WindowedEdge edge;
    if (!parse_int(fields[0], edge.a) || !parse_int(fields[1], edge.b)) {
      throw ParseError(line_no, "non-integer node id");
    }
    for (int i = 0; i < 4; ++i) {
      if (!parse_int(fields[2 + i], edge.counts[i])) {
        throw ParseError(line_no, "non-integer count");
      }
    }
    if (edge.a == edge.b) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": self-edge (a == b)");
    }
    for (int i = 0; i < 3; ++i) {
      if (edge.counts[i] > edge.counts[i + 1]) {
        throw ValidationError(
            "line " + std::to_string(line_no) + ": edge (" +
            std::to_string(edge.a) + "," + std::to_string(edge.b) +
            ") violates cumulative monotonicity c1<=c2<=c3<=c4");
      }
    }
    store.add_window_row(edge);
  }
  return store;
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}
}  // namespace

EdgeStore parse_event_log_file(const std::string& path,
                               Timestamp download_time) {
  auto in = open_or_throw(path);
  return parse_event_log(in, download_time);
}

EdgeStore parse_windowed_edges_file(const std::string& path,
                                    double span_days) {
  auto in = open_or_throw(path);
  return parse_windowed_edges(in, span_days);
}

EdgeStore reconstruct_missing(EdgeStore store, double fraction,
                              std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw ArgumentError("reconstruction fraction must lie in [0, 1]");
  }
  if (fraction == 0.0) return store;

  std::vector<UserId> nodes = store.sorted_nodes();
  const std::size_t n = nodes.size();
  if (n == 0) return store;
  auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(n)));
  k = std::min(k, n);

  // Partial Fisher-Yates over the sorted node list; identical sample for a
  // given (node set, fraction, seed).
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(nodes[i], nodes[j]);
  }
  nodes.resize(k);
  std::sort(nodes.begin(), nodes.end());
  store.double_counts_if(nodes);
  return store;
}

}  // namespace egolayers
