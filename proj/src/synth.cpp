#include "egolayers/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "egolayers/parallel.hpp"
#include "egolayers/pipeline.hpp"
#include "egolayers/rng.hpp"

#include "json.hpp"

namespace egolayers {

namespace {

// Alters spread over a log-range of kNoiseWidth * freq_noise above the layer
// boundary. Stratified offsets bound the largest within-band gap, which
// keeps planted bands recoverable by both k-means and density clustering.
constexpr double kNoiseWidth = 0.4;

// Alter id block reserved per ego; generation is independent per ego, so ids
// must be computable without knowing other egos' sizes.
constexpr UserId kAlterStride = 1 << 16;

std::string format_freq(double f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", f);
  return buf;
}

}  // namespace

void LayerSpec::validate() const {
  if (cumulative_sizes.empty()) {
    throw ArgumentError("layer spec needs at least one layer");
  }
  if (cumulative_sizes.size() != layer_freqs.size()) {
    throw ArgumentError("cumulative_sizes and layer_freqs differ in length");
  }
  double prev_size = 0.0;
  for (const double s : cumulative_sizes) {
    if (!(s > prev_size)) {
      throw ArgumentError("cumulative_sizes must be strictly increasing");
    }
    prev_size = s;
  }
  double prev_freq = std::numeric_limits<double>::infinity();
  for (const double f : layer_freqs) {
    if (!(f > 0.0) || !(f < prev_freq)) {
      throw ArgumentError("layer_freqs must be positive, strictly decreasing");
    }
    prev_freq = f;
  }
  if (!(freq_noise >= 0.0)) throw ArgumentError("freq_noise must be >= 0");
  if (!(size_jitter >= 0.0)) throw ArgumentError("size_jitter must be >= 0");
}

std::vector<double> LayerSpec::annulus_targets() const {
  std::vector<double> targets;
  targets.reserve(cumulative_sizes.size());
  double prev = 0.0;
  for (const double c : cumulative_sizes) {
    targets.push_back(c - prev);
    prev = c;
  }
  return targets;
}

LayerSpec LayerSpec::facebook1_defaults() {
  LayerSpec spec;
  spec.cumulative_sizes = {1.68, 5.28, 14.92, 40.93};
  spec.layer_freqs = {77.4, 30.3, 11.2, 2.5};
  spec.freq_noise = 0.2;
  spec.size_jitter = 0.0;
  return spec;
}

PlantedEgo generate_ego(const LayerSpec& spec, double span_years,
                        std::uint64_t seed, UserId ego_id,
                        UserId alter_id_base, Timestamp download_time) {
  spec.validate();
  if (!(span_years > 0.0)) throw ArgumentError("span must be positive");

  SplitMix64 rng = substream(seed, ego_id);
  const auto targets = spec.annulus_targets();
  const double width = kNoiseWidth * spec.freq_noise;
  const auto span_seconds = static_cast<Timestamp>(
      std::llround(span_years * kSecondsPerYear));
  const Timestamp t0 = download_time - span_seconds;

  PlantedEgo ego;
  ego.ego = ego_id;
  UserId next_alter = alter_id_base;
  for (std::size_t layer = 0; layer < targets.size(); ++layer) {
    const double base = spec.layer_freqs[layer];
    const std::int64_t size =
        spec.size_jitter > 0.0
            ? static_cast<std::int64_t>(rng.poisson(targets[layer]))
            : rng.bernoulli_round(targets[layer]);
    for (std::int64_t j = 0; j < size; ++j) {
      PlantedAlter alter;
      alter.alter = next_alter++;
      alter.layer = static_cast<int>(layer);
      if (j == 0) {
        // boundary alter: realizes the layer's minimum contact frequency
        alter.true_freq = base;
      } else {
        const double offset =
            width * (static_cast<double>(j) + 0.1 + 0.8 * rng.next_double()) /
            static_cast<double>(size);
        alter.true_freq = base * std::exp(offset);
      }
      const std::int64_t events =
          rng.bernoulli_round(alter.true_freq * span_years);
      if (events > 0) {
        alter.events.reserve(static_cast<std::size_t>(events));
        // first contact at the window start makes the relationship duration
        // equal to the observation span
        alter.events.push_back(t0);
        for (std::int64_t e = 1; e < events; ++e) {
          alter.events.push_back(
              t0 + 1 +
              static_cast<Timestamp>(rng.below(
                  static_cast<std::uint64_t>(span_seconds))));
        }
        std::sort(alter.events.begin() + 1, alter.events.end());
      }
      ego.alters.push_back(std::move(alter));
    }
    if (next_alter - alter_id_base >= kAlterStride) {
      throw ArgumentError("planted ego exceeds the per-ego alter budget");
    }
  }
  return ego;
}

SynthStats generate_population(const SynthConfig& config) {
  config.spec.validate();
  if (config.egos < 1) throw ArgumentError("need at least one ego");
  if (!(config.span_years > 0.0)) throw ArgumentError("span must be positive");

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create " + config.out_dir + ": " + ec.message());

  const std::uint64_t m = config.egos;
  struct Chunk {
    std::string events;
    std::string oracle;
    std::uint64_t alters = 0;
    std::uint64_t event_count = 0;
  };
  const int workers =
      config.workers > 0 ? config.workers : default_workers();
  std::vector<Chunk> chunks(m);

  parallel_for(m, workers, [&](std::size_t begin, std::size_t end) {
    std::string num;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const UserId ego_id = static_cast<UserId>(idx) + 1;
      const UserId alter_base = m + 1 + static_cast<UserId>(idx) * kAlterStride;
      const PlantedEgo ego =
          generate_ego(config.spec, config.span_years, config.seed, ego_id,
                       alter_base, config.download_time);
      Chunk& chunk = chunks[idx];
      for (const auto& alter : ego.alters) {
        chunk.oracle += std::to_string(ego.ego);
        chunk.oracle += ',';
        chunk.oracle += std::to_string(alter.alter);
        chunk.oracle += ',';
        chunk.oracle += std::to_string(alter.layer);
        chunk.oracle += ',';
        chunk.oracle += format_freq(alter.true_freq);
        chunk.oracle += '\n';
        ++chunk.alters;
        for (std::size_t e = 0; e < alter.events.size(); ++e) {
          // alternate directions so both sides of the pair carry traffic
          const bool ego_sends = e % 2 == 0;
          chunk.events += std::to_string(ego_sends ? ego.ego : alter.alter);
          chunk.events += ',';
          chunk.events += std::to_string(ego_sends ? alter.alter : ego.ego);
          chunk.events += ',';
          chunk.events += std::to_string(alter.events[e]);
          chunk.events += '\n';
          ++chunk.event_count;
        }
      }
    }
  });

  SynthStats stats;
  stats.egos = m;
  std::string events_csv = "src,dst,timestamp\n";
  std::string oracle_csv = "ego,alter,layer,true_freq\n";
  for (const auto& chunk : chunks) {
    events_csv += chunk.events;
    oracle_csv += chunk.oracle;
    stats.alters += chunk.alters;
    stats.events += chunk.event_count;
  }

  const fs::path out(config.out_dir);
  stats.events_path = (out / "events.csv").string();
  stats.oracle_path = (out / "oracle.csv").string();
  stats.meta_path = (out / "meta.json").string();
  write_file_atomic(stats.events_path, events_csv);
  write_file_atomic(stats.oracle_path, oracle_csv);

  nlohmann::json meta;
  meta["format"] = "events";
  meta["egos"] = m;
  meta["alters"] = stats.alters;
  meta["events"] = stats.events;
  meta["span_years"] = config.span_years;
  meta["span_days"] = config.span_years * kDaysPerYear;
  meta["seed"] = config.seed;
  meta["download_time"] = config.download_time;
  meta["spec"] = {
      {"cumulative_sizes", config.spec.cumulative_sizes},
      {"layer_freqs", config.spec.layer_freqs},
      {"freq_noise", config.spec.freq_noise},
      {"size_jitter", config.spec.size_jitter},
  };
  write_file_atomic(stats.meta_path, meta.dump(2) + "\n");
  return stats;
}

}  // namespace egolayers
