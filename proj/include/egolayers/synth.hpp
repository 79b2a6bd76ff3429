#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egolayers/common.hpp"

namespace egolayers {

/// Planted layer structure for the synthetic generator. layer_freqs are the
/// per-layer boundary frequencies (the minimum contact frequency an alter in
/// that layer has); generated alters spread upward from the boundary over a
/// log-range of 0.4 * freq_noise, with one alter per annulus pinned at the
/// boundary so the planted minima are recoverable.
struct LayerSpec {
  std::vector<double> cumulative_sizes;  // strictly increasing, e.g. 1.5/5/15/50
  std::vector<double> layer_freqs;       // strictly decreasing, events/year
  double freq_noise = 0.2;   // multiplicative log-noise scale
  double size_jitter = 0.0;  // 0: Bernoulli-rounded sizes; > 0: Poisson sizes

  void validate() const;  // throws ArgumentError

  std::size_t layer_count() const { return cumulative_sizes.size(); }

  /// Annulus size targets: first differences of cumulative_sizes.
  std::vector<double> annulus_targets() const;

  static LayerSpec facebook1_defaults();
};

struct PlantedAlter {
  UserId alter = 0;
  int layer = 0;
  double true_freq = 0.0;           // planted contact frequency, events/year
  std::vector<Timestamp> events;    // ascending; empty when nothing realized
};

struct PlantedEgo {
  UserId ego = 0;
  std::vector<PlantedAlter> alters;  // innermost annulus first

  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& a : alters) n += a.events.size();
    return n;
  }
};

/// Generates one ego deterministically from (seed, ego_id). Annulus sizes
/// are Bernoulli-rounded around the spec targets (Poisson when size_jitter
/// > 0); each alter realizes bernoulli_round(freq * span) events with the
/// first event pinned at the start of the observation window, so the
/// measured frequency is the realized count over the full span.
PlantedEgo generate_ego(const LayerSpec& spec, double span_years,
                        std::uint64_t seed, UserId ego_id,
                        UserId alter_id_base, Timestamp download_time);

struct SynthConfig {
  LayerSpec spec;
  std::uint64_t egos = 0;
  double span_years = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir;
  Timestamp download_time = 1'600'000'000;  // arbitrary fixed epoch
  int workers = 0;                          // 0: hardware default
};

struct SynthStats {
  std::uint64_t egos = 0;
  std::uint64_t alters = 0;
  std::uint64_t events = 0;
  std::string events_path;
  std::string oracle_path;
  std::string meta_path;
};

/// Writes events.csv (src,dst,timestamp), oracle.csv
/// (ego,alter,layer,true_freq) and meta.json under out_dir. Byte-identical
/// for a fixed (spec, egos, span, seed) regardless of worker count.
SynthStats generate_population(const SynthConfig& config);

}  // namespace egolayers
