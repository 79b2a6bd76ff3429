#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egolayers/layers.hpp"
#include "egolayers/synth.hpp"

namespace egolayers {

enum class InputFormat { events, windowed };
enum class ReportFormat { json, csv };

struct RunConfig {
  std::string input_path;
  InputFormat format = InputFormat::events;
  Timestamp download_time = -1;  // required for event logs
  double span_days = -1.0;       // required for windowed logs

  double reconstruct_fraction = 0.0;
  std::optional<std::uint64_t> seed;  // required when fraction > 0

  double min_ego_rate = 10.0;   // interactions/month, strict >
  double min_edge_freq = 1.0;   // interactions/year, strict >

  std::optional<int> fixed_k;   // fixed-k mode when set
  int k_max = 20;               // selection mode otherwise
  bool dbscan_check = false;

  std::string report_path = "report.json";
  ReportFormat report_format = ReportFormat::json;
  std::string emit_ccdf_dir;    // empty: no CCDF CSVs
  int workers = 0;              // 0: hardware default

  void validate() const;  // throws ConfigError
};

/// Per-ego k-means vs DBSCAN cumulative sizes, present when --dbscan-check
/// is on.
struct EgoDbscanRow {
  UserId ego = 0;
  std::vector<int> kmeans_cumulative;
  std::vector<int> dbscan_cumulative;
  int achieved_k = 0;
  bool exact = false;
  double eps = 0.0;
  int noise = 0;
};

struct AnalyzeResult {
  PopulationReport report;
  std::vector<EgoDbscanRow> dbscan_rows;
  std::string summary;  // one-line human summary
};

/// Runs ingest -> reconstruct -> ego networks -> filters -> clustering ->
/// aggregation and writes the report (and CCDF CSVs when requested)
/// atomically. Output bytes depend only on input bytes, config and seed,
/// never on the worker count.
AnalyzeResult run_analyze(const RunConfig& config);

/// Generates a synthetic population (delegates to generate_population).
SynthStats run_synth(const SynthConfig& config);

/// Serialized forms, exposed for tests.
std::string report_to_json(const AnalyzeResult& result,
                           const RunConfig& config);
std::string report_to_csv(const AnalyzeResult& result);

/// Writes content to path via a temp file plus rename; no partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace egolayers
