#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "egolayers/pipeline.hpp"

namespace {

using namespace egolayers;

int run(int argc, char** argv) {
  CLI::App app{"Layered structure detection for ego-centric social networks"};
  app.require_subcommand(1);

  // ---- analyze ----
  auto* analyze = app.add_subcommand(
      "analyze", "Detect nested layers in an interaction log");
  RunConfig config;
  std::string format = "events";
  std::string report_format = "json";
  std::uint64_t seed_value = 0;
  int fixed_k = 0;

  analyze->add_option("input", config.input_path, "interaction log (CSV)")
      ->required();
  analyze->add_option("--format", format, "input format")
      ->check(CLI::IsMember({"events", "windowed"}))
      ->capture_default_str();
  analyze->add_option("--download-time", config.download_time,
                      "dataset download time, seconds since epoch (events)");
  analyze->add_option("--span-days", config.span_days,
                      "dataset span in days (windowed)");
  analyze->add_option("--reconstruct-fraction", config.reconstruct_fraction,
                      "node fraction for reconstruction by doubling")
      ->capture_default_str();
  auto* seed_option = analyze->add_option(
      "--seed", seed_value, "PRNG seed (required with --reconstruct-fraction)");
  analyze->add_option("--min-ego-rate", config.min_ego_rate,
                      "ego activity threshold, interactions/month (strict >)")
      ->capture_default_str();
  analyze->add_option("--min-edge-freq", config.min_edge_freq,
                      "active edge threshold, interactions/year (strict >)")
      ->capture_default_str();
  auto* k_option =
      analyze->add_option("--k", fixed_k, "fixed cluster count per ego");
  auto* kmax_option = analyze->add_option(
      "--k-max", config.k_max, "selection mode scan bound (default 20)");
  analyze->add_flag("--dbscan-check", config.dbscan_check,
                    "cross-check k-means layers with calibrated DBSCAN");
  analyze->add_option("--report", config.report_path, "report output path")
      ->capture_default_str();
  analyze->add_option("--report-format", report_format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  analyze->add_option("--emit-ccdf", config.emit_ccdf_dir,
                      "directory for CCDF CSV tables");
  analyze->add_option("--workers", config.workers, "worker threads (0 = auto)")
      ->envname("EGO_LAYERS_WORKERS");

  // ---- synth ----
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic population with planted layers");
  SynthConfig synth_config;
  std::string spec_path;
  synth->add_option("--spec", spec_path,
                    "layer spec JSON (defaults to the built-in profile)");
  synth->add_option("--egos", synth_config.egos, "number of egos")->required();
  synth->add_option("--span-years", synth_config.span_years,
                    "observation span in years")
      ->required();
  synth->add_option("--seed", synth_config.seed, "PRNG seed")->required();
  synth->add_option("--out", synth_config.out_dir, "output directory")
      ->required();
  synth->add_option("--workers", synth_config.workers,
                    "worker threads (0 = auto)")
      ->envname("EGO_LAYERS_WORKERS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (analyze->parsed()) {
    if (k_option->count() > 0 && kmax_option->count() > 0) {
      throw ConfigError("--k and --k-max are mutually exclusive");
    }
    if (k_option->count() > 0) config.fixed_k = fixed_k;
    if (seed_option->count() > 0) config.seed = seed_value;
    config.format =
        format == "events" ? InputFormat::events : InputFormat::windowed;
    config.report_format =
        report_format == "json" ? ReportFormat::json : ReportFormat::csv;
    config.validate();
    const AnalyzeResult result = run_analyze(config);
    std::cout << result.summary << "\n";
    std::cout << "report written to " << config.report_path << "\n";
    return 0;
  }

  // synth
  synth_config.spec = LayerSpec::facebook1_defaults();
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw IoError("cannot open " + spec_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad spec JSON: " + std::string(e.what()));
    }
    LayerSpec spec;
    try {
      spec.cumulative_sizes = j.at("cumulative_sizes").get<std::vector<double>>();
      spec.layer_freqs = j.at("layer_freqs").get<std::vector<double>>();
      spec.freq_noise = j.value("freq_noise", 0.2);
      spec.size_jitter = j.value("size_jitter", 0.0);
      if (j.contains("download_time")) {
        synth_config.download_time = j.at("download_time").get<Timestamp>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad spec JSON: " + std::string(e.what()));
    }
    try {
      spec.validate();
    } catch (const ArgumentError& e) {
      throw ConfigError(e.what());
    }
    synth_config.spec = spec;
  }
  const SynthStats stats = run_synth(synth_config);
  std::cout << "generated " << stats.egos << " egos, " << stats.alters
            << " alters, " << stats.events << " events\n";
  std::cout << "events:  " << stats.events_path << "\n";
  std::cout << "oracle:  " << stats.oracle_path << "\n";
  std::cout << "meta:    " << stats.meta_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const egolayers::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const egolayers::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const egolayers::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
