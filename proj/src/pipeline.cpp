#include "egolayers/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "egolayers/cluster.hpp"
#include "egolayers/density.hpp"
#include "egolayers/egonet.hpp"
#include "egolayers/ingest.hpp"
#include "egolayers/parallel.hpp"

#include "json.hpp"

namespace egolayers {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

nlohmann::json ccdf_json(const std::vector<std::pair<double, double>>& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [x, p] : table) arr.push_back({x, p});
  return arr;
}

void write_ccdf_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& table) {
  std::string body = "x,ccdf\n";
  for (const auto& [x, p] : table) {
    body += format_double(x);
    body += ',';
    body += format_double(p);
    body += '\n';
  }
  write_file_atomic(path, body);
}

struct EgoAnalysis {
  // selection mode
  std::optional<KStarResult> kstar;
  // fixed-k mode
  std::optional<LayerProfile> profile;
  std::optional<double> silhouette;
  bool skipped_small = false;
  // DBSCAN cross-check
  std::optional<EgoDbscanRow> dbscan;
  bool dbscan_infeasible = false;
};

}  // namespace

void RunConfig::validate() const {
  if (input_path.empty()) throw ConfigError("input path is required");
  if (format == InputFormat::events && download_time < 0) {
    throw ConfigError("--download-time is required for event logs");
  }
  if (format == InputFormat::windowed && !(span_days > 0.0)) {
    throw ConfigError("--span-days is required for windowed logs");
  }
  if (!(reconstruct_fraction >= 0.0 && reconstruct_fraction <= 1.0)) {
    throw ConfigError("--reconstruct-fraction must lie in [0, 1]");
  }
  if (reconstruct_fraction > 0.0 && !seed.has_value()) {
    throw ConfigError("--seed is required when reconstruction is requested");
  }
  if (min_ego_rate < 0.0 || min_edge_freq < 0.0) {
    throw ConfigError("activity thresholds must be non-negative");
  }
  if (fixed_k.has_value() && *fixed_k < 1) {
    throw ConfigError("--k must be positive");
  }
  if (k_max < 1) throw ConfigError("--k-max must be positive");
  if (report_path.empty()) throw ConfigError("report path is required");
  if (workers < 0) throw ConfigError("--workers must be non-negative");
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " +
                        ec.message());
}

AnalyzeResult run_analyze(const RunConfig& config) {
  config.validate();

  EdgeStore store =
      config.format == InputFormat::events
          ? parse_event_log_file(config.input_path, config.download_time)
          : parse_windowed_edges_file(config.input_path, config.span_days);
  if (config.reconstruct_fraction > 0.0) {
    store = reconstruct_missing(std::move(store), config.reconstruct_fraction,
                                *config.seed);
  }

  std::vector<EgoNetwork> egos = build_ego_networks(store);
  const std::uint64_t egos_total = egos.size();
  EgoFilterResult rate_filter =
      filter_active_egos(std::move(egos), config.min_ego_rate);

  AnalyzeResult result;
  PopulationReport& report = result.report;
  report.egos_total = egos_total;
  report.egos_active = rate_filter.kept.size();
  report.egos_discarded_low_rate = rate_filter.discarded;

  // active networks + CCDF inputs (full sizes before the edge filter,
  // active sizes after)
  std::vector<double> freq_samples;
  std::vector<double> ego_sizes;
  std::vector<double> active_sizes;
  std::vector<EgoNetwork> active;
  active.reserve(rate_filter.kept.size());
  for (const auto& ego : rate_filter.kept) {
    ego_sizes.push_back(static_cast<double>(ego.relationships.size()));
    for (const auto& r : ego.relationships) freq_samples.push_back(r.freq);
    EgoNetwork filtered = filter_active_edges(ego, config.min_edge_freq);
    if (filtered.relationships.empty()) {
      ++report.egos_empty_active;
      continue;
    }
    active_sizes.push_back(static_cast<double>(filtered.relationships.size()));
    active.push_back(std::move(filtered));
  }

  const bool fixed_mode = config.fixed_k.has_value();
  const int workers = config.workers > 0 ? config.workers : default_workers();

  std::vector<EgoAnalysis> analyses(active.size());
  parallel_for(active.size(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values;
    for (std::size_t i = begin; i < end; ++i) {
      const EgoNetwork& ego = active[i];
      EgoAnalysis& out = analyses[i];
      values.clear();
      values.reserve(ego.relationships.size());
      for (const auto& r : ego.relationships) values.push_back(r.freq);
      const int n = static_cast<int>(values.size());

      int target_k = 0;
      std::optional<ClusterConfig> clustering;
      if (fixed_mode) {
        const int k = *config.fixed_k;
        if (n < k) {
          out.skipped_small = true;
          continue;
        }
        clustering = kmeans_1d(values, k);
        out.silhouette = silhouette_mean(values, *clustering);
        out.profile = nest_clusters(ego.ego, *clustering);
        target_k = k;
      } else {
        KStarResult kstar = select_k(values, config.k_max);
        out.silhouette = kstar.mean_silhouette;
        target_k = kstar.k_star;
        if (config.dbscan_check) {
          clustering = kmeans_1d(values, kstar.k_star);
        }
        out.kstar = std::move(kstar);
      }

      if (config.dbscan_check && clustering.has_value()) {
        if (n < 2 * target_k) {
          out.dbscan_infeasible = true;
          continue;
        }
        const DensityClustering density = calibrate_eps(values, target_k);
        EgoDbscanRow row;
        row.ego = ego.ego;
        int running = 0;
        for (const int s : clustering->sizes) {
          running += s;
          row.kmeans_cumulative.push_back(running);
        }
        running = 0;
        for (const int s : density.cluster_sizes) {
          running += s;
          row.dbscan_cumulative.push_back(running);
        }
        row.achieved_k = density.achieved_k;
        row.exact = density.exact;
        row.eps = density.eps;
        row.noise = static_cast<int>(density.noise.size());
        out.dbscan = std::move(row);
      }
    }
  });

  // deterministic sequential fold in ego order
  std::vector<LayerProfile> profiles;
  std::vector<KStarResult> kstars;
  RunningStat silhouette_stat;
  for (auto& a : analyses) {
    if (a.skipped_small) ++report.egos_skipped_small_k;
    if (a.profile.has_value()) profiles.push_back(std::move(*a.profile));
    if (a.kstar.has_value()) kstars.push_back(std::move(*a.kstar));
    if (a.silhouette.has_value()) {
      silhouette_stat.add(*a.silhouette);
    } else if (!a.skipped_small) {
      ++report.silhouette_not_applicable;
    }
  }
  report.egos_analyzed = active.size() - report.egos_skipped_small_k;
  for (const auto& p : profiles) {
    report.relationships_analyzed +=
        static_cast<std::uint64_t>(p.cumulative_sizes.back());
  }
  if (!fixed_mode) {
    report.relationships_analyzed = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      report.relationships_analyzed += active[i].relationships.size();
    }
  }

  if (!profiles.empty() || !kstars.empty()) {
    PopulationReport aggregated = aggregate(profiles, kstars);
    report.k = aggregated.k;
    report.cumulative_size = std::move(aggregated.cumulative_size);
    report.min_freq = std::move(aggregated.min_freq);
    report.mean_annulus_size = std::move(aggregated.mean_annulus_size);
    report.cumulative_ratios = std::move(aggregated.cumulative_ratios);
    report.has_kstar = aggregated.has_kstar;
    report.kstar_mean = aggregated.kstar_mean;
    report.kstar_median = aggregated.kstar_median;
    report.kstar_mode = aggregated.kstar_mode;
    report.kstar_histogram = std::move(aggregated.kstar_histogram);
  }
  report.mean_silhouette = silhouette_stat.mean();
  report.silhouette_count = silhouette_stat.n;

  if (config.dbscan_check) {
    report.has_dbscan = true;
    const int k = fixed_mode && !profiles.empty() ? profiles.front().k : 0;
    std::vector<RunningStat> db_cum;
    std::vector<RunningStat> abs_diff;
    if (k > 0) {
      db_cum.resize(static_cast<std::size_t>(k));
      abs_diff.resize(static_cast<std::size_t>(k));
    }
    RunningStat noise_stat;
    std::uint64_t exact = 0, rows = 0;
    for (auto& a : analyses) {
      if (a.dbscan_infeasible) ++report.dbscan_infeasible;
      if (!a.dbscan.has_value()) continue;
      ++rows;
      if (a.dbscan->exact) ++exact;
      noise_stat.add(a.dbscan->noise);
      if (k > 0) {
        // outer-anchored alignment: the outermost DBSCAN layer compares
        // against the outermost k-means layer; a missing innermost cluster
        // (DBSCAN needs two members) leaves the inner slots empty
        const auto& db = a.dbscan->dbscan_cumulative;
        const auto& km = a.dbscan->kmeans_cumulative;
        const std::size_t usable = std::min(db.size(), km.size());
        for (std::size_t r = 0; r < usable; ++r) {
          const std::size_t slot = static_cast<std::size_t>(k) - 1 - r;
          const double dv = db[db.size() - 1 - r];
          const double kv = km[km.size() - 1 - r];
          db_cum[slot].add(dv);
          abs_diff[slot].add(std::abs(dv - kv));
        }
      }
      result.dbscan_rows.push_back(std::move(*a.dbscan));
    }
    report.dbscan_exact_fraction =
        rows == 0 ? 0.0 : static_cast<double>(exact) / static_cast<double>(rows);
    report.dbscan_mean_noise = noise_stat.mean();
    for (std::size_t i = 0; i < db_cum.size(); ++i) {
      report.dbscan_cumulative.push_back(
          {db_cum[i].mean(), db_cum[i].sd(), db_cum[i].se(), db_cum[i].n});
      report.dbscan_mean_abs_diff.push_back(abs_diff[i].mean());
    }
  }

  if (!freq_samples.empty()) report.ccdf_contact_freq = ccdf(freq_samples);
  if (!ego_sizes.empty()) report.ccdf_ego_size = ccdf(ego_sizes);
  if (!active_sizes.empty()) report.ccdf_active_size = ccdf(active_sizes);

  // summary line
  {
    std::ostringstream line;
    line << "analyzed " << report.egos_analyzed << " egos ("
         << report.egos_discarded_low_rate << " below rate, "
         << report.egos_empty_active << " empty active";
    if (fixed_mode) line << ", " << report.egos_skipped_small_k << " below k";
    line << ")";
    if (report.has_kstar) line << ", k* mode=" << report.kstar_mode;
    if (report.silhouette_count > 0) {
      line << ", mean silhouette=" << format_double(report.mean_silhouette);
    }
    result.summary = line.str();
  }

  const std::string serialized = config.report_format == ReportFormat::json
                                     ? report_to_json(result, config)
                                     : report_to_csv(result);
  write_file_atomic(config.report_path, serialized);

  if (!config.emit_ccdf_dir.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.emit_ccdf_dir, ec);
    if (ec) {
      throw IoError("cannot create " + config.emit_ccdf_dir + ": " +
                    ec.message());
    }
    const fs::path dir(config.emit_ccdf_dir);
    write_ccdf_csv((dir / "contact_frequency.csv").string(),
                   report.ccdf_contact_freq);
    write_ccdf_csv((dir / "ego_network_size.csv").string(),
                   report.ccdf_ego_size);
    write_ccdf_csv((dir / "active_network_size.csv").string(),
                   report.ccdf_active_size);
  }
  return result;
}

SynthStats run_synth(const SynthConfig& config) {
  return generate_population(config);
}

std::string report_to_json(const AnalyzeResult& result,
                           const RunConfig& config) {
  const PopulationReport& report = result.report;
  nlohmann::json j;

  j["meta"]["tool"] = "ego-layers";
  j["meta"]["input"] = config.input_path;
  j["meta"]["format"] =
      config.format == InputFormat::events ? "events" : "windowed";
  if (config.format == InputFormat::events) {
    j["meta"]["download_time"] = config.download_time;
  } else {
    j["meta"]["span_days"] = config.span_days;
  }
  j["meta"]["reconstruct_fraction"] = config.reconstruct_fraction;
  if (config.seed.has_value()) j["meta"]["seed"] = *config.seed;
  if (config.fixed_k.has_value()) {
    j["meta"]["mode"] = "fixed-k";
    j["meta"]["k"] = *config.fixed_k;
  } else {
    j["meta"]["mode"] = "select-k";
    j["meta"]["k_max"] = config.k_max;
  }
  j["meta"]["min_ego_rate"] = config.min_ego_rate;
  j["meta"]["min_edge_freq"] = config.min_edge_freq;
  j["meta"]["dbscan_check"] = config.dbscan_check;

  j["filters"] = {
      {"egos_total", report.egos_total},
      {"egos_active", report.egos_active},
      {"egos_discarded_low_rate", report.egos_discarded_low_rate},
      {"egos_empty_active", report.egos_empty_active},
      {"egos_skipped_small_k", report.egos_skipped_small_k},
      {"egos_analyzed", report.egos_analyzed},
      {"relationships_analyzed", report.relationships_analyzed},
  };

  if (report.has_kstar) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [k, count] : report.kstar_histogram) {
      hist[std::to_string(k)] = count;
    }
    j["kstar_distribution"] = {
        {"mean", report.kstar_mean},
        {"median", report.kstar_median},
        {"mode", report.kstar_mode},
        {"histogram", hist},
    };
  } else {
    j["kstar_distribution"] = nullptr;
  }

  j["silhouette"] = {
      {"mean", report.mean_silhouette},
      {"egos", report.silhouette_count},
      {"not_applicable", report.silhouette_not_applicable},
  };

  if (!report.cumulative_size.empty()) {
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t i = 0; i < report.cumulative_size.size(); ++i) {
      const auto& size = report.cumulative_size[i];
      const auto& freq = report.min_freq[i];
      layers.push_back({
          {"index", i},
          {"mean_annulus_size", report.mean_annulus_size[i]},
          {"mean_cumulative_size", size.mean},
          {"sd_size", size.sd},
          {"se_size", size.se},
          {"mean_min_freq", freq.mean},
          {"sd_min_freq", freq.sd},
          {"se_min_freq", freq.se},
          {"egos", size.count},
      });
    }
    j["layers"] = layers;
    j["layer_ratios"] = report.cumulative_ratios;
  } else {
    j["layers"] = nullptr;
    j["layer_ratios"] = nullptr;
  }

  if (report.has_dbscan) {
    nlohmann::json db;
    db["exact_fraction"] = report.dbscan_exact_fraction;
    db["mean_noise"] = report.dbscan_mean_noise;
    db["infeasible_egos"] = report.dbscan_infeasible;
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t i = 0; i < report.dbscan_cumulative.size(); ++i) {
      const auto& s = report.dbscan_cumulative[i];
      layers.push_back({
          {"index", i},
          {"mean_cumulative_size", s.mean},
          {"sd_size", s.sd},
          {"se_size", s.se},
          {"egos", s.count},
      });
    }
    db["layers"] = layers;
    db["mean_abs_diff"] = report.dbscan_mean_abs_diff;
    nlohmann::json per_ego = nlohmann::json::array();
    for (const auto& row : result.dbscan_rows) {
      per_ego.push_back({
          {"ego", row.ego},
          {"kmeans", row.kmeans_cumulative},
          {"dbscan", row.dbscan_cumulative},
          {"achieved_k", row.achieved_k},
          {"exact", row.exact},
          {"eps", row.eps},
          {"noise", row.noise},
      });
    }
    db["per_ego"] = per_ego;
    j["dbscan"] = db;
  } else {
    j["dbscan"] = nullptr;
  }

  j["ccdf"] = {
      {"contact_frequency", ccdf_json(report.ccdf_contact_freq)},
      {"ego_network_size", ccdf_json(report.ccdf_ego_size)},
      {"active_network_size", ccdf_json(report.ccdf_active_size)},
  };

  return j.dump(2) + "\n";
}

std::string report_to_csv(const AnalyzeResult& result) {
  const PopulationReport& report = result.report;
  std::string csv;
  if (!report.cumulative_size.empty()) {
    csv =
        "layer,mean_cumulative_size,sd_size,se_size,"
        "mean_min_freq,sd_min_freq,se_min_freq";
    if (report.has_dbscan) csv += ",dbscan_mean_cumulative_size,dbscan_sd_size";
    csv += '\n';
    for (std::size_t i = 0; i < report.cumulative_size.size(); ++i) {
      const auto& size = report.cumulative_size[i];
      const auto& freq = report.min_freq[i];
      csv += std::to_string(i);
      for (const double v :
           {size.mean, size.sd, size.se, freq.mean, freq.sd, freq.se}) {
        csv += ',';
        csv += format_double(v);
      }
      if (report.has_dbscan) {
        const bool have = i < report.dbscan_cumulative.size();
        csv += ',';
        csv += have ? format_double(report.dbscan_cumulative[i].mean) : "";
        csv += ',';
        csv += have ? format_double(report.dbscan_cumulative[i].sd) : "";
      }
      csv += '\n';
    }
    return csv;
  }
  // selection mode: the k* histogram is the table
  csv = "k,count\n";
  for (const auto& [k, count] : report.kstar_histogram) {
    csv += std::to_string(k);
    csv += ',';
    csv += std::to_string(count);
    csv += '\n';
  }
  return csv;
}

}  // namespace egolayers
