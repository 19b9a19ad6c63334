// io.hpp
// Persistence for experiment runs: the trajectory CSV, the ensemble summary
// JSON, the run manifest, and the scenario-config JSON used by the command
// line. All writers are deterministic (fixed formatting, fixed key order via
// ordered JSON) except the manifest, which deliberately records wall-clock
// provenance. Files are written atomically: content goes to a temporary
// sibling which is renamed into place, so failures never leave partial
// artifacts behind.
//
// CSV schema, one row per (trial, t):
//   scenario,N,a,base_seed,trial,graph_seed,perturbed_site,t,k_t,d_t
// with `a` at full round-trip precision and `d_t` at 12 significant digits.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wblsense/errors.hpp"
#include "wblsense/experiments.hpp"
#include "wblsense/version.hpp"

namespace wblsense {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* trajectory_csv_header =
    "scenario,N,a,base_seed,trial,graph_seed,perturbed_site,t,k_t,d_t";

namespace detail {

inline std::string format_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace detail

inline std::string format_amplitude(double a) { return detail::format_double(a, "%.17g"); }
inline std::string format_distance(double d) { return detail::format_double(d, "%.12g"); }

inline std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
  std::ostringstream out;
  out << trajectory_csv_header << '\n';
  for (const auto& rec : records) {
    const std::string prefix = topology_name(rec.topology) + ',' +
                               std::to_string(rec.n_qubits) + ',' + format_amplitude(rec.a) +
                               ',' + std::to_string(rec.base_seed) + ',' +
                               std::to_string(rec.trial) + ',' + std::to_string(rec.graph_seed) +
                               ',' + std::to_string(rec.perturbed_site) + ',';
    for (std::size_t t = 0; t < rec.k_series.size(); ++t)
      out << prefix << t << ',' << rec.k_series[t] << ',' << format_distance(rec.d_series[t])
          << '\n';
  }
  return out.str();
}

namespace detail {

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

[[noreturn]] inline void csv_row_error(std::size_t row, const std::string& what) {
  std::ostringstream msg;
  msg << "trajectory CSV row " << row << ": " << what;
  throw std::invalid_argument(msg.str());
}

}  // namespace detail

// Parses the trajectory CSV back into records. Rows must be grouped by
// trial with t increasing from 0 within each group, exactly as the writer
// emits them.
inline std::vector<TrajectoryRecord> parse_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trajectory CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trajectory_csv_header)
    throw std::invalid_argument("trajectory CSV: unexpected header '" + line + "'");

  std::vector<TrajectoryRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_row(line);
    if (fields.size() != 10) detail::csv_row_error(row, "expected 10 fields");
    TrajectoryRecord next;
    int t = 0;
    int k = 0;
    double d = 0.0;
    try {
      next.topology = topology_from_name(fields[0]);
      next.n_qubits = std::stoi(fields[1]);
      next.a = std::stod(fields[2]);
      next.base_seed = std::stoull(fields[3]);
      next.trial = std::stoi(fields[4]);
      next.graph_seed = std::stoull(fields[5]);
      next.perturbed_site = std::stoi(fields[6]);
      t = std::stoi(fields[7]);
      k = std::stoi(fields[8]);
      d = std::stod(fields[9]);
    } catch (const std::exception& e) {
      detail::csv_row_error(row, std::string("unparsable field (") + e.what() + ")");
    }

    const bool new_record = records.empty() || records.back().trial != next.trial ||
                            records.back().base_seed != next.base_seed;
    if (new_record) {
      if (t != 0) detail::csv_row_error(row, "trial block must start at t=0");
      records.push_back(std::move(next));
    } else if (t != static_cast<int>(records.back().k_series.size())) {
      detail::csv_row_error(row, "non-contiguous t within trial block");
    }
    records.back().k_series.push_back(k);
    records.back().d_series.push_back(d);
  }
  return records;
}

inline std::vector<TrajectoryRecord> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_trajectory_csv(in);
}

inline ordered_json config_to_json(const ScenarioConfig& cfg) {
  return ordered_json{{"topology", topology_name(cfg.topology)},
                      {"n", cfg.n_qubits},
                      {"a", cfg.a},
                      {"t_max", cfg.t_max},
                      {"trials", cfg.trials},
                      {"seed", cfg.base_seed},
                      {"order", half_step_order_name(cfg.order)}};
}

// Reads a config, tolerating missing keys (defaults stand in) so the CLI
// can layer explicit flags on top.
inline ScenarioConfig config_from_json(const ordered_json& j) {
  ScenarioConfig cfg;
  if (j.contains("topology")) cfg.topology = topology_from_name(j.at("topology").get<std::string>());
  if (j.contains("n")) cfg.n_qubits = j.at("n").get<int>();
  if (j.contains("a")) cfg.a = j.at("a").get<double>();
  if (j.contains("t_max")) cfg.t_max = j.at("t_max").get<int>();
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.base_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("order")) cfg.order = half_step_order_from_name(j.at("order").get<std::string>());
  return cfg;
}

inline ordered_json summary_to_json(const EnsembleSummary& s) {
  ordered_json j;
  j["config"] = config_to_json(s.config);
  j["threshold"] = s.threshold;
  j["mean_k"] = s.mean_k;
  j["std_k"] = s.std_k;
  j["first_passage_times"] = s.first_passage_times;
  j["plateau_mean"] = s.plateau_mean ? ordered_json(*s.plateau_mean) : ordered_json(nullptr);
  if (s.fit) {
    j["fit"] = ordered_json{{"slope", s.fit->slope},
                            {"intercept", s.fit->intercept},
                            {"r_squared", s.fit->r_squared},
                            {"window", {s.fit->window.t_lo, s.fit->window.t_hi}}};
  } else {
    j["fit"] = nullptr;
  }
  return j;
}

// Provenance sidecar; the only writer allowed to be non-deterministic
// (it records elapsed wall-clock time).
inline ordered_json run_manifest(const ScenarioConfig& cfg,
                                 const std::vector<TrajectoryRecord>& records,
                                 double wall_clock_seconds) {
  ordered_json graph_seeds = ordered_json::array();
  for (const auto& rec : records) graph_seeds.push_back(rec.graph_seed);
  return ordered_json{{"tool", "wblsense"},
                      {"version", std::string(version)},
                      {"config", config_to_json(cfg)},
                      {"graph_seeds", std::move(graph_seeds)},
                      {"wall_clock_seconds", wall_clock_seconds}};
}

// Write-to-temporary-then-rename; the destination either keeps its old
// content or receives the complete new content, never a truncated mix.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path parent = path.parent_path();
  if (!parent.empty()) {
    fs::create_directories(parent, ec);
    if (ec) throw std::runtime_error("cannot create directory " + parent.string() + ": " +
                                     ec.message());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw std::runtime_error("read failed for " + path.string());
  return buf.str();
}

// Standard artifact bundle for one ensemble run.
struct ExportPaths {
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path manifest;
};

inline ExportPaths export_paths(const std::filesystem::path& out_dir) {
  return ExportPaths{out_dir / "trajectories.csv", out_dir / "summary.json",
                     out_dir / "manifest.json"};
}

inline ExportPaths export_runs(const std::vector<TrajectoryRecord>& records,
                               const EnsembleSummary& summary,
                               const std::filesystem::path& out_dir,
                               double wall_clock_seconds) {
  const ExportPaths paths = export_paths(out_dir);
  atomic_write_file(paths.csv, trajectory_csv(records));
  atomic_write_file(paths.summary, summary_to_json(summary).dump(2) + "\n");
  atomic_write_file(paths.manifest,
                    run_manifest(summary.config, records, wall_clock_seconds).dump(2) + "\n");
  return paths;
}

}  // namespace wblsense
