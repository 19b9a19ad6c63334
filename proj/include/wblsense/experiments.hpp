// experiments.hpp
// Scenario runners for perturbation spreading under the staggered Rule 54
// dynamics: single trajectories, seeded deterministic ensembles, growth-law
// fitting, first-passage scaling over system size, and a recurrence probe.
//
// Two scenarios are covered: the N-cycle (odd/even staggering), where the
// Hamming damage k_t grows linearly until it saturates near N/2, and random
// bipartite graphs, where k_t passes N/4 after a number of steps growing
// only logarithmically in N.
//
// Determinism contract: every trajectory is a pure function of
// (config, trial). Trial streams are derived as make_stream(base_seed,
// trial); each stream yields, in order, the graph seed, the initial
// configuration seed, and the perturbed site. Ensembles may run trials on
// any number of worker threads; records land in preassigned slots, so
// aggregate output never depends on scheduling.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wblsense/bitconfig.hpp"
#include "wblsense/errors.hpp"
#include "wblsense/graph.hpp"
#include "wblsense/rng.hpp"
#include "wblsense/rule54.hpp"

namespace wblsense {

enum class Topology { cycle, random_bipartite };

inline std::string topology_name(Topology t) {
  return t == Topology::cycle ? "cycle" : "random_bipartite";
}

// Accepts the short alias "random" for convenience on the command line.
inline Topology topology_from_name(const std::string& name) {
  if (name == "cycle") return Topology::cycle;
  if (name == "random_bipartite" || name == "random") return Topology::random_bipartite;
  throw std::invalid_argument("unknown topology '" + name +
                              "' (expected cycle or random_bipartite)");
}

inline std::string half_step_order_name(HalfStepOrder o) {
  return o == HalfStepOrder::v1_first ? "v1_first" : "v2_first";
}

inline HalfStepOrder half_step_order_from_name(const std::string& name) {
  if (name == "v1_first") return HalfStepOrder::v1_first;
  if (name == "v2_first") return HalfStepOrder::v2_first;
  throw std::invalid_argument("unknown half-step order '" + name +
                              "' (expected v1_first or v2_first)");
}

struct ScenarioConfig {
  Topology topology = Topology::cycle;
  int n_qubits = 4;
  double a = 1.0 / std::numbers::sqrt2;
  int t_max = 1;
  int trials = 1;
  std::uint64_t base_seed = 0;
  HalfStepOrder order = HalfStepOrder::v1_first;

  void validate() const {
    if (n_qubits < 4 || n_qubits % 2 != 0)
      throw std::invalid_argument("ScenarioConfig: n_qubits must be even and at least 4");
    if (t_max < 1) throw std::invalid_argument("ScenarioConfig: t_max must be at least 1");
    if (trials < 1) throw std::invalid_argument("ScenarioConfig: trials must be at least 1");
    if (!(a > 0.0 && a < 1.0))
      throw std::invalid_argument("ScenarioConfig: a must lie strictly between 0 and 1");
  }
};

struct TrajectoryRecord {
  Topology topology = Topology::cycle;
  int n_qubits = 0;
  double a = 0.0;
  std::uint64_t base_seed = 0;
  int trial = 0;
  std::uint64_t graph_seed = 0;
  int perturbed_site = 0;
  std::vector<int> k_series;     // k_t for t = 0..t_max, k_0 = 1
  std::vector<double> d_series;  // k_t * arccos(a), one multiplication per entry
};

struct FitWindow {
  int t_lo = 0;
  int t_hi = 0;
};

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  FitWindow window;
};

struct EnsembleSummary {
  ScenarioConfig config;
  std::vector<double> mean_k;  // indexed by t
  std::vector<double> std_k;
  double threshold = 0.0;                           // N/4
  std::vector<long long> first_passage_times;       // per trial, -1 when unreached
  std::optional<double> plateau_mean;               // mean k over the final quarter
  std::optional<GrowthFit> fit;
};

// Smallest t with k_t >= threshold, or -1 when never reached.
inline long long first_passage(const std::vector<int>& k_series, double threshold) {
  for (std::size_t t = 0; t < k_series.size(); ++t)
    if (static_cast<double>(k_series[t]) >= threshold) return static_cast<long long>(t);
  return -1;
}

inline TrajectoryRecord run_trajectory(const ScenarioConfig& cfg, int trial) {
  cfg.validate();
  if (trial < 0) throw std::invalid_argument("run_trajectory: negative trial index");

  auto stream = make_stream(cfg.base_seed, static_cast<std::uint64_t>(trial));
  const std::uint64_t graph_seed = stream.next();
  const std::uint64_t config_seed = stream.next();
  const int site = static_cast<int>(stream.uniform_below(static_cast<std::uint64_t>(cfg.n_qubits)));

  const BipartiteInteractionGraph g = cfg.topology == Topology::cycle
                                          ? cycle_graph(cfg.n_qubits)
                                          : random_bipartite_graph(cfg.n_qubits, graph_seed);

  BitConfiguration c = random_configuration(cfg.n_qubits, config_seed);
  BitConfiguration c_perturbed = flip_bit(c, site);

  TrajectoryRecord rec;
  rec.topology = cfg.topology;
  rec.n_qubits = cfg.n_qubits;
  rec.a = cfg.a;
  rec.base_seed = cfg.base_seed;
  rec.trial = trial;
  rec.graph_seed = graph_seed;
  rec.perturbed_site = site;
  rec.k_series.reserve(static_cast<std::size_t>(cfg.t_max) + 1);
  rec.k_series.push_back(hamming(c, c_perturbed));
  for (int t = 1; t <= cfg.t_max; ++t) {
    c = step(c, g, cfg.order);
    c_perturbed = step(c_perturbed, g, cfg.order);
    rec.k_series.push_back(hamming(c, c_perturbed));
  }

  const double theta = std::acos(cfg.a);
  rec.d_series.reserve(rec.k_series.size());
  for (const int k : rec.k_series) rec.d_series.push_back(static_cast<double>(k) * theta);
  return rec;
}

// Worker count: WBLSENSE_THREADS when set (>= 1), otherwise the hardware
// concurrency. Has no effect on any output, only on wall-clock time.
inline int resolve_thread_count() {
  if (const char* env = std::getenv("WBLSENSE_THREADS")) {
    int n = 0;
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("WBLSENSE_THREADS must be a positive integer");
    }
    if (n < 1) throw std::invalid_argument("WBLSENSE_THREADS must be a positive integer");
    return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline std::vector<TrajectoryRecord> run_all_trajectories(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<TrajectoryRecord> records(static_cast<std::size_t>(cfg.trials));
  const int workers = std::min(resolve_thread_count(), cfg.trials);
  if (workers <= 1) {
    for (int trial = 0; trial < cfg.trials; ++trial)
      records[static_cast<std::size_t>(trial)] = run_trajectory(cfg, trial);
    return records;
  }

  std::atomic<int> next_trial{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const int trial = next_trial.fetch_add(1);
      if (trial >= cfg.trials || failed.load()) return;
      try {
        records[static_cast<std::size_t>(trial)] = run_trajectory(cfg, trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

// Ordinary least squares of series[t] against t on the inclusive window.
inline GrowthFit fit_linear_growth(const std::vector<double>& series, FitWindow window) {
  if (window.t_lo < 0 || window.t_hi >= static_cast<int>(series.size()) ||
      window.t_hi - window.t_lo + 1 < 3)
    throw AnalysisError("fit_linear_growth: window must contain at least 3 points");
  const int m = window.t_hi - window.t_lo + 1;
  double sx = 0.0, sy = 0.0;
  for (int t = window.t_lo; t <= window.t_hi; ++t) {
    sx += t;
    sy += series[static_cast<std::size_t>(t)];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int t = window.t_lo; t <= window.t_hi; ++t) {
    const double dx = t - mx;
    const double dy = series[static_cast<std::size_t>(t)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (syy == 0.0) throw AnalysisError("fit_linear_growth: series is constant on the window");

  GrowthFit fit;
  fit.window = window;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (int t = window.t_lo; t <= window.t_hi; ++t) {
    const double r = series[static_cast<std::size_t>(t)] - (fit.intercept + fit.slope * t);
    ss_res += r * r;
  }
  fit.r_squared = 1.0 - ss_res / syy;
  return fit;
}

// Pre-saturation window rule: [1, t*] with t* the first t where the mean
// damage reaches 0.4*N, staying safely below the ~N/2 plateau; falls back
// to the full range when the series never gets that far.
inline FitWindow default_fit_window(const std::vector<double>& mean_k, int n_qubits) {
  const double cut = 0.4 * static_cast<double>(n_qubits);
  int t_hi = static_cast<int>(mean_k.size()) - 1;
  for (std::size_t t = 0; t < mean_k.size(); ++t) {
    if (mean_k[t] >= cut) {
      t_hi = static_cast<int>(t);
      break;
    }
  }
  return FitWindow{1, t_hi};
}

inline EnsembleSummary summarize_ensemble(const ScenarioConfig& cfg,
                                          const std::vector<TrajectoryRecord>& records) {
  cfg.validate();
  if (records.size() != static_cast<std::size_t>(cfg.trials))
    throw std::invalid_argument("summarize_ensemble: record count does not match trials");

  EnsembleSummary s;
  s.config = cfg;
  s.threshold = static_cast<double>(cfg.n_qubits) / 4.0;
  const std::size_t steps = static_cast<std::size_t>(cfg.t_max) + 1;
  s.mean_k.assign(steps, 0.0);
  s.std_k.assign(steps, 0.0);
  for (const auto& rec : records) {
    if (rec.k_series.size() != steps)
      throw std::invalid_argument("summarize_ensemble: trajectory length does not match t_max");
    for (std::size_t t = 0; t < steps; ++t) s.mean_k[t] += rec.k_series[t];
  }
  for (auto& v : s.mean_k) v /= static_cast<double>(cfg.trials);
  for (const auto& rec : records)
    for (std::size_t t = 0; t < steps; ++t) {
      const double d = rec.k_series[t] - s.mean_k[t];
      s.std_k[t] += d * d;
    }
  for (auto& v : s.std_k) v = std::sqrt(v / static_cast<double>(cfg.trials));

  s.first_passage_times.reserve(records.size());
  for (const auto& rec : records)
    s.first_passage_times.push_back(first_passage(rec.k_series, s.threshold));

  // Saturation estimate over the final quarter of the run.
  const int plateau_lo = cfg.t_max - cfg.t_max / 4;
  double plateau = 0.0;
  for (int t = plateau_lo; t <= cfg.t_max; ++t) plateau += s.mean_k[static_cast<std::size_t>(t)];
  s.plateau_mean = plateau / static_cast<double>(cfg.t_max - plateau_lo + 1);

  try {
    s.fit = fit_linear_growth(s.mean_k, default_fit_window(s.mean_k, cfg.n_qubits));
  } catch (const AnalysisError&) {
    s.fit = std::nullopt;  // degenerate window; summary stays usable without a fit
  }
  return s;
}

inline EnsembleSummary run_ensemble(const ScenarioConfig& cfg) {
  return summarize_ensemble(cfg, run_all_trajectories(cfg));
}

struct FirstPassageRow {
  int n_qubits = 0;
  double mean = 0.0;    // over trials that reached the threshold
  double stddev = 0.0;
  int unreached = 0;    // trials whose sentinel stayed -1
};

// Mean first-passage time to k >= N/4 for each configuration; the inputs
// must all be random-bipartite scenarios so the rows are comparable.
inline std::vector<FirstPassageRow> first_passage_scaling(
    const std::vector<ScenarioConfig>& cfgs) {
  std::vector<FirstPassageRow> rows;
  rows.reserve(cfgs.size());
  for (const auto& cfg : cfgs) {
    if (cfg.topology != Topology::random_bipartite)
      throw std::invalid_argument("first_passage_scaling: all configs must be random_bipartite");
    const EnsembleSummary s = run_ensemble(cfg);
    FirstPassageRow row;
    row.n_qubits = cfg.n_qubits;
    double sum = 0.0;
    int reached = 0;
    for (const long long fp : s.first_passage_times) {
      if (fp < 0) {
        ++row.unreached;
        continue;
      }
      sum += static_cast<double>(fp);
      ++reached;
    }
    if (reached > 0) {
      row.mean = sum / reached;
      double var = 0.0;
      for (const long long fp : s.first_passage_times)
        if (fp >= 0) var += (static_cast<double>(fp) - row.mean) * (static_cast<double>(fp) - row.mean);
      row.stddev = std::sqrt(var / reached);
    }
    rows.push_back(row);
  }
  return rows;
}

// Iterates the classical step until the starting configuration recurs.
// The dynamics is a permutation of {0,1}^N, so every orbit closes within
// 2^N steps; the default budget is exactly that bound.
inline std::optional<long long> recurrence_probe(const BitConfiguration& c0,
                                                 const BipartiteInteractionGraph& g,
                                                 HalfStepOrder order = HalfStepOrder::v1_first,
                                                 long long budget = 0) {
  const int n = g.num_vertices();
  if (n > 20) {
    std::ostringstream msg;
    msg << "recurrence_probe: orbit bound 2^" << n << " is too large (cap 20 qubits)";
    throw CapacityError(msg.str());
  }
  if (c0.length() != n)
    throw std::invalid_argument("recurrence_probe: configuration/graph mismatch");
  if (budget <= 0) budget = 1LL << n;
  BitConfiguration c = c0;
  for (long long t = 1; t <= budget; ++t) {
    c = step(c, g, order);
    if (c == c0) return t;
  }
  return std::nullopt;
}

}  // namespace wblsense
