// wblsense — command-line front end.
//
// Subcommands:
//   simulate   run one spreading ensemble and export CSV/JSON artifacts
//   sweep      first-passage scaling over a list of system sizes
//   wbl        exact WBL for built-in state families or a JSON fixture
//   verify     self-certification suite (permutation, reduction, metric)
//   plot       render a trajectory CSV as a deterministic SVG chart
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid flags or malformed
// input, 3 capacity exceeded, 4 verification failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wblsense/wblsense.hpp"

namespace {

using namespace wblsense;

constexpr int exit_ok = 0;
constexpr int exit_io = 1;
constexpr int exit_usage = 2;
constexpr int exit_capacity = 3;
constexpr int exit_verify = 4;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// ----------------------------------------------------------------------
// Shared scenario flags: config-file values first, explicit flags on top.

struct ScenarioFlags {
  std::string config_path;
  std::string topology;
  int n = 0;
  double a = 0.0;
  int t_max = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string order;

  CLI::Option* opt_topology = nullptr;
  CLI::Option* opt_n = nullptr;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_t_max = nullptr;
  CLI::Option* opt_trials = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_order = nullptr;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "JSON config file; explicit flags override it");
    opt_topology = cmd.add_option("--topology", topology, "cycle or random_bipartite");
    opt_n = cmd.add_option("--n", n, "number of qubits (even, >= 4)");
    opt_a = cmd.add_option("--a", a, "perturbation amplitude a in (0,1)");
    opt_t_max = cmd.add_option("--t-max", t_max, "number of evolution steps");
    opt_trials = cmd.add_option("--trials", trials, "ensemble size");
    opt_seed = cmd.add_option("--seed", seed, "base seed for the trial streams");
    opt_order = cmd.add_option("--order", order, "half-step order: v1_first or v2_first");
  }

  // Layering: caller defaults, then config-file values, then explicit
  // flags. `forced_n` lets sweep inject each list entry in place of --n.
  ScenarioConfig resolve(ScenarioConfig defaults, std::optional<int> forced_n = std::nullopt) const {
    ScenarioConfig cfg = defaults;
    bool n_given = false;
    if (!config_path.empty()) {
      ordered_json j;
      try {
        j = ordered_json::parse(read_text_file(config_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config file: ") + e.what());
      }
      cfg = config_from_json(j);
      n_given = j.contains("n");
      // carry the caller's defaults for anything the file left out
      if (!j.contains("topology")) cfg.topology = defaults.topology;
      if (!j.contains("a")) cfg.a = defaults.a;
      if (!j.contains("t_max")) cfg.t_max = defaults.t_max;
      if (!j.contains("trials")) cfg.trials = defaults.trials;
      if (!j.contains("seed")) cfg.base_seed = defaults.base_seed;
      if (!j.contains("order")) cfg.order = defaults.order;
    }
    if (opt_topology->count() > 0) cfg.topology = topology_from_name(topology);
    if (opt_n->count() > 0) {
      cfg.n_qubits = n;
      n_given = true;
    }
    if (opt_a->count() > 0) cfg.a = a;
    if (opt_t_max->count() > 0) cfg.t_max = t_max;
    if (opt_trials->count() > 0) cfg.trials = trials;
    if (opt_seed->count() > 0) cfg.base_seed = seed;
    if (opt_order->count() > 0) cfg.order = half_step_order_from_name(order);
    if (forced_n) {
      cfg.n_qubits = *forced_n;
      n_given = true;
    }
    if (!n_given) throw std::invalid_argument("--n is required (flag or config file)");
    cfg.validate();
    return cfg;
  }
};

// ----------------------------------------------------------------------
// simulate

int cmd_simulate(const ScenarioFlags& flags, const std::string& out_dir) {
  ScenarioConfig defaults;
  defaults.t_max = 100;
  defaults.trials = 20;
  const ScenarioConfig cfg = flags.resolve(defaults);

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<TrajectoryRecord> records = run_all_trajectories(cfg);
  const EnsembleSummary summary = summarize_ensemble(cfg, records);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const ExportPaths paths = export_runs(records, summary, out_dir, elapsed);
  std::cout << "wrote " << paths.csv.string() << '\n'
            << "wrote " << paths.summary.string() << '\n'
            << "wrote " << paths.manifest.string() << '\n';
  std::cout << "threshold N/4 = " << format_value(summary.threshold) << "; plateau mean = "
            << (summary.plateau_mean ? format_value(*summary.plateau_mean) : std::string("n/a"))
            << '\n';
  if (summary.fit)
    std::cout << "growth fit on t in [" << summary.fit->window.t_lo << ","
              << summary.fit->window.t_hi << "]: slope " << format_value(summary.fit->slope)
              << ", R^2 " << format_value(summary.fit->r_squared) << '\n';
  return exit_ok;
}

// ----------------------------------------------------------------------
// sweep

int cmd_sweep(const ScenarioFlags& flags, const std::vector<int>& n_list,
              const std::string& out_dir) {
  if (n_list.empty()) throw std::invalid_argument("--n-list is required");
  if (flags.opt_n->count() > 0)
    throw std::invalid_argument("sweep takes --n-list, not --n");
  ScenarioConfig defaults;
  defaults.topology = Topology::random_bipartite;
  defaults.t_max = 64;
  defaults.trials = 50;

  std::vector<ScenarioConfig> cfgs;
  cfgs.reserve(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    ScenarioConfig cfg = flags.resolve(defaults, n_list[i]);
    if (cfg.topology != Topology::random_bipartite)
      throw std::invalid_argument("sweep supports only the random_bipartite topology");
    cfg.base_seed = cfg.base_seed + i;  // distinct stream family per system size
    cfgs.push_back(cfg);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<FirstPassageRow> rows = first_passage_scaling(cfgs);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream csv;
  csv << "N,mean_first_passage,std_first_passage,unreached\n";
  for (const auto& row : rows)
    csv << row.n_qubits << ',' << format_distance(row.mean) << ',' << format_distance(row.stddev)
        << ',' << row.unreached << '\n';

  ordered_json manifest{{"tool", "wblsense"},
                        {"version", std::string(version)},
                        {"configs", ordered_json::array()},
                        {"wall_clock_seconds", elapsed}};
  for (const auto& cfg : cfgs) manifest["configs"].push_back(config_to_json(cfg));

  const std::filesystem::path dir(out_dir);
  atomic_write_file(dir / "first_passage.csv", csv.str());
  atomic_write_file(dir / "sweep_manifest.json", manifest.dump(2) + "\n");
  std::cout << "wrote " << (dir / "first_passage.csv").string() << '\n';
  std::cout << csv.str();
  return exit_ok;
}

// ----------------------------------------------------------------------
// wbl

int cmd_wbl(const std::string& family, double a, int k, int n, const std::string& bits1,
            const std::string& bits2, const std::string& fixture, bool closed_form, int cap) {
  QuantumState psi = QuantumState::basis(1, 0);
  QuantumState phi = QuantumState::basis(1, 0);
  std::optional<GhzParameters> ghz;

  if (!fixture.empty()) {
    ordered_json j;
    try {
      j = ordered_json::parse(read_text_file(fixture));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(std::string("fixture file: ") + e.what());
    }
    psi = state_from_json(j.at("psi"));
    phi = state_from_json(j.at("phi"));
  } else if (family == "ghz") {
    if (!(a > 0.0 && a <= 1.0))
      throw std::invalid_argument("ghz family needs --a in (0,1]");
    if (k < 1 || n < k) throw std::invalid_argument("ghz family needs 1 <= k <= n");
    GhzParameters p;
    p.a = a;
    p.b = std::sqrt(std::max(0.0, 1.0 - a * a));
    p.k = k;
    p.n = n;
    ghz = p;
    psi = QuantumState::basis(n, 0);
    phi = ghz_block_state(p);
  } else if (family == "basis") {
    if (bits1.empty() || bits2.empty())
      throw std::invalid_argument("basis family needs --bits1 and --bits2");
    if (bits1.size() != bits2.size())
      throw std::invalid_argument("basis family needs equal-length bit strings");
    psi = QuantumState::basis(BitConfiguration::from_string(bits1));
    phi = QuantumState::basis(BitConfiguration::from_string(bits2));
  } else {
    throw std::invalid_argument("unknown family '" + family +
                                "' (expected ghz or basis, or use --states)");
  }

  const WblResult result = wbl_exact(psi, phi, cap);
  std::cout << "wbl = " << format_value(result.value) << '\n';
  std::cout << "argmax = " << result.argmax.to_string() << '\n';
  if (closed_form) {
    if (!ghz) throw std::invalid_argument("--closed-form applies only to the ghz family");
    std::cout << "closed_form = " << format_value(wbl_ghz_closed_form(*ghz)) << '\n';
  }
  return exit_ok;
}

// ----------------------------------------------------------------------
// verify

struct CheckReporter {
  bool all_pass = true;
  std::string first_failure;

  void report(const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
    if (!pass && !detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << '\n';
    if (!pass && all_pass) first_failure = name + (detail.empty() ? "" : ": " + detail);
    all_pass = all_pass && pass;
  }

  template <typename Fn>
  void run(const std::string& name, Fn&& fn) {
    try {
      auto [pass, detail] = fn();
      report(name, pass, detail);
    } catch (const std::exception& e) {
      report(name, false, e.what());
    }
  }
};

using CheckOutcome = std::pair<bool, std::string>;

int cmd_verify(int n, int t_max, int num_graphs, std::uint64_t seed, double a,
               const std::string& order_name) {
  const HalfStepOrder order =
      order_name.empty() ? HalfStepOrder::v1_first : half_step_order_from_name(order_name);
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("--n must be even and >= 4");
  if (n > wbl_certify_cap)
    throw CapacityError("verify needs n <= " + std::to_string(wbl_certify_cap) +
                        " for the full WBL certificate");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("--a must lie in (0,1)");

  CheckReporter rep;
  auto stream = make_stream(seed, 0);

  rep.run("local rule unitary is a permutation", [&]() -> CheckOutcome {
    const auto u = build_local_rule_unitary();
    const bool perm = is_permutation_matrix(u.matrix);
    const bool unitary = (u.matrix.transpose() * u.matrix).isIdentity(0.0);
    return {perm && unitary, perm ? "U^T U != I" : "row/column sums violated"};
  });

  rep.run("literal published variant fails the permutation check", [&]() -> CheckOutcome {
    const auto v = build_literal_rule_variant();
    return {!is_permutation_matrix(v.matrix),
            "the non-unitary variant unexpectedly passed"};
  });

  std::vector<BipartiteInteractionGraph> graphs;
  graphs.push_back(cycle_graph(n));
  std::vector<std::string> graph_names{"cycle"};
  for (int i = 0; i < num_graphs; ++i) {
    graphs.push_back(random_bipartite_graph(n, stream.next()));
    graph_names.push_back("random_bipartite[" + std::to_string(i) + "]");
  }

  const auto table = column_action_table(build_local_rule_unitary().matrix);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    rep.run("step bijectivity on " + graph_names[gi], [&]() -> CheckOutcome {
      const auto map = induced_basis_map(table, graphs[gi], order);
      if (!is_bijective_map(map))
        return {false, "collision in the induced basis map; graph=" +
                           graph_to_json(graphs[gi]).dump()};
      return {true, ""};
    });
  }

  rep.run("classical kernel matches the state-vector oracle", [&]() -> CheckOutcome {
    for (int inst = 0; inst < 20; ++inst) {
      auto g = inst % 2 == 0 ? cycle_graph(n) : random_bipartite_graph(n, stream.next());
      BitConfiguration c = random_configuration(n, stream.next());
      for (int t = 0; t < 5; ++t) {
        const BitConfiguration via_bits = step(c, g, order);
        const BitConfiguration via_oracle = step_via_oracle(c, g, order);
        if (!(via_bits == via_oracle))
          return {false, "divergence at instance " + std::to_string(inst) + ", t=" +
                             std::to_string(t) + ", c=" + c.to_string()};
        c = via_bits;
      }
    }
    return {true, ""};
  });

  const double b = std::sqrt(1.0 - a * a);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    rep.run("reduction certificate on " + graph_names[gi], [&]() -> CheckOutcome {
      const BitConfiguration c0 = random_configuration(n, stream.next());
      PerturbationParameters p;
      p.a = a;
      p.b = b;
      p.site = static_cast<int>(stream.uniform_below(static_cast<std::uint64_t>(n)));
      const auto points = certify_reduction(c0, p, graphs[gi], order, t_max);
      for (const auto& pt : points)
        if (std::abs(pt.wbl - pt.predicted) > reduction_certify_tol)
          return {false, "t=" + std::to_string(pt.t) + " wbl=" + format_value(pt.wbl) +
                             " predicted=" + format_value(pt.predicted)};
      const auto pair_points = evolve_pair(c0, p, graphs[gi], order, t_max);
      for (const auto& pt : pair_points)
        if (std::abs(pt.overlap - a) > oracle_overlap_tol)
          return {false, "overlap drifted at t=" + std::to_string(pt.t)};
      return {true, ""};
    });
  }

  rep.run("contractivity under random single-site channels", [&]() -> CheckOutcome {
    auto rng = make_stream(seed, 1);
    for (int inst = 0; inst < 10; ++inst) {
      const QuantumState psi = random_pure_state(3, rng);
      const QuantumState phi = random_pure_state(3, rng);
      DensityMatrix rho = DensityMatrix::pure(psi);
      DensityMatrix sigma = DensityMatrix::pure(phi);
      const double before = wbl_exact(rho, sigma).value;
      const int site = static_cast<int>(rng.uniform_below(3));
      const auto kraus = random_kraus_pair(rng);
      rho = apply_single_site_channel(rho, site, kraus);
      sigma = apply_single_site_channel(sigma, site, kraus);
      const double after = wbl_exact(rho, sigma).value;
      if (after > before + 1e-9)
        return {false, "instance " + std::to_string(inst) + ": " + format_value(before) +
                           " -> " + format_value(after)};
    }
    return {true, ""};
  });

  if (!rep.all_pass) {
    std::cerr << "verification failed: " << rep.first_failure << '\n';
    return exit_verify;
  }
  std::cout << "all checks passed\n";
  return exit_ok;
}

// ----------------------------------------------------------------------
// plot

int cmd_plot(const std::string& in_path, const std::string& out_path, const std::string& title) {
  const std::string text = read_text_file(in_path);
  const std::vector<TrajectoryRecord> records = parse_trajectory_csv(text);
  if (records.empty()) throw std::invalid_argument("trajectory CSV contains no data rows");
  atomic_write_file(out_path, render_k_series_svg(records, title));
  std::cout << "wrote " << out_path << '\n';
  return exit_ok;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return exit_capacity;
  } catch (const OracleViolation& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return exit_verify;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Weighted Bures Length engine and Rule 54 spreading experiments"};
  app.set_version_flag("--version", std::string(wblsense::version));
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one spreading ensemble and export artifacts");
  ScenarioFlags sim_flags;
  sim_flags.attach(*sim);
  std::string sim_out = "out";
  sim->add_option("--out", sim_out, "output directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "first-passage scaling over system sizes");
  ScenarioFlags sweep_flags;
  sweep_flags.attach(*sweep);
  std::vector<int> sweep_ns;
  sweep->add_option("--n-list", sweep_ns, "system sizes, e.g. --n-list 128 256 512 1024")
      ->delimiter(',');
  std::string sweep_out = "out";
  sweep->add_option("--out", sweep_out, "output directory");

  // wbl
  auto* wblcmd = app.add_subcommand("wbl", "exact WBL of a built-in family or JSON fixture");
  std::string family;
  double wbl_a = 1.0 / std::numbers::sqrt2;
  int wbl_k = 1;
  int wbl_n = 0;
  std::string bits1, bits2, fixture;
  bool closed_form = false;
  int cap = wblsense::default_partition_cap;
  wblcmd->add_option("--family", family, "ghz or basis");
  wblcmd->add_option("--a", wbl_a, "ghz amplitude a in (0,1]");
  wblcmd->add_option("--k", wbl_k, "ghz block size");
  wblcmd->add_option("--n", wbl_n, "total qubit count");
  wblcmd->add_option("--bits1", bits1, "first basis state, e.g. 0000");
  wblcmd->add_option("--bits2", bits2, "second basis state, e.g. 1111");
  wblcmd->add_option("--states", fixture, "JSON fixture with fields psi and phi");
  wblcmd->add_flag("--closed-form", closed_form, "also print k*arccos|a| (ghz family)");
  wblcmd->add_option("--cap", cap, "partition capacity limit");

  // verify
  auto* verify = app.add_subcommand("verify", "run the oracle self-certification suite");
  int ver_n = 6;
  int ver_t = 5;
  int ver_graphs = 5;
  std::uint64_t ver_seed = 1;
  double ver_a = 1.0 / std::numbers::sqrt2;
  std::string ver_order;
  verify->add_option("--n", ver_n, "qubits (even, 4..6)");
  verify->add_option("--t-max", ver_t, "steps per certificate");
  verify->add_option("--graphs", ver_graphs, "random bipartite graphs to certify");
  verify->add_option("--seed", ver_seed, "seed for the certification draws");
  verify->add_option("--a", ver_a, "perturbation amplitude");
  verify->add_option("--order", ver_order, "half-step order: v1_first or v2_first");

  // plot
  auto* plot = app.add_subcommand("plot", "render a trajectory CSV as SVG");
  std::string plot_in, plot_out = "plot.svg", plot_title = "damage spreading";
  plot->add_option("--in", plot_in, "trajectory CSV path")->required();
  plot->add_option("--out", plot_out, "output SVG path");
  plot->add_option("--title", plot_title, "chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  if (sim->parsed()) return guarded([&] { return cmd_simulate(sim_flags, sim_out); });
  if (sweep->parsed()) return guarded([&] { return cmd_sweep(sweep_flags, sweep_ns, sweep_out); });
  if (wblcmd->parsed())
    return guarded([&] {
      return cmd_wbl(family, wbl_a, wbl_k, wbl_n, bits1, bits2, fixture, closed_form, cap);
    });
  if (verify->parsed())
    return guarded([&] { return cmd_verify(ver_n, ver_t, ver_graphs, ver_seed, ver_a, ver_order); });
  if (plot->parsed()) return guarded([&] { return cmd_plot(plot_in, plot_out, plot_title); });
  return exit_usage;
}
