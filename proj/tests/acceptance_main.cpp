// acceptance_main.cpp
// Release gate for the library. Each check pins one behaviour the engine
// promises — closed-form metric values, the exact classical reduction,
// ensemble statistics at published sizes, and byte-stable artifacts from
// the command-line tool — and enforces a wall-clock budget. One PASS/FAIL
// line per check; the process exits nonzero when any check fails, printing
// the first failing assertion under the line that tripped it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "naive.hpp"
#include "wblsense/wblsense.hpp"

namespace {

using namespace wblsense;

struct CheckFailure {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CheckFailure{message};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// --- 1. motivating flip family ------------------------------------------------

// Three basis states at N=4, all with zero mutual overlap, that the plain
// Bures angle cannot tell apart but whose weighted lengths resolve as
// pi/2, 2*pi, and 3*pi/2 (one, four, and three flipped sites).
void flip_family_distances() {
  const auto ref = QuantumState::basis(4, 0b0000);
  const auto one = QuantumState::basis(4, 0b1000);
  const auto four = QuantumState::basis(4, 0b1111);
  const auto three = QuantumState::basis(4, 0b1110);

  const std::vector<const QuantumState*> states = {&ref, &one, &four, &three};
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      require(overlap(*states[i], *states[j]) == 0.0,
              "pairwise overlaps must vanish exactly");

  const double right_angle = std::numbers::pi / 2.0;
  for (const QuantumState* s : {&one, &four, &three})
    require(std::abs(bures(ref, *s) - right_angle) <= 1e-9,
            "plain Bures angle must saturate at pi/2 for orthogonal states");

  struct Case {
    const QuantumState* state;
    double expected;
    const char* label;
  };
  for (const Case& c : {Case{&one, right_angle, "one flipped site"},
                        Case{&four, 4.0 * right_angle, "four flipped sites"},
                        Case{&three, 3.0 * right_angle, "three flipped sites"}}) {
    const double got = wbl_exact(ref, *c.state).value;
    require(std::abs(got - c.expected) <= 1e-9,
            std::string(c.label) + ": length " + fmt(got) + " != " + fmt(c.expected));
  }
}

// --- 2. closed form vs enumeration ---------------------------------------------

void closed_form_matches_enumeration() {
  Xoshiro256StarStar rng(20250817);
  for (int n = 2; n <= 6; ++n) {
    const auto vacuum = QuantumState::basis(n, 0);
    for (int k = 1; k <= n; ++k) {
      for (int draw = 0; draw < 20; ++draw) {
        const double a = 0.01 + 0.98 * rng.uniform_real();
        const double b = std::sqrt(1.0 - a * a);
        const GhzParameters p{a, b, k, n};
        const double got = wbl_exact(vacuum, ghz_block_state(p)).value;
        const double want = wbl_ghz_closed_form(p);
        require(std::abs(got - want) <= 1e-8,
                "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + fmt(a) +
                    ": enumeration " + fmt(got) + " vs closed form " + fmt(want));
      }
    }
  }
}

// --- 3. permutation structure of the local rule --------------------------------

void local_rule_is_a_basis_permutation() {
  const LocalRuleUnitary u = build_local_rule_unitary();
  require(is_permutation_matrix(u.matrix),
          "corrected local rule must be a 0/1 permutation matrix");
  require((u.matrix.transpose() * u.matrix - Matrix8d::Identity()).cwiseAbs().maxCoeff() == 0.0,
          "U^T U must equal the identity exactly");
  const std::array<int, 8> table = column_action_table(u.matrix);

  const auto check_bijective = [&table](const BipartiteInteractionGraph& g, HalfStepOrder order) {
    const auto map = induced_basis_map(table, g, order);
    require(is_bijective_map(map), "induced basis map must be a bijection");
    const std::set<std::uint64_t> images(map.begin(), map.end());
    require(images.size() == map.size(), "image set must cover every basis index");
  };
  check_bijective(cycle_graph(6), HalfStepOrder::v1_first);
  check_bijective(cycle_graph(6), HalfStepOrder::v2_first);
  for (std::uint64_t seed = 100; seed < 105; ++seed)
    check_bijective(random_bipartite_graph(6, seed), HalfStepOrder::v1_first);

  // negative control: the uncorrected variant maps two inputs to |110>
  const LocalRuleUnitary literal = build_literal_rule_variant();
  require(!is_permutation_matrix(literal.matrix),
          "literal rule variant must fail the permutation check");
  const auto literal_map =
      induced_basis_map(column_action_table(literal.matrix), cycle_graph(6),
                        HalfStepOrder::v1_first);
  require(!is_bijective_map(literal_map), "literal rule variant must collide on the six-ring");
}

// --- 4. reduction certificate ---------------------------------------------------

void reduction_certificate_holds() {
  const double a = 1.0 / std::numbers::sqrt2;
  const double b = std::sqrt(1.0 - a * a);
  Xoshiro256StarStar rng(606);

  std::vector<BipartiteInteractionGraph> graphs;
  graphs.push_back(cycle_graph(6));
  for (std::uint64_t seed = 7; seed < 12; ++seed)
    graphs.push_back(random_bipartite_graph(6, seed));

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const BipartiteInteractionGraph& g = graphs[gi];
    const BitConfiguration c0 = random_configuration(6, rng.next());
    const PerturbationParameters p{a, b, static_cast<int>(rng.uniform_below(6))};
    const HalfStepOrder order =
        (gi % 2 == 0) ? HalfStepOrder::v1_first : HalfStepOrder::v2_first;

    // certify_reduction throws on any violation; the loop re-checks the
    // residuals directly so a silent tolerance change cannot slip through.
    const auto certificate = certify_reduction(c0, p, g, order, 5, 1e-8);
    require(certificate.size() == 6, "certificate must cover t = 0..5");
    for (const ReductionPoint& pt : certificate)
      require(std::abs(pt.wbl - pt.predicted) <= 1e-8,
              "graph " + std::to_string(gi) + " t=" + std::to_string(pt.t) + ": length " +
                  fmt(pt.wbl) + " deviates from k_t*arccos(a) = " + fmt(pt.predicted));

    for (const PairPoint& pt : evolve_pair(c0, p, g, order, 5))
      require(std::abs(pt.overlap - a) <= 1e-12,
              "t=" + std::to_string(pt.t) + ": branch overlap " + fmt(pt.overlap) +
                  " drifted from 1/sqrt(2)");
  }
}

// --- 5. oracle vs bit-packed dynamics -------------------------------------------

void oracle_agrees_with_bitpacked_kernel() {
  Xoshiro256StarStar rng(31337);
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 4 + 2 * static_cast<int>(rng.uniform_below(4));  // 4, 6, 8, 10
    const BipartiteInteractionGraph g =
        (instance % 2 == 0) ? cycle_graph(n) : random_bipartite_graph(n, rng.next());
    const HalfStepOrder order =
        rng.uniform_bit() ? HalfStepOrder::v1_first : HalfStepOrder::v2_first;
    BitConfiguration via_oracle = random_configuration(n, rng.next());
    BitConfiguration classical = via_oracle;
    for (int t = 1; t <= 20; ++t) {
      via_oracle = step_via_oracle(via_oracle, g, order);
      classical = step(classical, g, order);
      require(via_oracle == classical,
              "instance " + std::to_string(instance) + ": oracle and bit-packed step disagree at t=" +
                  std::to_string(t));
    }
  }
}

// --- 6. ballistic growth on the thousand-site ring -------------------------------

void ring_damage_grows_ballistically() {
  ScenarioConfig cfg;
  cfg.topology = Topology::cycle;
  cfg.n_qubits = 1000;
  cfg.t_max = 600;
  cfg.trials = 20;
  cfg.base_seed = 90210;

  const auto records = run_all_trajectories(cfg);
  for (const TrajectoryRecord& rec : records)
    for (std::size_t t = 0; t < rec.k_series.size(); ++t)
      require(rec.k_series[t] <= 1 + 4 * static_cast<int>(t),
              "light cone violated: k=" + std::to_string(rec.k_series[t]) + " at t=" +
                  std::to_string(t));

  const EnsembleSummary summary = summarize_ensemble(cfg, records);
  require(summary.fit.has_value(), "pre-saturation fit must exist");
  require(summary.fit->r_squared >= 0.98,
          "fit R^2 " + fmt(summary.fit->r_squared) + " below 0.98");
  require(summary.fit->slope > 0.0 && summary.fit->slope <= 4.0,
          "fit slope " + fmt(summary.fit->slope) + " outside (0, 4]");
  require(summary.plateau_mean.has_value(), "plateau mean must exist");
  const double plateau = *summary.plateau_mean;
  require(plateau >= 0.45 * cfg.n_qubits && plateau <= 0.55 * cfg.n_qubits,
          "plateau " + fmt(plateau) + " outside [0.45, 0.55] of N=1000");
}

// --- 7. logarithmic first passage on random graphs -------------------------------

void random_graph_first_passage_is_logarithmic() {
  const std::vector<int> sizes = {128, 256, 512, 1024};
  std::vector<ScenarioConfig> cfgs;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ScenarioConfig cfg;
    cfg.topology = Topology::random_bipartite;
    cfg.n_qubits = sizes[i];
    cfg.t_max = 64;
    cfg.trials = 50;
    cfg.base_seed = 7100 + i;
    cfgs.push_back(cfg);
  }

  const auto rows = first_passage_scaling(cfgs);
  require(rows.size() == sizes.size(), "one scaling row per size");
  for (const FirstPassageRow& row : rows) {
    // A perturbed site that no vertex reads (probability ~e^-2 per trial,
    // since out-degrees are unconstrained) can never spread, so a minority
    // of trials legitimately never cross N/4; the mean is over the rest.
    require(row.unreached <= (3 * 50) / 10,
            "N=" + std::to_string(row.n_qubits) + ": " + std::to_string(row.unreached) +
                " of 50 trials never crossed N/4 (expected a small minority)");
    require(row.mean <= 2.0 * std::log2(static_cast<double>(row.n_qubits)),
            "N=" + std::to_string(row.n_qubits) + ": mean first passage " + fmt(row.mean) +
                " exceeds 2*log2(N)");
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    require(rows[i].mean - rows[i - 1].mean <= 2.0,
            "doubling N from " + std::to_string(rows[i - 1].n_qubits) + " added " +
                fmt(rows[i].mean - rows[i - 1].mean) + " > 2 steps");
  // Linear scaling would put the N=1024 mean at 8x the N=128 mean; demand
  // no more than 2x, i.e. rule the linear law out by a factor of four.
  require(rows.back().mean <= 2.0 * rows.front().mean,
          "linear scaling not excluded: mean(1024) = " + fmt(rows.back().mean) +
              " vs mean(128) = " + fmt(rows.front().mean));
}

// --- 8. contractivity under single-site channels ---------------------------------

void channels_never_increase_the_length() {
  Xoshiro256StarStar rng(888);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = DensityMatrix::pure(random_pure_state(3, rng));
    const auto sigma = DensityMatrix::pure(random_pure_state(3, rng));
    const int site = static_cast<int>(rng.uniform_below(3));
    const auto kraus = random_kraus_pair(rng);
    const double before = wbl_exact(rho, sigma).value;
    const double after = wbl_exact(apply_single_site_channel(rho, site, kraus),
                                   apply_single_site_channel(sigma, site, kraus))
                             .value;
    require(after <= before + 1e-9,
            "trial " + std::to_string(trial) + ": channel raised the length from " +
                fmt(before) + " to " + fmt(after));
  }
}

// --- 9. invariance under single-qubit unitaries ----------------------------------

void local_unitaries_leave_the_length_unchanged() {
  Xoshiro256StarStar rng(999);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = random_pure_state(3, rng);
    const auto phi = random_pure_state(3, rng);
    const int site = static_cast<int>(rng.uniform_below(3));
    const Eigen::Matrix2cd u = random_single_qubit_unitary(rng);
    const double before = wbl_exact(psi, phi).value;
    const double after = wbl_exact(apply_single_qubit_unitary(psi, site, u),
                                   apply_single_qubit_unitary(phi, site, u))
                             .value;
    require(std::abs(after - before) <= 1e-9,
            "trial " + std::to_string(trial) + ": length moved from " + fmt(before) + " to " +
                fmt(after) + " under a local unitary");
  }
}

// --- 10. metric properties --------------------------------------------------------

void the_length_is_a_metric() {
  Xoshiro256StarStar rng(101010);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sa = random_pure_state(3, rng);
    const auto sb = random_pure_state(3, rng);
    const auto sc = random_pure_state(3, rng);
    const double dab = wbl_exact(sa, sb).value;
    const double dba = wbl_exact(sb, sa).value;
    const double dbc = wbl_exact(sb, sc).value;
    const double dac = wbl_exact(sa, sc).value;
    require(dab >= 0.0 && dbc >= 0.0 && dac >= 0.0, "lengths must be nonnegative");
    require(std::abs(dab - dba) <= 1e-9,
            "asymmetry " + fmt(std::abs(dab - dba)) + " beyond 1e-9 at trial " +
                std::to_string(trial));
    require(dac <= dab + dbc + 1e-9,
            "triangle inequality violated at trial " + std::to_string(trial) + ": " + fmt(dac) +
                " > " + fmt(dab) + " + " + fmt(dbc));
    const auto rho = DensityMatrix::pure(sa);
    const double self = wbl_exact(rho, rho).value;
    require(self <= 1e-10, "self-distance " + fmt(self) + " beyond 1e-10");
  }
}

// --- 11. classical kernel invariants ----------------------------------------------

void classical_kernel_invariants_hold() {
  Xoshiro256StarStar rng(1234321);

  // half-sweeps are involutions on every topology and side
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + 2 * static_cast<int>(rng.uniform_below(19));  // 4..40
    const BipartiteInteractionGraph g =
        (trial % 2 == 0) ? cycle_graph(n) : random_bipartite_graph(n, rng.next());
    const BitConfiguration c = random_configuration(n, rng.next());
    const int side = 1 + static_cast<int>(rng.uniform_below(2));
    require(half_sweep(half_sweep(c, g, side), g, side) == c,
            "half-sweep must be an involution (n=" + std::to_string(n) + ")");
  }

  // the word-parallel kernel matches the site-by-site reference
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + 2 * static_cast<int>(rng.uniform_below(11));  // 4..24
    const BipartiteInteractionGraph g =
        (trial % 3 == 0) ? cycle_graph(n) : random_bipartite_graph(n, rng.next());
    const HalfStepOrder order =
        rng.uniform_bit() ? HalfStepOrder::v1_first : HalfStepOrder::v2_first;
    BitConfiguration c = random_configuration(n, rng.next());
    std::vector<int> reference = naive::unpack(c);
    const int t_steps = 1 + static_cast<int>(rng.uniform_below(5));
    for (int t = 0; t < t_steps; ++t) {
      c = step(c, g, order);
      reference = naive::step(reference, g, order);
    }
    require(c == naive::pack(reference),
            "word-parallel step deviates from the reference (n=" + std::to_string(n) + ")");
  }

  // every orbit of the six-ring closes within the 2^6 permutation bound
  const BipartiteInteractionGraph ring = cycle_graph(6);
  for (std::uint64_t index = 0; index < 64; ++index) {
    const BitConfiguration c0 = config_from_basis_index(6, index);
    const auto period = recurrence_probe(c0, ring);
    require(period.has_value() && *period >= 1 && *period <= 64,
            "orbit of basis index " + std::to_string(index) + " failed to close");
  }
}

// --- 12. byte-stable artifacts across worker counts --------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(in.good(), "missing output file " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void cli_artifacts_are_byte_stable() {
#ifndef WBLSENSE_CLI_PATH
  require(false, "binary was built without WBLSENSE_CLI_PATH");
#else
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "wblsense_acceptance_cli";
  std::error_code ec;
  fs::remove_all(root, ec);
  fs::create_directories(root);

  const std::string cli = WBLSENSE_CLI_PATH;
  require(fs::exists(cli), "command-line binary not found at " + cli);

  const std::string scenario =
      " simulate --topology random_bipartite --n 64 --a 0.707106781186547"
      " --t-max 32 --trials 12 --seed 99";
  const auto simulate = [&](const std::string& threads, const fs::path& out) {
    const std::string cmd = "WBLSENSE_THREADS=" + threads + " '" + cli + "'" + scenario +
                            " --out '" + out.string() + "' > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    require(rc == 0, "simulate exited with status " + std::to_string(rc) + " (threads=" +
                         threads + ")");
  };
  const std::string max_threads =
      std::to_string(std::max(2u, std::thread::hardware_concurrency()));
  simulate("1", root / "serial");
  simulate("1", root / "serial_repeat");
  simulate(max_threads, root / "parallel");

  for (const char* name : {"trajectories.csv", "summary.json"}) {
    const std::string serial = slurp(root / "serial" / name);
    require(serial == slurp(root / "serial_repeat" / name),
            std::string(name) + " differs between repeated identical runs");
    require(serial == slurp(root / "parallel" / name),
            std::string(name) + " differs between 1 and " + max_threads + " workers");
  }

  const auto plot = [&](const fs::path& dir) {
    const std::string cmd = "'" + cli + "' plot --in '" + (dir / "trajectories.csv").string() +
                            "' --out '" + (dir / "plot.svg").string() + "' > /dev/null 2>&1";
    require(std::system(cmd.c_str()) == 0, "plot exited nonzero");
  };
  plot(root / "serial");
  plot(root / "serial_repeat");
  plot(root / "parallel");
  const std::string svg = slurp(root / "serial" / "plot.svg");
  require(svg == slurp(root / "serial_repeat" / "plot.svg"),
          "plot.svg differs between repeated identical runs");
  require(svg == slurp(root / "parallel" / "plot.svg"),
          "plot.svg differs between 1 and " + max_threads + " workers");

  fs::remove_all(root, ec);
#endif
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"flip family: lengths pi/2, 2*pi, 3*pi/2 at zero overlap", 10.0, flip_family_distances},
      {"block closed form matches exhaustive partition search", 300.0,
       closed_form_matches_enumeration},
      {"corrected local rule permutes the basis on every graph", 60.0,
       local_rule_is_a_basis_permutation},
      {"reduction certificate k_t*arccos(a) on six qubits", 60.0, reduction_certificate_holds},
      {"unitary oracle reproduces the bit-packed dynamics", 120.0,
       oracle_agrees_with_bitpacked_kernel},
      {"thousand-site ring: ballistic growth, half-filling plateau", 60.0,
       ring_damage_grows_ballistically},
      {"random graphs: first passage scales logarithmically", 120.0,
       random_graph_first_passage_is_logarithmic},
      {"single-site channels never increase the length", 120.0,
       channels_never_increase_the_length},
      {"single-qubit unitaries leave the length unchanged", 120.0,
       local_unitaries_leave_the_length_unchanged},
      {"symmetry, triangle inequality, zero self-distance", 180.0, the_length_is_a_metric},
      {"kernel invariants: involution, reference match, recurrence", 120.0,
       classical_kernel_invariants_hold},
      {"byte-identical artifacts across worker counts", 300.0, cli_artifacts_are_byte_stable},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const CheckFailure& f) {
      ok = false;
      detail = f.message;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > c.budget_seconds) {
      ok = false;
      detail = "exceeded the " + fmt(c.budget_seconds) + "s budget";
    }
    if (!ok) ++failures;

    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << (i + 1) << "/"
         << criteria.size() << "  " << c.name;
    std::cout << line.str();
    std::cout << "  (" << fmt(elapsed) << "s";
    if (c.budget_seconds > 0) std::cout << " / " << fmt(c.budget_seconds) << "s budget";
    std::cout << ")\n";
    if (!detail.empty()) std::cout << "      -> " << detail << "\n";
    std::cout.flush();
  }

  if (failures == 0) {
    std::cout << "all " << criteria.size() << " acceptance checks passed\n";
    return 0;
  }
  std::cout << failures << " of " << criteria.size() << " acceptance checks FAILED\n";
  return 1;
}
