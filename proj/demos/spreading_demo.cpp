// Runs the two spreading scenarios at modest size and prints how the
// Hamming damage k_t between the perturbed and unperturbed trajectories
// grows: linearly on the cycle, and fast enough on random bipartite graphs
// to pass N/4 after roughly log2(N) steps.

#include <cstdio>

#include "wblsense/wblsense.hpp"

using namespace wblsense;

int main() {
  ScenarioConfig cycle_cfg;
  cycle_cfg.topology = Topology::cycle;
  cycle_cfg.n_qubits = 200;
  cycle_cfg.t_max = 160;
  cycle_cfg.trials = 10;
  cycle_cfg.base_seed = 42;

  const EnsembleSummary cycle = run_ensemble(cycle_cfg);
  std::printf("cycle, N=%d, %d trials\n", cycle_cfg.n_qubits, cycle_cfg.trials);
  for (int t = 0; t <= cycle_cfg.t_max; t += 20)
    std::printf("  t=%4d   mean k_t = %8.2f\n", t, cycle.mean_k[static_cast<std::size_t>(t)]);
  if (cycle.fit)
    std::printf("  linear fit on t in [%d,%d]: slope %.3f sites/step, R^2 = %.4f\n",
                cycle.fit->window.t_lo, cycle.fit->window.t_hi, cycle.fit->slope,
                cycle.fit->r_squared);
  if (cycle.plateau_mean)
    std::printf("  plateau mean %.2f (N/2 = %d)\n\n", *cycle.plateau_mean,
                cycle_cfg.n_qubits / 2);

  std::vector<ScenarioConfig> sweep;
  for (const int n : {128, 256, 512}) {
    ScenarioConfig cfg;
    cfg.topology = Topology::random_bipartite;
    cfg.n_qubits = n;
    cfg.t_max = 40;
    cfg.trials = 25;
    cfg.base_seed = 7 + static_cast<std::uint64_t>(n);
    sweep.push_back(cfg);
  }
  std::printf("random bipartite, first passage of k_t past N/4:\n");
  for (const auto& row : first_passage_scaling(sweep))
    std::printf("  N=%5d   mean %.2f steps (std %.2f, unreached %d)\n", row.n_qubits, row.mean,
                row.stddev, row.unreached);
  return 0;
}
