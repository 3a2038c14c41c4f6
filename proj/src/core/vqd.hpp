#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/ansatz.hpp"
#include "core/optimize.hpp"

namespace qumvqd {

struct OptimizerSettings {
  int restarts = 5;
  std::int64_t max_evals = 20000;  // per restart
  double tol = 1e-9;
  std::string algorithm = "adam+lbfgs";
  double adam_lr = 0.05;
  double adam_fraction = 0.4;
  int stall_window = 50;
  double init_range = 0.1;  // parameters start uniform in [-range, range]
  int threads = 0;          // 0: QUMVQD_THREADS or hardware
};

struct VqdConfig {
  int depth = 20;
  int k = 1;
  std::vector<double> betas = {3.0};  // betas[n] deflates against state n;
                                      // last entry broadcasts
  double merge_tol = -1.0;            // <0: caller applies its unit default
  std::uint64_t seed = 0;
  int cutoff = 16;  // Fock cutoff used when the caller builds the register
  OptimizerSettings optimizer;

  double beta_for(std::size_t state_index) const;
  void validate() const;
};

struct StateRecord {
  int index = 0;  // order of discovery
  Eigen::VectorXd params;
  double energy = 0.0;      // backend energy at the solution (no penalty)
  double final_cost = 0.0;  // penalized cost at the solution
  bool converged = false;
  std::int64_t evaluations = 0;  // summed over restarts
  int winning_restart = 0;
  double grad_norm = 0.0;
  std::vector<double> cost_history;  // winning restart, thinned
};

struct VqdResult {
  std::vector<StateRecord> states;  // ascending by energy
  std::vector<double> deduplicated_energies;
  std::vector<std::string> warnings;
  std::string backend;
  std::uint64_t seed = 0;
  int depth = 0;

  std::vector<double> energies() const;
  bool all_converged() const;
};

// Minimizes energy + Σ_n beta_n |<psi_n|psi>|^2 over the ansatz parameters,
// best of `restarts` independently seeded starts. The reported energy never
// includes the deflation penalty.
StateRecord optimize_state(const CircuitEvaluator& evaluator,
                           const EnergyBackend& backend,
                           std::span<const DeflationTerm> deflation,
                           const VqdConfig& config, int state_index);

// Sequential deflation: state n is optimized against all previously found
// states. Convergence failures are carried in the records, not thrown.
VqdResult run_vqd(const AnsatzSpec& ansatz, const EnergyBackend& backend,
                  const VqdConfig& config);

// Merge energies within tol of a group's first member (ascending input).
std::vector<double> merge_degenerate(const std::vector<double>& sorted,
                                     double tol);

VqdConfig parse_vqd_config_text(const std::string& text,
                                const std::string& origin);
VqdConfig parse_vqd_config(const std::string& path);

}  // namespace qumvqd
