#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/rng.hpp"

namespace qumvqd {

// Objective with optional analytic gradient; grad may be null (value only).
using GradObjective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct MinimizeOptions {
  std::int64_t max_evals = 20000;  // objective evaluations per run
  double tol = 1e-9;               // cost-improvement stall threshold
  int stall_window = 50;           // evaluations without improvement > tol
  std::string algorithm = "adam+lbfgs";  // or "nelder-mead"
  double adam_lr = 0.05;
  double adam_fraction = 0.4;  // share of the budget spent in Adam warmup
  int lbfgs_memory = 10;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  std::vector<double> history;  // best cost, sampled every few evaluations
};

// Adam warmup followed by L-BFGS polish, both on analytic gradients.
MinimizeResult minimize_gradient(const GradObjective& f, Eigen::VectorXd x0,
                                 const MinimizeOptions& opt);

// Derivative-free simplex fallback; practical only for small parameter
// counts.
MinimizeResult minimize_nelder_mead(const GradObjective& f,
                                    Eigen::VectorXd x0,
                                    const MinimizeOptions& opt, Rng& rng);

MinimizeResult minimize(const GradObjective& f, Eigen::VectorXd x0,
                        const MinimizeOptions& opt, Rng& rng);

}  // namespace qumvqd
