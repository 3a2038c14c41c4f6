#include "core/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "core/errors.hpp"

namespace qumvqd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tracker {
  double best = kInf;
  Eigen::VectorXd best_x;
  std::int64_t evals = 0;
  std::int64_t last_improvement_eval = 0;
  double tol;
  int stall_window;
  std::vector<double> history;

  Tracker(double tol_, int window) : tol(tol_), stall_window(window) {}

  void record(double f, const Eigen::VectorXd& x) {
    ++evals;
    if (std::isfinite(f) && f < best - tol) last_improvement_eval = evals;
    if (std::isfinite(f) && f < best) {
      best = f;
      best_x = x;
    }
    if (evals % 10 == 0) history.push_back(best);
  }
  bool stalled() const {
    return evals - last_improvement_eval >= stall_window;
  }
};

}  // namespace

MinimizeResult minimize_gradient(const GradObjective& f, Eigen::VectorXd x0,
                                 const MinimizeOptions& opt) {
  const Eigen::Index n = x0.size();
  Tracker track(opt.tol, opt.stall_window);
  Eigen::VectorXd x = x0, g(n);
  double fx = f(x, &g);
  track.record(fx, x);
  double gnorm = g.norm();

  // ---- Adam warmup ----
  const std::int64_t adam_budget = static_cast<std::int64_t>(
      static_cast<double>(opt.max_evals) * opt.adam_fraction);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  for (std::int64_t t = 1; track.evals < adam_budget; ++t) {
    double lr = opt.adam_lr;
    if (t > adam_budget * 3 / 5) lr *= 1.0 / 3.0;
    if (t > adam_budget * 4 / 5) lr *= 0.1;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g.cwiseProduct(g).eval();
    const double c1 = 1 - std::pow(b1, double(t));
    const double c2 = 1 - std::pow(b2, double(t));
    x -= (lr / c1) * m.cwiseQuotient((v / c2).cwiseSqrt().array().matrix() +
                                     Eigen::VectorXd::Constant(n, eps));
    fx = f(x, &g);
    gnorm = g.norm();
    track.record(fx, x);
    if (track.stalled()) break;
  }

  // ---- L-BFGS polish from the best point seen ----
  x = track.best_x;
  fx = f(x, &g);
  track.record(fx, x);
  gnorm = g.norm();
  const int mem = std::max(1, opt.lbfgs_memory);
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  bool restarted = false;
  bool converged = false;
  auto gtol = [&](double fval) { return 1e-8 * std::max(1.0, std::abs(fval)); };

  while (track.evals < opt.max_evals) {
    if (gnorm <= gtol(fx)) {
      converged = true;
      break;
    }
    if (track.stalled()) {
      converged = true;
      break;
    }
    // two-loop recursion
    Eigen::VectorXd q = g;
    std::vector<double> alphas(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alphas[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alphas[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const double gamma = s_hist.back().dot(y_hist.back()) /
                           y_hist.back().squaredNorm();
      q *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alphas[i] - beta) * s_hist[i];
    }
    Eigen::VectorXd dir = -q;
    double slope = g.dot(dir);
    if (slope >= 0) {  // not a descent direction; fall back to steepest
      dir = -g;
      slope = -gnorm * gnorm;
    }
    // backtracking Armijo line search
    double step = 1.0;
    const double c_armijo = 1e-4;
    bool accepted = false;
    Eigen::VectorXd x_new, g_new(n);
    double f_new = 0;
    for (int back = 0; back < 30 && track.evals < opt.max_evals; ++back) {
      x_new = x + step * dir;
      f_new = f(x_new, &g_new);
      track.record(f_new, x_new);
      if (std::isfinite(f_new) && f_new <= fx + c_armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!restarted && !s_hist.empty()) {
        // discard curvature history and retry from steepest descent
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        restarted = true;
        continue;
      }
      // no progress possible at working precision
      converged = true;
      break;
    }
    restarted = false;
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > mem) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = std::move(x_new);
    fx = f_new;
    g = g_new;
    gnorm = g.norm();
  }

  MinimizeResult res;
  res.x = track.best_x;
  res.value = track.best;
  res.evaluations = track.evals;
  res.converged = converged;
  res.grad_norm = gnorm;
  res.history = std::move(track.history);
  res.history.push_back(track.best);
  return res;
}

MinimizeResult minimize_nelder_mead(const GradObjective& f,
                                    Eigen::VectorXd x0,
                                    const MinimizeOptions& opt, Rng& rng) {
  const Eigen::Index n = x0.size();
  require(n >= 1, ErrorCode::Argument, "empty parameter vector");
  Tracker track(opt.tol, opt.stall_window);
  auto eval = [&](const Eigen::VectorXd& x) {
    double v = f(x, nullptr);
    track.record(v, x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  fv[0] = eval(pts[0]);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts[i + 1][i] += 0.05 + 0.05 * rng.next_double();
    fv[i + 1] = eval(pts[i + 1]);
  }
  std::vector<int> order(n + 1);

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  bool converged = false;
  while (track.evals < opt.max_evals) {
    for (Eigen::Index i = 0; i <= n; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (fv[worst] - fv[best] < opt.tol) {
      converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i)
      if (order[i] != worst) centroid += pts[order[i]];
    centroid /= double(n);

    Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    double fr = eval(xr);
    if (fr < fv[best]) {
      Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
      double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
    } else {
      Eigen::VectorXd xc = centroid + rho * (pts[worst] - centroid);
      double fc = eval(xc);
      if (fc < fv[worst]) {
        pts[worst] = xc;
        fv[worst] = fc;
      } else {
        for (Eigen::Index i = 0; i <= n; ++i) {
          if (order[i] == best) continue;
          pts[order[i]] = pts[best] + sigma * (pts[order[i]] - pts[best]);
          fv[order[i]] = eval(pts[order[i]]);
        }
      }
    }
  }

  MinimizeResult res;
  res.x = track.best_x;
  res.value = track.best;
  res.evaluations = track.evals;
  res.converged = converged;
  res.grad_norm = std::numeric_limits<double>::quiet_NaN();
  res.history = std::move(track.history);
  res.history.push_back(track.best);
  return res;
}

MinimizeResult minimize(const GradObjective& f, Eigen::VectorXd x0,
                        const MinimizeOptions& opt, Rng& rng) {
  if (opt.algorithm == "nelder-mead")
    return minimize_nelder_mead(f, std::move(x0), opt, rng);
  require(opt.algorithm == "adam+lbfgs", ErrorCode::Argument,
          "unknown optimizer algorithm '" + opt.algorithm + "'");
  return minimize_gradient(f, std::move(x0), opt);
}

}  // namespace qumvqd
