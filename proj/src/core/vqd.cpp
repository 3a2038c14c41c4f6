#include "core/vqd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/parallel.hpp"

namespace qumvqd {

double VqdConfig::beta_for(std::size_t state_index) const {
  if (betas.empty()) return 3.0;
  return state_index < betas.size() ? betas[state_index] : betas.back();
}

void VqdConfig::validate() const {
  require(depth >= 0, ErrorCode::Argument, "depth must be >= 0");
  require(k >= 1, ErrorCode::Argument, "k must be >= 1");
  require(cutoff >= 2, ErrorCode::Argument, "cutoff must be >= 2");
  for (double b : betas)
    require(std::isfinite(b) && b >= 0.0, ErrorCode::Argument,
            "deflation weights must be finite and non-negative");
  require(optimizer.restarts >= 1, ErrorCode::Argument,
          "optimizer.restarts must be >= 1");
  require(optimizer.max_evals >= 1, ErrorCode::Argument,
          "optimizer.max_evals must be >= 1");
  require(optimizer.tol > 0, ErrorCode::Argument,
          "optimizer.tol must be > 0");
}

std::vector<double> VqdResult::energies() const {
  std::vector<double> e;
  e.reserve(states.size());
  for (const auto& s : states) e.push_back(s.energy);
  return e;
}

bool VqdResult::all_converged() const {
  for (const auto& s : states)
    if (!s.converged) return false;
  return true;
}

StateRecord optimize_state(const CircuitEvaluator& evaluator,
                           const EnergyBackend& backend,
                           std::span<const DeflationTerm> deflation,
                           const VqdConfig& config, int state_index) {
  config.validate();
  const std::int64_t nparams = evaluator.num_parameters();

  MinimizeOptions mopt;
  mopt.max_evals = config.optimizer.max_evals;
  mopt.tol = config.optimizer.tol;
  mopt.stall_window = config.optimizer.stall_window;
  mopt.algorithm = config.optimizer.algorithm;
  mopt.adam_lr = config.optimizer.adam_lr;
  mopt.adam_fraction = config.optimizer.adam_fraction;

  GradObjective objective = [&](const Eigen::VectorXd& x,
                                Eigen::VectorXd* grad) {
    if (grad == nullptr) return evaluator.cost(x, backend, deflation);
    return evaluator.cost_and_grad(x, backend, deflation, *grad);
  };

  const int restarts = config.optimizer.restarts;
  std::vector<MinimizeResult> runs(restarts);
  parallel_for(restarts, config.optimizer.threads, [&](std::int64_t r) {
    Rng rng(Rng::stream(config.seed, static_cast<std::uint64_t>(state_index),
                        static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(nparams);
    for (std::int64_t i = 0; i < nparams; ++i)
      x0[i] = rng.uniform(-config.optimizer.init_range,
                          config.optimizer.init_range);
    runs[r] = minimize(objective, std::move(x0), mopt, rng);
  });

  int winner = 0;
  for (int r = 1; r < restarts; ++r) {
    const double a = runs[r].value, b = runs[winner].value;
    if (std::isfinite(a) && (!std::isfinite(b) || a < b)) winner = r;
  }

  StateRecord rec;
  rec.index = state_index;
  rec.params = runs[winner].x;
  rec.final_cost = runs[winner].value;
  rec.converged = runs[winner].converged;
  rec.winning_restart = winner;
  rec.grad_norm = runs[winner].grad_norm;
  rec.cost_history = runs[winner].history;
  for (const auto& run : runs) rec.evaluations += run.evaluations;
  rec.energy = backend.energy(evaluator.prepare(rec.params).amplitudes);
  return rec;
}

VqdResult run_vqd(const AnsatzSpec& ansatz, const EnergyBackend& backend,
                  const VqdConfig& config) {
  config.validate();
  require(ansatz.space == backend.space(), ErrorCode::Argument,
          "ansatz and backend spaces differ");
  CircuitEvaluator evaluator(ansatz);

  VqdResult result;
  result.backend = backend.descriptor();
  result.seed = config.seed;
  result.depth = ansatz.depth;

  std::vector<DeflationTerm> deflation;
  deflation.reserve(config.k);
  for (int s = 0; s < config.k; ++s) {
    StateRecord rec =
        optimize_state(evaluator, backend, deflation, config, s);
    if (!rec.converged)
      result.warnings.push_back("state " + std::to_string(s) +
                                " did not converge (best cost carried)");
    deflation.push_back(DeflationTerm{
        evaluator.prepare(rec.params).amplitudes, config.beta_for(s)});
    result.states.push_back(std::move(rec));

    // a deflation weight below the spread found so far cannot hold lower
    // states out of the search
    double lo = result.states.front().energy, hi = lo;
    for (const auto& st : result.states) {
      lo = std::min(lo, st.energy);
      hi = std::max(hi, st.energy);
    }
    double beta_min = config.beta_for(0);
    for (int i = 0; i <= s; ++i)
      beta_min = std::min(beta_min, config.beta_for(i));
    if (s + 1 < config.k && beta_min < hi - lo)
      result.warnings.push_back(
          "deflation weight " + std::to_string(beta_min) +
          " is below the energy spread " + std::to_string(hi - lo) +
          " found so far; higher states may collapse onto lower ones");
  }

  std::stable_sort(result.states.begin(), result.states.end(),
                   [](const StateRecord& a, const StateRecord& b) {
                     return a.energy < b.energy;
                   });
  const double merge_tol = config.merge_tol > 0 ? config.merge_tol : 1e-6;
  result.deduplicated_energies = merge_degenerate(result.energies(), merge_tol);
  return result;
}

std::vector<double> merge_degenerate(const std::vector<double>& sorted,
                                     double tol) {
  std::vector<double> out;
  for (double e : sorted)
    if (out.empty() || e - out.back() > tol) out.push_back(e);
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& origin,
                              const std::string& what) {
  fail(ErrorCode::Parse, origin + ": " + what);
}

}  // namespace

VqdConfig parse_vqd_config_text(const std::string& text,
                                const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, origin + ": " + e.what());
  }
  if (!j.is_object()) config_fail(origin, "config must be a JSON object");

  VqdConfig c;
  auto get_int = [&](const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
      config_fail(origin, std::string(key) + " must be an integer");
    return j[key].get<int>();
  };
  auto get_double = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
      config_fail(origin, std::string(key) + " must be a number");
    return j[key].get<double>();
  };

  c.depth = get_int("depth", c.depth);
  c.k = get_int("k", c.k);
  c.cutoff = get_int("cutoff", c.cutoff);
  c.merge_tol = get_double("merge_tol", c.merge_tol);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      config_fail(origin, "seed must be an integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("betas")) {
    const auto& b = j["betas"];
    c.betas.clear();
    if (b.is_number()) {
      c.betas.push_back(b.get<double>());
    } else if (b.is_array() && !b.empty()) {
      for (const auto& v : b) {
        if (!v.is_number())
          config_fail(origin, "betas entries must be numbers");
        c.betas.push_back(v.get<double>());
      }
    } else {
      config_fail(origin, "betas must be a number or a non-empty array");
    }
  }
  if (j.contains("optimizer")) {
    const auto& o = j["optimizer"];
    if (!o.is_object()) config_fail(origin, "optimizer must be an object");
    auto oget_int = [&](const char* key, auto fallback) {
      if (!o.contains(key)) return static_cast<decltype(fallback)>(fallback);
      if (!o[key].is_number_integer())
        config_fail(origin, std::string("optimizer.") + key +
                                " must be an integer");
      return o[key].get<decltype(fallback)>();
    };
    c.optimizer.restarts = oget_int("restarts", c.optimizer.restarts);
    c.optimizer.max_evals = oget_int("max_evals", c.optimizer.max_evals);
    c.optimizer.stall_window =
        oget_int("stall_window", c.optimizer.stall_window);
    c.optimizer.threads = oget_int("threads", c.optimizer.threads);
    if (o.contains("tol")) {
      if (!o["tol"].is_number())
        config_fail(origin, "optimizer.tol must be a number");
      c.optimizer.tol = o["tol"].get<double>();
    }
    if (o.contains("algorithm")) {
      if (!o["algorithm"].is_string())
        config_fail(origin, "optimizer.algorithm must be a string");
      c.optimizer.algorithm = o["algorithm"].get<std::string>();
    }
    if (o.contains("adam_lr")) {
      if (!o["adam_lr"].is_number())
        config_fail(origin, "optimizer.adam_lr must be a number");
      c.optimizer.adam_lr = o["adam_lr"].get<double>();
    }
    if (o.contains("adam_fraction")) {
      if (!o["adam_fraction"].is_number())
        config_fail(origin, "optimizer.adam_fraction must be a number");
      c.optimizer.adam_fraction = o["adam_fraction"].get<double>();
    }
    if (o.contains("init_range")) {
      if (!o["init_range"].is_number())
        config_fail(origin, "optimizer.init_range must be a number");
      c.optimizer.init_range = o["init_range"].get<double>();
    }
  }
  c.validate();
  return c;
}

VqdConfig parse_vqd_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_vqd_config_text(ss.str(), path);
}

}  // namespace qumvqd
