#include "core/noise.hpp"

#include <cmath>
#include <map>

namespace qumvqd {

AmplitudeDampingChannel AmplitudeDampingChannel::make(double kappa_tau,
                                                      int l_max,
                                                      const FockSpace& space,
                                                      int mode) {
  require(std::isfinite(kappa_tau) && kappa_tau >= 0.0, ErrorCode::Argument,
          "kappa_tau must be finite and >= 0");
  require(l_max >= 1, ErrorCode::Argument, "l_max must be >= 1");
  require(mode >= 0 && mode < space.num_modes, ErrorCode::Argument,
          "channel mode out of range");
  return AmplitudeDampingChannel{kappa_tau, l_max, space, mode};
}

namespace {

// single-mode Kraus family, K_0' first
std::vector<Matrix> kraus_local(int d, double kappa_tau, int l_max) {
  const double decay = std::exp(-kappa_tau);
  Matrix damp = Matrix::Zero(d, d);  // e^{-kt n/2}
  for (int n = 0; n < d; ++n) damp(n, n) = std::exp(-0.5 * kappa_tau * n);
  const Matrix a = lowering_matrix(d);

  std::vector<Matrix> ops(static_cast<std::size_t>(l_max) + 1);
  Matrix a_pow = Matrix::Identity(d, d);
  double log_fact = 0.0;
  Matrix completeness_defect = Matrix::Identity(d, d);
  for (int l = 1; l <= l_max; ++l) {
    a_pow = a * a_pow;  // a^l
    log_fact += std::log(static_cast<double>(l));
    const double coeff =
        kappa_tau == 0.0
            ? 0.0
            : std::sqrt(std::exp(l * std::log(1.0 - decay) - log_fact));
    ops[l] = coeff * (damp * a_pow);
    completeness_defect -= ops[l].adjoint() * ops[l];
  }
  // K_0' = sqrt(I - Σ K†K); the defect is Hermitian PSD up to roundoff
  Eigen::SelfAdjointEigenSolver<Matrix> es(completeness_defect);
  Eigen::VectorXd w_eig = es.eigenvalues();
  for (Eigen::Index i = 0; i < w_eig.size(); ++i) {
    require(w_eig[i] >= -1e-12, ErrorCode::Numerical,
            "K0' square-root argument has eigenvalue " +
                std::to_string(w_eig[i]));
    if (w_eig[i] < 0.0) w_eig[i] = 0.0;
  }
  Matrix sqrt_w =
      w_eig.array().sqrt().matrix().cast<Complex>().asDiagonal();
  ops[0] = es.eigenvectors() * sqrt_w * es.eigenvectors().adjoint();
  return ops;
}

}  // namespace

std::vector<OperatorMatrix> kraus_operators(const AmplitudeDampingChannel& ch) {
  require(std::isfinite(ch.kappa_tau) && ch.kappa_tau >= 0.0,
          ErrorCode::Argument, "kappa_tau must be finite and >= 0");
  require(ch.l_max >= 1, ErrorCode::Argument, "l_max must be >= 1");
  std::vector<Matrix> local = kraus_local(ch.space.cutoff, ch.kappa_tau,
                                          ch.l_max);
  std::vector<OperatorMatrix> out;
  out.reserve(local.size());
  for (auto& k : local)
    out.push_back(OperatorMatrix::plain(
        ch.space, embed_single_mode(ch.space, ch.mode, k)));
  return out;
}

DensityMatrix apply_channel(const AmplitudeDampingChannel& ch,
                            const DensityMatrix& rho) {
  require(ch.space == rho.space, ErrorCode::Argument,
          "channel and state live in different spaces");
  std::vector<OperatorMatrix> ks = kraus_operators(ch);
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (const auto& k : ks) out += k.matrix * rho.matrix * k.matrix.adjoint();
  return DensityMatrix{rho.space, std::move(out)};
}

double noisy_circuit_expectation(const std::vector<GateSpec>& circuit,
                                 const FockSpace& space, double kappa_tau,
                                 int l_max, const DenseHamiltonian& h) {
  require(h.dimension() <= space.total_dim, ErrorCode::Argument,
          "Hamiltonian dimension exceeds the register dimension");
  Matrix h_embed = Matrix::Zero(space.total_dim, space.total_dim);
  h_embed.topLeftCorner(h.dimension(), h.dimension()) = h.matrix;

  DensityMatrix rho = DensityMatrix::from_pure(StateVector::vacuum(space));

  // the channel is identical for every gate, so cache the per-mode family
  std::map<int, std::vector<OperatorMatrix>> channel_cache;
  auto channel_for = [&](int mode) -> const std::vector<OperatorMatrix>& {
    auto it = channel_cache.find(mode);
    if (it == channel_cache.end())
      it = channel_cache
               .emplace(mode, kraus_operators(AmplitudeDampingChannel::make(
                                  kappa_tau, l_max, space, mode)))
               .first;
    return it->second;
  };

  for (const GateSpec& spec : circuit) {
    OperatorMatrix u = build_gate(space, spec);
    rho.matrix = u.matrix * rho.matrix * u.matrix.adjoint();
    if (kappa_tau > 0.0) {
      const int touched = spec.touched_modes();
      for (int t = 0; t < touched; ++t) {
        const auto& ks = channel_for(spec.modes[t]);
        Matrix next = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
        for (const auto& k : ks)
          next += k.matrix * rho.matrix * k.matrix.adjoint();
        rho.matrix = std::move(next);
      }
    }
  }

  Complex tr = (rho.matrix * h_embed).trace();
  require(std::abs(tr.imag()) < 1e-9 * std::max(1.0, max_abs(h_embed)),
          ErrorCode::Numerical,
          "noisy expectation has a non-negligible imaginary part");
  return tr.real();
}

double fidelity_energy_error(const GateFidelityModel& model) {
  require(model.error_prob >= 0.0 && model.error_prob <= 1.0,
          ErrorCode::Argument, "error probability must be in [0, 1]");
  require(model.entangling_gate_count >= 0, ErrorCode::Argument,
          "gate count must be >= 0");
  require(std::isfinite(model.reference_energy), ErrorCode::Argument,
          "reference energy must be finite");
  const double survival =
      std::pow(1.0 - model.error_prob,
               static_cast<double>(model.entangling_gate_count));
  return (1.0 - survival) * std::abs(model.reference_energy);
}

}  // namespace qumvqd
