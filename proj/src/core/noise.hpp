#pragma once

#include <vector>

#include "core/electronic.hpp"
#include "core/fock.hpp"
#include "core/gates.hpp"

namespace qumvqd {

// Single-mode amplitude damping over one gate application, parametrized by
// the dimensionless photon-loss fraction kappa*tau. The Kraus family is
//   K_l = sqrt((1 - e^{-kt})^l / l!) e^{-kt n̂ / 2} a^l,  l = 1..l_max,
// with K_0 replaced by K_0' = sqrt(I - Σ_{l>=1} K_l† K_l) so the truncated
// family is exactly trace preserving.
struct AmplitudeDampingChannel {
  double kappa_tau = 0.0;
  int l_max = 8;
  FockSpace space;
  int mode = 0;

  static AmplitudeDampingChannel make(double kappa_tau, int l_max,
                                      const FockSpace& space, int mode);
};

struct GateFidelityModel {
  double error_prob = 0.0;      // per entangling gate
  long long entangling_gate_count = 0;
  double reference_energy = 0.0;
};

// K_0', K_1, ..., K_lmax embedded on the channel's mode.
std::vector<OperatorMatrix> kraus_operators(const AmplitudeDampingChannel& ch);

DensityMatrix apply_channel(const AmplitudeDampingChannel& ch,
                            const DensityMatrix& rho);

// Density-matrix evolution from vacuum: each gate is applied as a unitary
// conjugation followed by the damping channel on every mode it touches.
// Returns Tr(rho H) with H embedded in the register's lowest levels.
double noisy_circuit_expectation(const std::vector<GateSpec>& circuit,
                                 const FockSpace& space, double kappa_tau,
                                 int l_max, const DenseHamiltonian& h);

// Expected |energy error| = (1 - (1-p)^n) |E_ref|; the fixed-fidelity model
// maps state error directly to energy error.
double fidelity_energy_error(const GateFidelityModel& model);

}  // namespace qumvqd
