#pragma once

#include <string>
#include <vector>

#include "core/electronic.hpp"
#include "core/fock.hpp"

namespace qumvqd {

// One Bogoliubov-type fragment H_k = U_k D_k U_k†. Gate parameters realize
// U_k = (Π_p D_p(γ_p)) (Π_{p>q} BS_pq(2φ_pq, π/2)) (Π_p S_p(ζ_p, 0))
//       (Π_{p>q} BS_pq(2χ_pq, π/2)),
// applied right to left (the χ beam-splitter layer acts first).
struct Fragment {
  Eigen::VectorXcd gammas;  // N displacements
  Eigen::MatrixXd phis;     // N x N, lower triangle (p > q) used
  Eigen::VectorXd zetas;    // N squeezing strengths
  Eigen::MatrixXd chis;     // N x N, lower triangle used
  Eigen::VectorXd diag;     // d^N entries of D_k in the Fock basis, cm^-1
};

struct FragmentSet {
  int num_modes = 1;
  int cutoff = 2;
  std::vector<Fragment> fragments;

  FockSpace space() const { return FockSpace::make(num_modes, cutoff); }
  void check_shapes() const;
};

struct GateCountReport {
  int num_modes = 0;
  int num_fragments = 0;
  int depth = 0;  // ansatz depth D
  // per fragment unitary: one displacement and one squeeze per qumode,
  // 2(N-1) beam splitters per qumode (N(N-1) distinct gates)
  int fragment_displacement = 0;
  int fragment_squeeze = 0;
  int fragment_bs_per_qumode = 0;
  int fragment_bs = 0;
  // a depth-D ansatz adds D gates of each type
  int ansatz_per_type = 0;
  // one measurement circuit = ansatz + one fragment unitary
  int circuit_displacement = 0;
  int circuit_squeeze = 0;
  int circuit_bs = 0;
  // summed over all fragment circuits
  long long total_displacement = 0;
  long long total_squeeze = 0;
  long long total_bs = 0;
};

// Dense unitary for one fragment.
OperatorMatrix fragment_unitary(const Fragment& f, const FockSpace& space);

// <psi| U_k D_k U_k† |psi> evaluated the measurement way: apply U_k† to psi,
// then weight photon-number-basis probabilities by diag.
double fragment_expectation(const Fragment& f, const StateVector& psi);

// Σ_k U_k D_k U_k†, the oracle Hamiltonian for fragment-backend runs.
DenseHamiltonian reconstruct_hamiltonian(const FragmentSet& fs);

GateCountReport count_gates(const FragmentSet& fs, int depth);

FragmentSet parse_fragment_set(const std::string& path);
FragmentSet parse_fragment_set_text(const std::string& text,
                                    const std::string& origin);

}  // namespace qumvqd
