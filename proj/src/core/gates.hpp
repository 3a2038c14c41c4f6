#pragma once

#include <array>
#include <span>
#include <vector>

#include "core/fock.hpp"

namespace qumvqd {

enum class GateKind { Snap, Displacement, BeamSplitter, Squeeze };

// Serializable description of one gate application. Parameter layout:
//   Snap:         d phases
//   Displacement: {Re alpha, Im alpha}
//   BeamSplitter: {beta, phi}
//   Squeeze:      {zeta, phi}
struct GateSpec {
  GateKind kind;
  std::array<int, 2> modes{0, 0};  // second entry used by BeamSplitter only
  std::vector<double> params;

  int touched_modes() const { return kind == GateKind::BeamSplitter ? 2 : 1; }
};

// Diagonal unitary with phase e^{i theta_n} on Fock level n of `mode`.
OperatorMatrix snap_gate(const FockSpace& space, int mode,
                         std::span<const double> thetas);

// e^{alpha b† - alpha* b}. Rejects parameters whose coherent state leaks
// more than 1e-6 population into the top truncated level.
OperatorMatrix displacement_gate(const FockSpace& space, int mode,
                                 Complex alpha);

// e^{i beta/2 (e^{i phi} b†_j b_k + e^{-i phi} b†_k b_j)}; photon conserving.
OperatorMatrix beamsplitter_gate(const FockSpace& space, int mode_j,
                                 int mode_k, double beta, double phi);

// e^{(zeta e^{i phi} b†² - zeta e^{-i phi} b²)/2}. phi = 0 recovers the
// real-parameter squeezer. Errors when the squeezed vacuum leaks more than
// 1e-8 population into the top two truncated levels.
OperatorMatrix squeeze_gate(const FockSpace& space, int mode, double zeta,
                            double phi = 0.0);

// Gate matrix for a GateSpec (used by noisy circuit evaluation).
OperatorMatrix build_gate(const FockSpace& space, const GateSpec& spec);

// Single-mode d x d variants (no tensor embedding).
Matrix displacement_local(int cutoff, Complex alpha);
Matrix squeeze_local(int cutoff, double zeta, double phi = 0.0);

}  // namespace qumvqd
