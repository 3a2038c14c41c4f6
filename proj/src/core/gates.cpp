#include "core/gates.hpp"

#include <cmath>
#include <string>

namespace qumvqd {

namespace {

void check_mode(const FockSpace& space, int mode) {
  require(mode >= 0 && mode < space.num_modes, ErrorCode::Argument,
          "mode index " + std::to_string(mode) + " out of range");
}

// population of the listed levels in column 0 (gate acting on vacuum)
double vacuum_leak(const Matrix& gate, std::initializer_list<int> levels) {
  double p = 0.0;
  for (int l : levels) p += std::norm(gate(l, 0));
  return p;
}

}  // namespace

OperatorMatrix snap_gate(const FockSpace& space, int mode,
                         std::span<const double> thetas) {
  check_mode(space, mode);
  require(static_cast<int>(thetas.size()) == space.cutoff, ErrorCode::Argument,
          "SNAP needs exactly one phase per Fock level (" +
              std::to_string(space.cutoff) + " expected, got " +
              std::to_string(thetas.size()) + ")");
  Matrix local = Matrix::Zero(space.cutoff, space.cutoff);
  for (int n = 0; n < space.cutoff; ++n)
    local(n, n) = std::exp(Complex(0, thetas[n]));
  return OperatorMatrix::unitary(space, embed_single_mode(space, mode, local));
}

Matrix displacement_local(int cutoff, Complex alpha) {
  Matrix a = lowering_matrix(cutoff);
  Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return matrix_exp(gen);
}

OperatorMatrix displacement_gate(const FockSpace& space, int mode,
                                 Complex alpha) {
  check_mode(space, mode);
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()),
          ErrorCode::Argument, "displacement amplitude must be finite");
  Matrix local = displacement_local(space.cutoff, alpha);
  double leak = vacuum_leak(local, {space.cutoff - 1});
  require(leak < 1e-6, ErrorCode::Truncation,
          "displacement leaks population " + std::to_string(leak) +
              " into the top truncated level; raise the cutoff");
  return OperatorMatrix::unitary(space, embed_single_mode(space, mode, local));
}

OperatorMatrix beamsplitter_gate(const FockSpace& space, int mode_j,
                                 int mode_k, double beta, double phi) {
  check_mode(space, mode_j);
  check_mode(space, mode_k);
  require(mode_j != mode_k, ErrorCode::Argument,
          "beam splitter requires two distinct modes");
  require(std::isfinite(beta) && std::isfinite(phi), ErrorCode::Argument,
          "beam splitter parameters must be finite");
  Matrix hop = hopping_op(space, mode_j, mode_k);
  Matrix gen = Complex(0, beta / 2.0) *
               (std::exp(Complex(0, phi)) * hop +
                std::exp(Complex(0, -phi)) * hop.adjoint());
  return matrix_exp(OperatorMatrix::plain(space, std::move(gen)));
}

Matrix squeeze_local(int cutoff, double zeta, double phi) {
  Matrix a = lowering_matrix(cutoff);
  Matrix a2 = a * a;
  Matrix gen = 0.5 * (zeta * std::exp(Complex(0, phi)) * a2.adjoint() -
                      zeta * std::exp(Complex(0, -phi)) * a2);
  return matrix_exp(gen);
}

OperatorMatrix squeeze_gate(const FockSpace& space, int mode, double zeta,
                            double phi) {
  check_mode(space, mode);
  require(std::isfinite(zeta) && std::isfinite(phi), ErrorCode::Argument,
          "squeeze parameters must be finite");
  Matrix local = squeeze_local(space.cutoff, zeta, phi);
  // squeezed vacuum only populates even levels, so the top level alone can
  // be blind to truncation at even cutoffs; inspect the top two
  double leak =
      space.cutoff >= 2
          ? vacuum_leak(local, {space.cutoff - 1, space.cutoff - 2})
          : vacuum_leak(local, {space.cutoff - 1});
  require(leak < 1e-8, ErrorCode::Truncation,
          "squeeze leaks population " + std::to_string(leak) +
              " into the top truncated levels; raise the cutoff");
  return OperatorMatrix::unitary(space, embed_single_mode(space, mode, local));
}

OperatorMatrix build_gate(const FockSpace& space, const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::Snap:
      return snap_gate(space, spec.modes[0], spec.params);
    case GateKind::Displacement:
      require(spec.params.size() == 2, ErrorCode::Argument,
              "displacement spec needs {Re alpha, Im alpha}");
      return displacement_gate(space, spec.modes[0],
                               Complex(spec.params[0], spec.params[1]));
    case GateKind::BeamSplitter:
      require(spec.params.size() == 2, ErrorCode::Argument,
              "beam splitter spec needs {beta, phi}");
      return beamsplitter_gate(space, spec.modes[0], spec.modes[1],
                               spec.params[0], spec.params[1]);
    case GateKind::Squeeze:
      require(spec.params.size() == 2, ErrorCode::Argument,
              "squeeze spec needs {zeta, phi}");
      return squeeze_gate(space, spec.modes[0], spec.params[0],
                          spec.params[1]);
  }
  fail(ErrorCode::Internal, "unknown gate kind");
}

}  // namespace qumvqd
