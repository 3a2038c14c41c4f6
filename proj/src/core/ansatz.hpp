#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/electronic.hpp"
#include "core/fock.hpp"
#include "core/fragments.hpp"
#include "core/gates.hpp"

namespace qumvqd {

// Layered SNAP + displacement ansatz, with an all-to-all beam-splitter layer
// appended per depth step when the register has more than one qumode.
//
// Parameter layout, repeated per layer:
//   [mode 0 SNAP phases (d)] ... [mode N-1 SNAP phases]
//   [mode 0 displacement (Re, Im)] ... [mode N-1 displacement]
//   [pair (q=0,p=1) BS (beta, phi)] [(0,2)] ... [(N-2,N-1)]
struct AnsatzSpec {
  FockSpace space;
  int depth = 1;
  bool all_to_all_bs = false;

  static AnsatzSpec make(const FockSpace& space, int depth);

  std::int64_t params_per_layer() const;
  std::int64_t num_parameters() const;
};

struct DeflationTerm {
  Vector state;  // converged eigenstate approximation
  double beta;   // overlap penalty weight
};

// Energy backends hide how <psi|H|psi> is produced. Implementations must be
// immutable after construction; cost evaluation may run on several threads.
class EnergyBackend {
public:
  virtual ~EnergyBackend() = default;
  virtual const FockSpace& space() const = 0;
  virtual double energy(const Vector& psi) const = 0;
  // hpsi = H |psi>, the co-state used by the adjoint gradient
  virtual void apply_hamiltonian(const Vector& psi, Vector& hpsi) const = 0;
  virtual std::string descriptor() const = 0;
};

// Dense matrix backend. A Hamiltonian of dimension <= d^N is embedded into
// the lowest Fock levels; the remaining levels carry zero rows and columns.
class DenseBackend : public EnergyBackend {
public:
  DenseBackend(const DenseHamiltonian& h, const FockSpace& space);
  const FockSpace& space() const override { return space_; }
  double energy(const Vector& psi) const override;
  void apply_hamiltonian(const Vector& psi, Vector& hpsi) const override;
  std::string descriptor() const override { return descriptor_; }
  const Matrix& embedded_matrix() const { return embedded_; }

private:
  FockSpace space_;
  Matrix embedded_;
  std::string descriptor_;
};

// Fragment backend: evaluates Σ_k <psi'|D_k|psi'> with psi' = U_k† psi,
// caching each fragment unitary once. The sum over fragments is a fixed-order
// reduction so results are bit-stable regardless of threading.
class FragmentBackend : public EnergyBackend {
public:
  explicit FragmentBackend(const FragmentSet& fs);
  const FockSpace& space() const override { return space_; }
  double energy(const Vector& psi) const override;
  void apply_hamiltonian(const Vector& psi, Vector& hpsi) const override;
  std::string descriptor() const override { return descriptor_; }
  std::size_t num_fragments() const { return u_dagger_.size(); }
  double fragment_energy(std::size_t k, const Vector& psi) const;

private:
  FockSpace space_;
  std::vector<Matrix> u_dagger_;
  std::vector<Eigen::VectorXd> diag_;
  std::string descriptor_;
};

// Prepares ansatz states and evaluates the deflation-penalized cost together
// with its analytic gradient (adjoint sweep through the gate sequence).
class CircuitEvaluator {
public:
  explicit CircuitEvaluator(const AnsatzSpec& spec);

  const AnsatzSpec& spec() const { return spec_; }
  std::int64_t num_parameters() const { return spec_.num_parameters(); }

  StateVector prepare(const Eigen::VectorXd& params) const;

  double cost(const Eigen::VectorXd& params, const EnergyBackend& backend,
              std::span<const DeflationTerm> deflation) const;

  double cost_and_grad(const Eigen::VectorXd& params,
                       const EnergyBackend& backend,
                       std::span<const DeflationTerm> deflation,
                       Eigen::VectorXd& grad) const;

  // Gate list realizing prepare(params); consumed by the noise models.
  std::vector<GateSpec> to_circuit(const Eigen::VectorXd& params) const;

private:
  struct BsTape;
  struct Tape;

  Vector forward(const Eigen::VectorXd& params, Tape* tape) const;

  AnsatzSpec spec_;
  // eigensystem of i(b† - b); displacement gates are applied through it
  Matrix disp_v_, disp_vh_;
  Eigen::VectorXd disp_lambda_;
};

}  // namespace qumvqd
