#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "core/errors.hpp"

namespace qumvqd {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Register of N qumodes, each truncated at `cutoff` levels. Basis index i
// encodes per-mode occupations as base-d digits, mode 0 least significant.
struct FockSpace {
  int num_modes = 1;
  int cutoff = 2;
  std::int64_t total_dim = 2;

  static FockSpace make(int num_modes, int cutoff);

  std::int64_t stride(int mode) const;                   // d^mode
  int occupation(std::int64_t index, int mode) const;    // base-d digit
  std::vector<int> occupations(std::int64_t index) const;

  bool operator==(const FockSpace& o) const {
    return num_modes == o.num_modes && cutoff == o.cutoff;
  }
  bool operator!=(const FockSpace& o) const { return !(*this == o); }
};

// Normalized pure state over a FockSpace.
struct StateVector {
  FockSpace space;
  Vector amplitudes;

  static StateVector vacuum(const FockSpace& space);
  static StateVector basis_state(const FockSpace& space, std::int64_t index);

  double norm() const { return amplitudes.norm(); }
  void normalize();
  void check_normalized(double tol = 1e-10) const;
};

// Trace-one Hermitian positive-semidefinite matrix over a FockSpace.
struct DensityMatrix {
  FockSpace space;
  Matrix matrix;

  static DensityMatrix from_pure(const StateVector& psi);
  void validate(double tol = 1e-10, double psd_tol = 1e-9) const;
};

// Dense operator with optional Hermitian/unitary tags. Tags are validated at
// construction so downstream code can rely on them.
struct OperatorMatrix {
  FockSpace space;
  Matrix matrix;
  bool hermitian_flag = false;
  bool unitary_flag = false;

  static OperatorMatrix plain(FockSpace space, Matrix m);
  static OperatorMatrix hermitian(FockSpace space, Matrix m);
  static OperatorMatrix unitary(FockSpace space, Matrix m);
  static OperatorMatrix identity(const FockSpace& space);

  OperatorMatrix dagger() const;
};

// max |entry| norm, used for all tolerance checks
double max_abs(const Matrix& m);

// Embeds a single-mode d x d operator on `mode`, identity on the others.
Matrix embed_single_mode(const FockSpace& space, int mode,
                         const Matrix& local);

// b†_j b_k on the full space, built digit-wise (j != k).
Matrix hopping_op(const FockSpace& space, int mode_j, int mode_k);

OperatorMatrix lowering_op(const FockSpace& space, int mode);
OperatorMatrix raising_op(const FockSpace& space, int mode);
OperatorMatrix number_op(const FockSpace& space, int mode);
OperatorMatrix total_number_op(const FockSpace& space);

// Single-mode d x d building blocks (no embedding).
Matrix lowering_matrix(int cutoff);
Matrix number_matrix(int cutoff);

// e^A. Hermitian/anti-Hermitian inputs go through an eigendecomposition (the
// anti-Hermitian branch is exactly unitary by construction); anything else
// falls back to scaling-and-squaring.
OperatorMatrix matrix_exp(const OperatorMatrix& a);
Matrix matrix_exp(const Matrix& a);

StateVector apply(const OperatorMatrix& op, const StateVector& psi);

double expectation(const StateVector& psi, const OperatorMatrix& obs);
double expectation(const DensityMatrix& rho, const OperatorMatrix& obs);

// |<a|b>|^2
double overlap(const StateVector& a, const StateVector& b);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns
};

// Exact diagonalization of a Hermitian matrix; the oracle used throughout.
EigenSystem exact_diagonalize(const Matrix& h, double herm_tol = 1e-8);

}  // namespace qumvqd
