#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/fock.hpp"

namespace qumvqd {

// Second-quantized fermionic Hamiltonian: sum of coefficient * operator
// strings. An empty operator string is the identity (constant shift).
struct FermionicHamiltonian {
  struct Op {
    int orbital = 0;
    bool dagger = false;
  };
  struct Term {
    double coeff = 0.0;
    std::vector<Op> ops;  // operator product, leftmost factor applied last
  };
  int num_spin_orbitals = 0;
  std::vector<Term> terms;
  std::string system;
  std::string geometry;
};

// Hermitian matrix over a (possibly symmetry-restricted) basis. basis_labels
// keeps the original 2^M Fock indices after filtering.
struct DenseHamiltonian {
  Matrix matrix;
  std::vector<std::uint64_t> basis_labels;
  int num_spin_orbitals = 0;  // M; 0 when not applicable
  int particle_number = -1;   // n_e; -1 when unrestricted
  std::string source;

  std::int64_t dimension() const { return matrix.rows(); }
  void check_consistent() const;
};

struct CompressionReport {
  int m = 0;
  int n_e = 0;
  int cutoff = 0;
  std::uint64_t full_dim = 0;        // 2^M
  std::uint64_t restricted_dim = 0;  // C(M, n_e)
  double ratio = 0.0;                // full / restricted
  int qumodes_full = 0;              // ceil(log_d 2^M)
  int qumodes_restricted = 0;        // ceil(log_d C(M, n_e))
};

int hamming_weight(std::uint64_t index);

// Exact binomial coefficient; errors if the value exceeds 64 bits.
std::uint64_t binomial_exact(int n, int k);

// Smallest q with d^q >= value.
int qumodes_for_dimension(std::uint64_t value, int d);

// Dense 2^M matrix under the Jordan-Wigner convention: bit j of the basis
// label is the occupation of spin orbital j, annihilation picks up the
// parity of the bits below j.
DenseHamiltonian jordan_wigner_to_matrix(const FermionicHamiltonian& h);

// Restriction to the fixed Hamming-weight sector, basis labels ascending.
// Errors if any matrix element couples different weights beyond 1e-10;
// smaller off-sector elements are dropped as assembly noise.
DenseHamiltonian filter_by_particle_number(const DenseHamiltonian& h,
                                           int n_e);

CompressionReport compression_report(int m, int n_e, int d);

// sqrt(2/(pi M)) * 2^M, the Stirling estimate of the central binomial.
double stirling_central_binomial(int m);

FermionicHamiltonian parse_electronic_hamiltonian(const std::string& path);
FermionicHamiltonian parse_electronic_hamiltonian_text(const std::string& text,
                                                       const std::string& origin);

}  // namespace qumvqd
