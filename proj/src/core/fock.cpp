#include "core/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace qumvqd {

namespace {
constexpr std::int64_t kMaxTotalDim = 65536;  // d^N cap for dense storage
}

FockSpace FockSpace::make(int num_modes, int cutoff) {
  require(num_modes >= 1, ErrorCode::Argument, "num_modes must be >= 1");
  require(cutoff >= 1, ErrorCode::Argument, "cutoff must be >= 1");
  std::int64_t dim = 1;
  for (int m = 0; m < num_modes; ++m) {
    dim *= cutoff;
    require(dim <= kMaxTotalDim, ErrorCode::Capacity,
            "d^N exceeds supported dense limit of 65536");
  }
  return FockSpace{num_modes, cutoff, dim};
}

std::int64_t FockSpace::stride(int mode) const {
  std::int64_t s = 1;
  for (int m = 0; m < mode; ++m) s *= cutoff;
  return s;
}

int FockSpace::occupation(std::int64_t index, int mode) const {
  return static_cast<int>((index / stride(mode)) % cutoff);
}

std::vector<int> FockSpace::occupations(std::int64_t index) const {
  std::vector<int> occ(num_modes);
  for (int m = 0; m < num_modes; ++m) {
    occ[m] = static_cast<int>(index % cutoff);
    index /= cutoff;
  }
  return occ;
}

StateVector StateVector::vacuum(const FockSpace& space) {
  return basis_state(space, 0);
}

StateVector StateVector::basis_state(const FockSpace& space,
                                     std::int64_t index) {
  require(index >= 0 && index < space.total_dim, ErrorCode::Argument,
          "basis index out of range");
  Vector v = Vector::Zero(space.total_dim);
  v[index] = 1.0;
  return StateVector{space, std::move(v)};
}

void StateVector::normalize() {
  double n = amplitudes.norm();
  require(n > 0.0, ErrorCode::Numerical, "cannot normalize the zero vector");
  amplitudes /= n;
}

void StateVector::check_normalized(double tol) const {
  require(std::abs(norm() - 1.0) < tol, ErrorCode::Numerical,
          "state vector is not normalized");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix{psi.space,
                       psi.amplitudes * psi.amplitudes.adjoint()};
}

void DensityMatrix::validate(double tol, double psd_tol) const {
  require(max_abs(matrix - matrix.adjoint()) < tol, ErrorCode::Numerical,
          "density matrix is not Hermitian");
  require(std::abs(matrix.trace().real() - 1.0) < tol &&
              std::abs(matrix.trace().imag()) < tol,
          ErrorCode::Numerical, "density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix,
                                           Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -psd_tol, ErrorCode::Numerical,
          "density matrix is not positive semidefinite");
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::plain(FockSpace space, Matrix m) {
  require(m.rows() == space.total_dim && m.cols() == space.total_dim,
          ErrorCode::Argument, "operator dimension does not match space");
  return OperatorMatrix{std::move(space), std::move(m), false, false};
}

OperatorMatrix OperatorMatrix::hermitian(FockSpace space, Matrix m) {
  OperatorMatrix op = plain(std::move(space), std::move(m));
  require(max_abs(op.matrix - op.matrix.adjoint()) < 1e-10,
          ErrorCode::Argument, "matrix tagged hermitian is not Hermitian");
  op.hermitian_flag = true;
  return op;
}

OperatorMatrix OperatorMatrix::unitary(FockSpace space, Matrix m) {
  OperatorMatrix op = plain(std::move(space), std::move(m));
  Matrix gram = op.matrix.adjoint() * op.matrix;
  gram.diagonal().array() -= 1.0;
  require(max_abs(gram) < 1e-8, ErrorCode::Argument,
          "matrix tagged unitary is not unitary");
  op.unitary_flag = true;
  if (max_abs(op.matrix - op.matrix.adjoint()) < 1e-10)
    op.hermitian_flag = true;
  return op;
}

OperatorMatrix OperatorMatrix::identity(const FockSpace& space) {
  OperatorMatrix op{space, Matrix::Identity(space.total_dim, space.total_dim),
                    true, true};
  return op;
}

OperatorMatrix OperatorMatrix::dagger() const {
  OperatorMatrix op{space, matrix.adjoint(), hermitian_flag, unitary_flag};
  return op;
}

Matrix embed_single_mode(const FockSpace& space, int mode,
                         const Matrix& local) {
  require(mode >= 0 && mode < space.num_modes, ErrorCode::Argument,
          "mode index out of range");
  require(local.rows() == space.cutoff && local.cols() == space.cutoff,
          ErrorCode::Argument, "local operator must be cutoff x cutoff");
  const std::int64_t dim = space.total_dim;
  const std::int64_t stride = space.stride(mode);
  const int d = space.cutoff;
  Matrix full = Matrix::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    int n = static_cast<int>((col / stride) % d);
    std::int64_t base = col - static_cast<std::int64_t>(n) * stride;
    for (int np = 0; np < d; ++np) {
      Complex v = local(np, n);
      if (v != 0.0) full(base + static_cast<std::int64_t>(np) * stride, col) = v;
    }
  }
  return full;
}

Matrix hopping_op(const FockSpace& space, int mode_j, int mode_k) {
  require(mode_j >= 0 && mode_j < space.num_modes && mode_k >= 0 &&
              mode_k < space.num_modes,
          ErrorCode::Argument, "mode index out of range");
  require(mode_j != mode_k, ErrorCode::Argument,
          "hopping requires two distinct modes");
  const std::int64_t dim = space.total_dim;
  const std::int64_t sj = space.stride(mode_j);
  const std::int64_t sk = space.stride(mode_k);
  const int d = space.cutoff;
  Matrix full = Matrix::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    int nj = static_cast<int>((col / sj) % d);
    int nk = static_cast<int>((col / sk) % d);
    if (nk == 0 || nj == d - 1) continue;
    std::int64_t row = col + sj - sk;
    full(row, col) = std::sqrt(static_cast<double>(nj + 1)) *
                     std::sqrt(static_cast<double>(nk));
  }
  return full;
}

Matrix lowering_matrix(int cutoff) {
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n)
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix number_matrix(int cutoff) {
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int i = 0; i < cutoff; ++i) n(i, i) = static_cast<double>(i);
  return n;
}

OperatorMatrix lowering_op(const FockSpace& space, int mode) {
  return OperatorMatrix::plain(
      space, embed_single_mode(space, mode, lowering_matrix(space.cutoff)));
}

OperatorMatrix raising_op(const FockSpace& space, int mode) {
  return OperatorMatrix::plain(
      space,
      embed_single_mode(space, mode, lowering_matrix(space.cutoff).adjoint()));
}

OperatorMatrix number_op(const FockSpace& space, int mode) {
  return OperatorMatrix::hermitian(
      space, embed_single_mode(space, mode, number_matrix(space.cutoff)));
}

OperatorMatrix total_number_op(const FockSpace& space) {
  Matrix total = Matrix::Zero(space.total_dim, space.total_dim);
  for (int m = 0; m < space.num_modes; ++m)
    total += embed_single_mode(space, m, number_matrix(space.cutoff));
  return OperatorMatrix::hermitian(space, std::move(total));
}

Matrix matrix_exp(const Matrix& a) {
  require(a.allFinite(), ErrorCode::Argument,
          "matrix exponential of non-finite input");
  require(a.rows() == a.cols(), ErrorCode::Argument,
          "matrix exponential requires a square matrix");
  const double scale = std::max(1.0, max_abs(a));
  const double tol = 1e-12 * scale;
  if (max_abs(a - a.adjoint()) < tol) {
    // Hermitian: e^A = V e^diag(w) V†
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Eigen::VectorXd w = es.eigenvalues();
    Matrix expw = w.array().exp().matrix().cast<Complex>().asDiagonal();
    return es.eigenvectors() * expw * es.eigenvectors().adjoint();
  }
  if (max_abs(a + a.adjoint()) < tol) {
    // anti-Hermitian: diagonalize iA (Hermitian), phases stay unimodular so
    // the result is unitary by construction
    Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, 1) * a);
    Eigen::VectorXd w = es.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
      phases[i] = std::exp(Complex(0, -w[i]));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }
  return a.exp();  // scaling-and-squaring
}

OperatorMatrix matrix_exp(const OperatorMatrix& a) {
  require(a.matrix.allFinite(), ErrorCode::Argument,
          "matrix exponential of non-finite input");
  const double scale = std::max(1.0, max_abs(a.matrix));
  const double tol = 1e-12 * scale;
  Matrix result = matrix_exp(a.matrix);
  bool anti_hermitian = max_abs(a.matrix + a.matrix.adjoint()) < tol;
  if (anti_hermitian) return OperatorMatrix::unitary(a.space, std::move(result));
  if (a.hermitian_flag) return OperatorMatrix::hermitian(a.space, std::move(result));
  return OperatorMatrix::plain(a.space, std::move(result));
}

StateVector apply(const OperatorMatrix& op, const StateVector& psi) {
  require(op.space == psi.space, ErrorCode::Argument,
          "operator and state live in different spaces");
  return StateVector{psi.space, op.matrix * psi.amplitudes};
}

namespace {
double real_checked(Complex value, double scale) {
  require(std::abs(value.imag()) < 1e-9 * std::max(1.0, scale),
          ErrorCode::Numerical,
          "expectation value has a non-negligible imaginary part");
  return value.real();
}
}  // namespace

double expectation(const StateVector& psi, const OperatorMatrix& obs) {
  require(obs.hermitian_flag, ErrorCode::Argument,
          "expectation requires a Hermitian observable");
  require(psi.space == obs.space, ErrorCode::Argument,
          "state and observable live in different spaces");
  Complex v = psi.amplitudes.dot(obs.matrix * psi.amplitudes);
  return real_checked(v, max_abs(obs.matrix));
}

double expectation(const DensityMatrix& rho, const OperatorMatrix& obs) {
  require(obs.hermitian_flag, ErrorCode::Argument,
          "expectation requires a Hermitian observable");
  require(rho.space == obs.space, ErrorCode::Argument,
          "state and observable live in different spaces");
  Complex v = (rho.matrix * obs.matrix).trace();
  return real_checked(v, max_abs(obs.matrix));
}

double overlap(const StateVector& a, const StateVector& b) {
  require(a.space == b.space, ErrorCode::Argument,
          "overlap of states in different spaces");
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

EigenSystem exact_diagonalize(const Matrix& h, double herm_tol) {
  require(h.rows() == h.cols(), ErrorCode::Argument,
          "diagonalization requires a square matrix");
  require(h.allFinite(), ErrorCode::Argument,
          "diagonalization of non-finite input");
  double dev = max_abs(h - h.adjoint());
  require(dev < herm_tol * std::max(1.0, max_abs(h)), ErrorCode::Argument,
          "matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  require(es.info() == Eigen::Success, ErrorCode::Numerical,
          "eigendecomposition failed to converge");
  return EigenSystem{es.eigenvalues(), es.eigenvectors()};
}

}  // namespace qumvqd
