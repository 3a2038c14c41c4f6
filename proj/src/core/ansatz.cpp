#include "core/ansatz.hpp"

#include <cmath>

namespace qumvqd {

namespace {

// v <- diag(phases) v on one mode, phases indexed by that mode's occupation
void apply_mode_diag(const FockSpace& sp, int mode, const Vector& diag,
                     Vector& v) {
  const std::int64_t s = sp.stride(mode);
  const int d = sp.cutoff;
  for (std::int64_t i = 0; i < v.size(); ++i)
    v[i] *= diag[static_cast<int>((i / s) % d)];
}

// v <- (M on `mode`) v via strided fibers
void apply_mode_dense(const FockSpace& sp, int mode, const Matrix& m,
                      Vector& v) {
  const int d = sp.cutoff;
  if (v.size() == d) {  // single mode
    v = m * v;
    return;
  }
  const std::int64_t s = sp.stride(mode);
  const std::int64_t block = s * d;
  Vector fiber(d), out(d);
  for (std::int64_t base = 0; base < v.size(); base += block)
    for (std::int64_t o = 0; o < s; ++o) {
      const std::int64_t start = base + o;
      for (int t = 0; t < d; ++t) fiber[t] = v[start + t * s];
      out.noalias() = m * fiber;
      for (int t = 0; t < d; ++t) v[start + t * s] = out[t];
    }
}

// out <- (b† - b) v on one mode
Vector apply_mode_k(const FockSpace& sp, int mode, const Vector& v) {
  const std::int64_t s = sp.stride(mode);
  const int d = sp.cutoff;
  Vector out = Vector::Zero(v.size());
  for (std::int64_t i = 0; i < v.size(); ++i) {
    const int n = static_cast<int>((i / s) % d);
    if (n + 1 < d) out[i + s] += std::sqrt(double(n + 1)) * v[i];
    if (n >= 1) out[i - s] -= std::sqrt(double(n)) * v[i];
  }
  return out;
}

// out <- i (b† + b) v on one mode
Vector apply_mode_j(const FockSpace& sp, int mode, const Vector& v) {
  const std::int64_t s = sp.stride(mode);
  const int d = sp.cutoff;
  Vector out = Vector::Zero(v.size());
  for (std::int64_t i = 0; i < v.size(); ++i) {
    const int n = static_cast<int>((i / s) % d);
    if (n + 1 < d) out[i + s] += Complex(0, std::sqrt(double(n + 1))) * v[i];
    if (n >= 1) out[i - s] += Complex(0, std::sqrt(double(n))) * v[i];
  }
  return out;
}

// v <- n̂ v on one mode
Vector number_scaled(const FockSpace& sp, int mode, const Vector& v) {
  const std::int64_t s = sp.stride(mode);
  const int d = sp.cutoff;
  Vector out = v;
  for (std::int64_t i = 0; i < out.size(); ++i)
    out[i] *= double((i / s) % d);
  return out;
}

Complex divided_exp(Complex a, Complex b) {
  // (e^a - e^b)/(a - b), stable near coincident eigenvalues
  Complex diff = a - b;
  if (std::abs(diff) < 1e-8) return std::exp(0.5 * (a + b));
  return (std::exp(a) - std::exp(b)) / diff;
}

}  // namespace

AnsatzSpec AnsatzSpec::make(const FockSpace& space, int depth) {
  require(depth >= 0, ErrorCode::Argument, "ansatz depth must be >= 0");
  return AnsatzSpec{space, depth, space.num_modes > 1};
}

std::int64_t AnsatzSpec::params_per_layer() const {
  const std::int64_t n = space.num_modes;
  std::int64_t per = n * (space.cutoff + 2);
  if (all_to_all_bs) per += n * (n - 1);  // (beta, phi) per pair
  return per;
}

std::int64_t AnsatzSpec::num_parameters() const {
  return depth * params_per_layer();
}

DenseBackend::DenseBackend(const DenseHamiltonian& h, const FockSpace& space)
    : space_(space) {
  h.check_consistent();
  require(h.dimension() <= space.total_dim, ErrorCode::Argument,
          "Hamiltonian dimension exceeds the register dimension");
  embedded_ = Matrix::Zero(space.total_dim, space.total_dim);
  embedded_.topLeftCorner(h.dimension(), h.dimension()) = h.matrix;
  descriptor_ = "dense[" + (h.source.empty() ? "matrix" : h.source) + ", dim=" +
                std::to_string(h.dimension()) + "]";
}

double DenseBackend::energy(const Vector& psi) const {
  return psi.dot(embedded_ * psi).real();
}

void DenseBackend::apply_hamiltonian(const Vector& psi, Vector& hpsi) const {
  hpsi.noalias() = embedded_ * psi;
}

FragmentBackend::FragmentBackend(const FragmentSet& fs) : space_(fs.space()) {
  fs.check_shapes();
  u_dagger_.reserve(fs.fragments.size());
  diag_.reserve(fs.fragments.size());
  for (const Fragment& f : fs.fragments) {
    u_dagger_.push_back(fragment_unitary(f, space_).matrix.adjoint());
    diag_.push_back(f.diag);
  }
  descriptor_ = "fragments[k=" + std::to_string(fs.fragments.size()) +
                ", dim=" + std::to_string(space_.total_dim) + "]";
}

double FragmentBackend::fragment_energy(std::size_t k,
                                        const Vector& psi) const {
  Vector rotated = u_dagger_[k] * psi;
  double e = 0.0;
  for (std::int64_t i = 0; i < rotated.size(); ++i)
    e += diag_[k][i] * std::norm(rotated[i]);
  return e;
}

double FragmentBackend::energy(const Vector& psi) const {
  // fixed-order reduction; keeps results identical across thread counts
  double e = 0.0;
  for (std::size_t k = 0; k < u_dagger_.size(); ++k)
    e += fragment_energy(k, psi);
  return e;
}

void FragmentBackend::apply_hamiltonian(const Vector& psi,
                                        Vector& hpsi) const {
  hpsi = Vector::Zero(psi.size());
  Vector rotated(psi.size());
  for (std::size_t k = 0; k < u_dagger_.size(); ++k) {
    rotated.noalias() = u_dagger_[k] * psi;
    for (std::int64_t i = 0; i < rotated.size(); ++i)
      rotated[i] *= diag_[k][i];
    hpsi.noalias() += u_dagger_[k].adjoint() * rotated;
  }
}

struct CircuitEvaluator::BsTape {
  Matrix v;               // eigenvectors of i G
  Eigen::VectorXd lambda; // eigenvalues of i G
  int p = 0, q = 0;
  double beta = 0.0, phi = 0.0;
};

struct CircuitEvaluator::Tape {
  // state before each gate, in application order; plus per-gate extras
  std::vector<Vector> pre;
  std::vector<std::shared_ptr<BsTape>> bs;
};

CircuitEvaluator::CircuitEvaluator(const AnsatzSpec& spec) : spec_(spec) {
  const int d = spec.space.cutoff;
  Matrix k = lowering_matrix(d);
  Matrix hm = Complex(0, 1) * (k.adjoint() - k);  // i(b† - b), Hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(hm);
  disp_v_ = es.eigenvectors();
  disp_vh_ = disp_v_.adjoint();
  disp_lambda_ = es.eigenvalues();
}

Vector CircuitEvaluator::forward(const Eigen::VectorXd& params,
                                 Tape* tape) const {
  require(params.size() == num_parameters(), ErrorCode::Argument,
          "expected " + std::to_string(num_parameters()) +
              " ansatz parameters, got " + std::to_string(params.size()));
  require(params.allFinite(), ErrorCode::Argument,
          "ansatz parameters must be finite");
  const FockSpace& sp = spec_.space;
  const int n = sp.num_modes;
  const int d = sp.cutoff;

  Vector v = Vector::Zero(sp.total_dim);
  v[0] = 1.0;

  std::int64_t off = 0;
  for (int layer = 0; layer < spec_.depth; ++layer) {
    // SNAP sub-layer
    for (int m = 0; m < n; ++m) {
      if (tape) {
        tape->pre.push_back(v);
        tape->bs.push_back(nullptr);
      }
      Vector phases(d);
      for (int l = 0; l < d; ++l)
        phases[l] = std::exp(Complex(0, params[off + l]));
      apply_mode_diag(sp, m, phases, v);
      off += d;
    }
    // displacement sub-layer: D = R(th) V e^{-i r lam} V† R(th)†
    for (int m = 0; m < n; ++m) {
      if (tape) {
        tape->pre.push_back(v);
        tape->bs.push_back(nullptr);
      }
      const double x = params[off], y = params[off + 1];
      const double r = std::hypot(x, y);
      const double th = (r == 0.0) ? 0.0 : std::atan2(y, x);
      Vector rot(d), mid(d);
      for (int l = 0; l < d; ++l) rot[l] = std::exp(Complex(0, -th * l));
      for (int l = 0; l < d; ++l)
        mid[l] = std::exp(Complex(0, -r * disp_lambda_[l]));
      apply_mode_diag(sp, m, rot, v);
      apply_mode_dense(sp, m, disp_vh_, v);
      apply_mode_diag(sp, m, mid, v);
      apply_mode_dense(sp, m, disp_v_, v);
      for (int l = 0; l < d; ++l) rot[l] = std::conj(rot[l]);
      apply_mode_diag(sp, m, rot, v);
      off += 2;
    }
    // beam-splitter sub-layer, pairs ascending (q, then p)
    if (spec_.all_to_all_bs) {
      for (int q = 0; q < n; ++q)
        for (int p = q + 1; p < n; ++p) {
          const double beta = params[off], phi = params[off + 1];
          Matrix hop = hopping_op(sp, p, q);
          Matrix gen = Complex(0, beta / 2.0) *
                       (std::exp(Complex(0, phi)) * hop +
                        std::exp(Complex(0, -phi)) * hop.adjoint());
          Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, 1) * gen);
          if (tape) {
            auto bt = std::make_shared<BsTape>();
            bt->v = es.eigenvectors();
            bt->lambda = es.eigenvalues();
            bt->p = p;
            bt->q = q;
            bt->beta = beta;
            bt->phi = phi;
            tape->pre.push_back(v);
            tape->bs.push_back(bt);
            Vector tmp = bt->v.adjoint() * v;
            for (std::int64_t l = 0; l < tmp.size(); ++l)
              tmp[l] *= std::exp(Complex(0, -bt->lambda[l]));
            v.noalias() = bt->v * tmp;
          } else {
            Vector tmp = es.eigenvectors().adjoint() * v;
            for (std::int64_t l = 0; l < tmp.size(); ++l)
              tmp[l] *= std::exp(Complex(0, -es.eigenvalues()[l]));
            v.noalias() = es.eigenvectors() * tmp;
          }
          off += 2;
        }
    }
  }
  return v;
}

StateVector CircuitEvaluator::prepare(const Eigen::VectorXd& params) const {
  StateVector psi{spec_.space, forward(params, nullptr)};
  psi.check_normalized(1e-10);
  return psi;
}

double CircuitEvaluator::cost(const Eigen::VectorXd& params,
                              const EnergyBackend& backend,
                              std::span<const DeflationTerm> deflation) const {
  require(backend.space() == spec_.space, ErrorCode::Argument,
          "backend space does not match the ansatz space");
  Vector psi = forward(params, nullptr);
  double c = backend.energy(psi);
  for (const auto& defl : deflation)
    c += defl.beta * std::norm(defl.state.dot(psi));
  return c;
}

double CircuitEvaluator::cost_and_grad(
    const Eigen::VectorXd& params, const EnergyBackend& backend,
    std::span<const DeflationTerm> deflation, Eigen::VectorXd& grad) const {
  require(backend.space() == spec_.space, ErrorCode::Argument,
          "backend space does not match the ansatz space");
  const FockSpace& sp = spec_.space;
  const int n = sp.num_modes;
  const int d = sp.cutoff;

  Tape tape;
  const int gates_per_layer =
      2 * n + (spec_.all_to_all_bs ? n * (n - 1) / 2 : 0);
  tape.pre.reserve(spec_.depth * gates_per_layer);
  Vector psi = forward(params, &tape);

  double cost = backend.energy(psi);
  Vector costate(psi.size());
  backend.apply_hamiltonian(psi, costate);
  for (const auto& defl : deflation) {
    const Complex ov = defl.state.dot(psi);  // <chi|psi>
    cost += defl.beta * std::norm(ov);
    costate.noalias() += defl.beta * ov * defl.state;
  }

  grad.resize(params.size());
  // walk gates in reverse; phi satisfies dC = 2 Re <phi|d psi>
  Vector phi = costate;
  std::int64_t off = params.size();
  int g = static_cast<int>(tape.pre.size());
  for (int layer = spec_.depth - 1; layer >= 0; --layer) {
    if (spec_.all_to_all_bs) {
      for (int q = n - 1; q >= 0; --q)
        for (int p = n - 1; p > q; --p) {
          --g;
          off -= 2;
          const BsTape& bt = *tape.bs[g];
          const Vector& pre = tape.pre[g];
          // grad via the Daleckii-Krein divided-difference kernel:
          // <phi|dU|psi> = sum_ab E_ab M_ab with M = conj(V) W V^T,
          // W_mn = k(mu_m, mu_n) conj(phit_m) psit_n, mu = -i lambda
          Vector phit = bt.v.adjoint() * phi;
          Vector psit = bt.v.adjoint() * pre;
          const std::int64_t dim = psit.size();
          Matrix w(dim, dim);
          for (std::int64_t a = 0; a < dim; ++a)
            for (std::int64_t b = 0; b < dim; ++b)
              w(a, b) = divided_exp(Complex(0, -bt.lambda[a]),
                                    Complex(0, -bt.lambda[b])) *
                        std::conj(phit[a]) * psit[b];
          Matrix m = bt.v.conjugate() * w * bt.v.transpose();
          // contract against the sparse structure of hop = b†_p b_q
          const std::int64_t spp = sp.stride(bt.p), sq = sp.stride(bt.q);
          Complex s_pq = 0, s_qp = 0;
          for (std::int64_t col = 0; col < dim; ++col) {
            const int np = static_cast<int>((col / spp) % d);
            const int nq = static_cast<int>((col / sq) % d);
            if (nq == 0 || np == d - 1) continue;
            const std::int64_t row = col + spp - sq;
            const double val =
                std::sqrt(double(np + 1)) * std::sqrt(double(nq));
            s_pq += val * m(row, col);
            s_qp += val * m(col, row);
          }
          const Complex eip = std::exp(Complex(0, bt.phi));
          const Complex dbeta =
              Complex(0, 0.5) * (eip * s_pq + std::conj(eip) * s_qp);
          const Complex dphi =
              -0.5 * bt.beta * (eip * s_pq - std::conj(eip) * s_qp);
          grad[off] = 2.0 * dbeta.real();
          grad[off + 1] = 2.0 * dphi.real();
          // phi <- U† phi
          Vector tmp = bt.v.adjoint() * phi;
          for (std::int64_t l = 0; l < tmp.size(); ++l)
            tmp[l] *= std::exp(Complex(0, bt.lambda[l]));
          phi.noalias() = bt.v * tmp;
        }
    }
    // displacement sub-layer
    for (int m = n - 1; m >= 0; --m) {
      --g;
      off -= 2;
      const Vector& pre = tape.pre[g];
      const double x = params[off], y = params[off + 1];
      const double r = std::hypot(x, y);
      if (r < 1e-9) {
        // D ≈ I here; derivative directions are the generators themselves
        Vector kv = apply_mode_k(sp, m, pre);
        Vector jv = apply_mode_j(sp, m, pre);
        grad[off] = 2.0 * phi.dot(kv).real();
        grad[off + 1] = 2.0 * phi.dot(jv).real();
        continue;  // gate is the identity to first order; phi unchanged
      }
      const double th = std::atan2(y, x);
      const int dd = d;
      Vector rot(dd), rotc(dd), mid(dd), midc(dd), dmid(dd);
      for (int l = 0; l < dd; ++l) {
        rot[l] = std::exp(Complex(0, -th * l));
        rotc[l] = std::conj(rot[l]);
        mid[l] = std::exp(Complex(0, -r * disp_lambda_[l]));
        midc[l] = std::conj(mid[l]);
        dmid[l] = Complex(0, -disp_lambda_[l]) * mid[l];
      }
      // post state (recompute D pre)
      Vector post = pre;
      apply_mode_diag(sp, m, rot, post);
      apply_mode_dense(sp, m, disp_vh_, post);
      Vector core = post;  // V† R† pre, reused for d/dr
      apply_mode_diag(sp, m, mid, post);
      apply_mode_dense(sp, m, disp_v_, post);
      apply_mode_diag(sp, m, rotc, post);
      // u1 = dD/dr pre
      Vector u1 = core;
      apply_mode_diag(sp, m, dmid, u1);
      apply_mode_dense(sp, m, disp_v_, u1);
      apply_mode_diag(sp, m, rotc, u1);
      // u2 = dD/dth pre = i (n̂ post - D (n̂ pre))
      Vector npre = number_scaled(sp, m, pre);
      apply_mode_diag(sp, m, rot, npre);
      apply_mode_dense(sp, m, disp_vh_, npre);
      apply_mode_diag(sp, m, mid, npre);
      apply_mode_dense(sp, m, disp_v_, npre);
      apply_mode_diag(sp, m, rotc, npre);
      Vector u2 =
          Complex(0, 1) * (number_scaled(sp, m, post) - npre);
      const double gr = 2.0 * phi.dot(u1).real();
      const double gth = 2.0 * phi.dot(u2).real();
      const double c = std::cos(th), s = std::sin(th);
      grad[off] = c * gr - (s / r) * gth;
      grad[off + 1] = s * gr + (c / r) * gth;
      // phi <- D† phi
      apply_mode_diag(sp, m, rot, phi);
      apply_mode_dense(sp, m, disp_vh_, phi);
      apply_mode_diag(sp, m, midc, phi);
      apply_mode_dense(sp, m, disp_v_, phi);
      apply_mode_diag(sp, m, rotc, phi);
    }
    // SNAP sub-layer
    for (int m = n - 1; m >= 0; --m) {
      --g;
      off -= d;
      const Vector& pre = tape.pre[g];
      const std::int64_t s = sp.stride(m);
      Vector acc = Vector::Zero(d);
      for (std::int64_t i = 0; i < pre.size(); ++i)
        acc[static_cast<int>((i / s) % d)] += std::conj(phi[i]) * pre[i];
      Vector conj_phases(d);
      for (int l = 0; l < d; ++l) {
        const Complex eith = std::exp(Complex(0, params[off + l]));
        grad[off + l] = -2.0 * (eith * acc[l]).imag();
        conj_phases[l] = std::conj(eith);
      }
      apply_mode_diag(sp, m, conj_phases, phi);
    }
  }
  return cost;
}

std::vector<GateSpec> CircuitEvaluator::to_circuit(
    const Eigen::VectorXd& params) const {
  require(params.size() == num_parameters(), ErrorCode::Argument,
          "parameter count does not match the ansatz");
  const int n = spec_.space.num_modes;
  const int d = spec_.space.cutoff;
  std::vector<GateSpec> circuit;
  std::int64_t off = 0;
  for (int layer = 0; layer < spec_.depth; ++layer) {
    for (int m = 0; m < n; ++m) {
      GateSpec gs{GateKind::Snap, {m, 0}, {}};
      gs.params.assign(params.data() + off, params.data() + off + d);
      circuit.push_back(std::move(gs));
      off += d;
    }
    for (int m = 0; m < n; ++m) {
      circuit.push_back(
          GateSpec{GateKind::Displacement, {m, 0},
                   {params[off], params[off + 1]}});
      off += 2;
    }
    if (spec_.all_to_all_bs)
      for (int q = 0; q < n; ++q)
        for (int p = q + 1; p < n; ++p) {
          circuit.push_back(GateSpec{GateKind::BeamSplitter, {p, q},
                                     {params[off], params[off + 1]}});
          off += 2;
        }
  }
  return circuit;
}

}  // namespace qumvqd
