#include "core/fragments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/gates.hpp"

namespace qumvqd {

void FragmentSet::check_shapes() const {
  const FockSpace sp = space();
  const int n = num_modes;
  for (std::size_t k = 0; k < fragments.size(); ++k) {
    const Fragment& f = fragments[k];
    const std::string where = "fragment " + std::to_string(k);
    require(f.gammas.size() == n, ErrorCode::Argument,
            where + ": gamma must have N entries");
    require(f.phis.rows() == n && f.phis.cols() == n, ErrorCode::Argument,
            where + ": phi must be N x N");
    require(f.zetas.size() == n, ErrorCode::Argument,
            where + ": zeta must have N entries");
    require(f.chis.rows() == n && f.chis.cols() == n, ErrorCode::Argument,
            where + ": chi must be N x N");
    require(f.diag.size() == sp.total_dim, ErrorCode::Argument,
            where + ": diag must have d^N entries");
    require(f.diag.allFinite() && f.gammas.allFinite() &&
                f.phis.allFinite() && f.zetas.allFinite() &&
                f.chis.allFinite(),
            ErrorCode::Argument, where + ": non-finite parameter");
  }
}

OperatorMatrix fragment_unitary(const Fragment& f, const FockSpace& space) {
  const int n = space.num_modes;
  require(f.gammas.size() == n && f.zetas.size() == n &&
              f.phis.rows() == n && f.chis.rows() == n &&
              f.diag.size() == space.total_dim,
          ErrorCode::Argument, "fragment shapes do not match the space");

  Matrix u = Matrix::Identity(space.total_dim, space.total_dim);
  // product as written, rightmost factor first: χ BS layer, squeezes,
  // φ BS layer, displacements. Pairs within a layer go in ascending
  // (q, then p) order.
  auto apply_bs_layer = [&](const Eigen::MatrixXd& angles) {
    for (int q = 0; q < n; ++q)
      for (int p = q + 1; p < n; ++p)
        u = beamsplitter_gate(space, p, q, 2.0 * angles(p, q), M_PI / 2)
                .matrix *
            u;
  };
  apply_bs_layer(f.chis);
  for (int p = 0; p < n; ++p)
    u = squeeze_gate(space, p, f.zetas[p], 0.0).matrix * u;
  apply_bs_layer(f.phis);
  for (int p = 0; p < n; ++p)
    u = displacement_gate(space, p, f.gammas[p]).matrix * u;
  return OperatorMatrix::unitary(space, std::move(u));
}

double fragment_expectation(const Fragment& f, const StateVector& psi) {
  OperatorMatrix u = fragment_unitary(f, psi.space);
  Vector rotated = u.matrix.adjoint() * psi.amplitudes;
  double e = 0.0;
  for (std::int64_t i = 0; i < rotated.size(); ++i)
    e += f.diag[i] * std::norm(rotated[i]);
  return e;
}

DenseHamiltonian reconstruct_hamiltonian(const FragmentSet& fs) {
  fs.check_shapes();
  const FockSpace space = fs.space();
  Matrix h = Matrix::Zero(space.total_dim, space.total_dim);
  for (const Fragment& f : fs.fragments) {
    Matrix u = fragment_unitary(f, space).matrix;
    h += u * f.diag.cast<Complex>().asDiagonal() * u.adjoint();
  }
  require(max_abs(h - h.adjoint()) < 1e-8 * std::max(1.0, max_abs(h)),
          ErrorCode::InputInconsistency,
          "fragment reconstruction is not Hermitian");

  DenseHamiltonian out;
  out.matrix = std::move(h);
  out.basis_labels.resize(space.total_dim);
  for (std::int64_t i = 0; i < space.total_dim; ++i)
    out.basis_labels[i] = static_cast<std::uint64_t>(i);
  out.source = "fragment reconstruction";
  return out;
}

GateCountReport count_gates(const FragmentSet& fs, int depth) {
  require(depth >= 0, ErrorCode::Argument, "depth must be >= 0");
  const int n = fs.num_modes;
  const int f = static_cast<int>(fs.fragments.size());
  GateCountReport r;
  r.num_modes = n;
  r.num_fragments = f;
  r.depth = depth;
  r.fragment_displacement = n;
  r.fragment_squeeze = n;
  r.fragment_bs_per_qumode = 2 * (n - 1);
  r.fragment_bs = n * (n - 1);
  r.ansatz_per_type = depth;
  r.circuit_displacement = r.fragment_displacement + depth;
  r.circuit_squeeze = r.fragment_squeeze + depth;
  r.circuit_bs = r.fragment_bs + depth;
  r.total_displacement = static_cast<long long>(f) * r.circuit_displacement;
  r.total_squeeze = static_cast<long long>(f) * r.circuit_squeeze;
  r.total_bs = static_cast<long long>(f) * r.circuit_bs;
  return r;
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin,
                             const std::string& where,
                             const std::string& what) {
  fail(ErrorCode::Parse, origin + ": " + where + ": " + what);
}

Eigen::MatrixXd read_real_matrix(const json& j, int n,
                                 const std::string& origin,
                                 const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    parse_fail(origin, where, "expected an N x N array");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      parse_fail(origin, where + "[" + std::to_string(r) + "]",
                 "expected N entries");
    for (int c = 0; c < n; ++c) {
      if (!row[c].is_number())
        parse_fail(origin, where + "[" + std::to_string(r) + "]",
                   "expected numbers");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

}  // namespace

FragmentSet parse_fragment_set_text(const std::string& text,
                                    const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, origin + ": " + e.what());
  }
  if (!j.is_object()) parse_fail(origin, "$", "expected a JSON object");
  FragmentSet fs;
  if (!j.contains("num_modes") || !j["num_modes"].is_number_integer())
    parse_fail(origin, "num_modes", "missing or not an integer");
  if (!j.contains("cutoff") || !j["cutoff"].is_number_integer())
    parse_fail(origin, "cutoff", "missing or not an integer");
  fs.num_modes = j["num_modes"].get<int>();
  fs.cutoff = j["cutoff"].get<int>();
  if (fs.num_modes < 1) parse_fail(origin, "num_modes", "must be >= 1");
  if (fs.cutoff < 2) parse_fail(origin, "cutoff", "must be >= 2");
  if (!j.contains("fragments") || !j["fragments"].is_array())
    parse_fail(origin, "fragments", "missing or not an array");

  const int n = fs.num_modes;
  const std::int64_t dim = fs.space().total_dim;
  std::size_t idx = 0;
  for (const auto& fj : j["fragments"]) {
    const std::string where = "fragments[" + std::to_string(idx) + "]";
    if (!fj.is_object()) parse_fail(origin, where, "expected an object");
    Fragment f;
    if (!fj.contains("gamma") || !fj["gamma"].is_array() ||
        static_cast<int>(fj["gamma"].size()) != n)
      parse_fail(origin, where + ".gamma", "expected N [re, im] pairs");
    f.gammas.resize(n);
    for (int p = 0; p < n; ++p) {
      const auto& g = fj["gamma"][p];
      if (!g.is_array() || g.size() != 2 || !g[0].is_number() ||
          !g[1].is_number())
        parse_fail(origin, where + ".gamma[" + std::to_string(p) + "]",
                   "expected [re, im]");
      f.gammas[p] = Complex(g[0].get<double>(), g[1].get<double>());
    }
    if (!fj.contains("phi"))
      parse_fail(origin, where + ".phi", "missing");
    f.phis = read_real_matrix(fj["phi"], n, origin, where + ".phi");
    if (!fj.contains("zeta") || !fj["zeta"].is_array() ||
        static_cast<int>(fj["zeta"].size()) != n)
      parse_fail(origin, where + ".zeta", "expected N numbers");
    f.zetas.resize(n);
    for (int p = 0; p < n; ++p) {
      if (!fj["zeta"][p].is_number())
        parse_fail(origin, where + ".zeta", "expected numbers");
      f.zetas[p] = fj["zeta"][p].get<double>();
    }
    if (!fj.contains("chi"))
      parse_fail(origin, where + ".chi", "missing");
    f.chis = read_real_matrix(fj["chi"], n, origin, where + ".chi");
    if (!fj.contains("diag") || !fj["diag"].is_array() ||
        static_cast<std::int64_t>(fj["diag"].size()) != dim)
      parse_fail(origin, where + ".diag", "expected d^N numbers");
    f.diag.resize(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      if (!fj["diag"][i].is_number())
        parse_fail(origin, where + ".diag", "expected numbers");
      f.diag[i] = fj["diag"][i].get<double>();
      if (!std::isfinite(f.diag[i]))
        parse_fail(origin, where + ".diag", "entries must be finite");
    }
    fs.fragments.push_back(std::move(f));
    ++idx;
  }
  fs.check_shapes();
  return fs;
}

FragmentSet parse_fragment_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fragment_set_text(ss.str(), path);
}

}  // namespace qumvqd
