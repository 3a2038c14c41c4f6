#include "core/electronic.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qumvqd {

namespace {
constexpr int kMaxDenseOrbitals = 14;  // dense 2^M construction cap
constexpr double kSymmetryTol = 1e-10;
}  // namespace

void DenseHamiltonian::check_consistent() const {
  require(matrix.rows() == matrix.cols(), ErrorCode::Argument,
          "Hamiltonian matrix must be square");
  require(static_cast<std::int64_t>(basis_labels.size()) == matrix.rows(),
          ErrorCode::Argument,
          "basis label count does not match matrix dimension");
  require(max_abs(matrix - matrix.adjoint()) < 1e-10 *
              std::max(1.0, max_abs(matrix)),
          ErrorCode::Argument, "Hamiltonian is not Hermitian");
}

int hamming_weight(std::uint64_t index) { return std::popcount(index); }

std::uint64_t binomial_exact(int n, int k) {
  require(n >= 0 && k >= 0 && k <= n, ErrorCode::Argument,
          "binomial requires 0 <= k <= n");
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    require(c <= static_cast<unsigned __int128>(UINT64_MAX),
            ErrorCode::Capacity, "binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

int qumodes_for_dimension(std::uint64_t value, int d) {
  require(d >= 2, ErrorCode::Argument, "cutoff must be >= 2");
  require(value >= 1, ErrorCode::Argument, "dimension must be >= 1");
  int q = 0;
  unsigned __int128 cap = 1;
  while (cap < value) {
    cap *= static_cast<unsigned>(d);
    ++q;
  }
  return q;
}

DenseHamiltonian jordan_wigner_to_matrix(const FermionicHamiltonian& h) {
  const int m = h.num_spin_orbitals;
  require(m >= 1, ErrorCode::Argument, "need at least one spin orbital");
  require(m <= kMaxDenseOrbitals, ErrorCode::Capacity,
          "dense construction is capped at M <= 14 spin orbitals");
  const std::int64_t dim = std::int64_t{1} << m;
  Matrix mat = Matrix::Zero(dim, dim);

  for (const auto& term : h.terms) {
    require(std::isfinite(term.coeff), ErrorCode::Argument,
            "non-finite term coefficient");
    for (const auto& op : term.ops)
      require(op.orbital >= 0 && op.orbital < m, ErrorCode::Argument,
              "orbital index out of range");
    for (std::int64_t ket = 0; ket < dim; ++ket) {
      std::uint64_t state = static_cast<std::uint64_t>(ket);
      int sign = 1;
      bool alive = true;
      // rightmost factor acts first
      for (auto it = term.ops.rbegin(); it != term.ops.rend(); ++it) {
        const std::uint64_t bit = std::uint64_t{1} << it->orbital;
        const bool occupied = (state & bit) != 0;
        if (it->dagger == occupied) {  // create occupied / destroy empty
          alive = false;
          break;
        }
        const std::uint64_t below = state & (bit - 1);
        if (hamming_weight(below) % 2 == 1) sign = -sign;
        state ^= bit;
      }
      if (alive)
        mat(static_cast<std::int64_t>(state), ket) += term.coeff * sign;
    }
  }

  require(max_abs(mat - mat.adjoint()) <= 1e-10, ErrorCode::InputInconsistency,
          "term list does not assemble to a Hermitian matrix");

  DenseHamiltonian out;
  out.matrix = std::move(mat);
  out.basis_labels.resize(dim);
  for (std::int64_t i = 0; i < dim; ++i)
    out.basis_labels[i] = static_cast<std::uint64_t>(i);
  out.num_spin_orbitals = m;
  out.particle_number = -1;
  out.source = h.system.empty() ? "fermionic terms" : h.system;
  return out;
}

DenseHamiltonian filter_by_particle_number(const DenseHamiltonian& h,
                                           int n_e) {
  const int m = h.num_spin_orbitals;
  require(m >= 1, ErrorCode::Argument,
          "Hamiltonian carries no spin-orbital count");
  require(n_e >= 0 && n_e <= m, ErrorCode::Argument,
          "electron count must satisfy 0 <= n_e <= M");
  const std::int64_t full = std::int64_t{1} << m;
  require(h.dimension() == full, ErrorCode::Argument,
          "filtering expects the full 2^M basis");
  for (std::int64_t i = 0; i < full; ++i)
    require(h.basis_labels[i] == static_cast<std::uint64_t>(i),
            ErrorCode::Argument, "filtering expects the full 2^M basis");

  // H must not couple different particle-number sectors
  for (std::int64_t i = 0; i < full; ++i) {
    const int wi = hamming_weight(static_cast<std::uint64_t>(i));
    for (std::int64_t j = 0; j < full; ++j) {
      if (wi == hamming_weight(static_cast<std::uint64_t>(j))) continue;
      require(std::abs(h.matrix(i, j)) <= kSymmetryTol,
              ErrorCode::SymmetryViolation,
              "Hamiltonian does not conserve particle number (element " +
                  std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }

  std::vector<std::int64_t> keep;
  for (std::int64_t i = 0; i < full; ++i)
    if (hamming_weight(static_cast<std::uint64_t>(i)) == n_e)
      keep.push_back(i);

  DenseHamiltonian out;
  out.matrix = Matrix::Zero(keep.size(), keep.size());
  out.basis_labels.reserve(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.basis_labels.push_back(static_cast<std::uint64_t>(keep[a]));
    for (std::size_t b = 0; b < keep.size(); ++b)
      out.matrix(a, b) = h.matrix(keep[a], keep[b]);
  }
  out.num_spin_orbitals = m;
  out.particle_number = n_e;
  out.source = h.source;
  return out;
}

CompressionReport compression_report(int m, int n_e, int d) {
  require(m >= 1 && m <= 63, ErrorCode::Argument,
          "spin-orbital count must be in [1, 63]");
  require(n_e >= 0 && n_e <= m, ErrorCode::Argument,
          "electron count must satisfy 0 <= n_e <= M");
  require(d >= 2, ErrorCode::Argument, "cutoff must be >= 2");
  CompressionReport r;
  r.m = m;
  r.n_e = n_e;
  r.cutoff = d;
  r.full_dim = std::uint64_t{1} << m;
  r.restricted_dim = binomial_exact(m, n_e);
  r.ratio = static_cast<double>(r.full_dim) /
            static_cast<double>(r.restricted_dim);
  r.qumodes_full = qumodes_for_dimension(r.full_dim, d);
  r.qumodes_restricted = qumodes_for_dimension(r.restricted_dim, d);
  return r;
}

double stirling_central_binomial(int m) {
  require(m >= 2 && m % 2 == 0, ErrorCode::Argument,
          "Stirling estimate is for even M >= 2");
  return std::sqrt(2.0 / (M_PI * m)) * std::ldexp(1.0, m);
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin,
                             const std::string& where,
                             const std::string& what) {
  fail(ErrorCode::Parse, origin + ": " + where + ": " + what);
}

FermionicHamiltonian from_json(const json& j, const std::string& origin) {
  FermionicHamiltonian h;
  if (!j.is_object()) parse_fail(origin, "$", "expected a JSON object");
  if (!j.contains("num_spin_orbitals") ||
      !j["num_spin_orbitals"].is_number_integer())
    parse_fail(origin, "num_spin_orbitals", "missing or not an integer");
  h.num_spin_orbitals = j["num_spin_orbitals"].get<int>();
  if (h.num_spin_orbitals < 1)
    parse_fail(origin, "num_spin_orbitals", "must be >= 1");
  if (!j.contains("terms") || !j["terms"].is_array())
    parse_fail(origin, "terms", "missing or not an array");

  std::size_t t_idx = 0;
  for (const auto& t : j["terms"]) {
    const std::string where = "terms[" + std::to_string(t_idx) + "]";
    if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number())
      parse_fail(origin, where + ".coeff", "missing or not a number");
    FermionicHamiltonian::Term term;
    term.coeff = t["coeff"].get<double>();
    if (!std::isfinite(term.coeff))
      parse_fail(origin, where + ".coeff", "must be finite");
    if (!t.contains("ops") || !t["ops"].is_array())
      parse_fail(origin, where + ".ops", "missing or not an array");
    std::size_t o_idx = 0;
    for (const auto& o : t["ops"]) {
      const std::string ow = where + ".ops[" + std::to_string(o_idx) + "]";
      if (!o.is_object() || !o.contains("orbital") ||
          !o["orbital"].is_number_integer())
        parse_fail(origin, ow + ".orbital", "missing or not an integer");
      if (!o.contains("dagger") || !o["dagger"].is_boolean())
        parse_fail(origin, ow + ".dagger", "missing or not a boolean");
      FermionicHamiltonian::Op op;
      op.orbital = o["orbital"].get<int>();
      op.dagger = o["dagger"].get<bool>();
      if (op.orbital < 0 || op.orbital >= h.num_spin_orbitals)
        parse_fail(origin, ow + ".orbital",
                   "index " + std::to_string(op.orbital) +
                       " out of range for M = " +
                       std::to_string(h.num_spin_orbitals));
      term.ops.push_back(op);
      ++o_idx;
    }
    h.terms.push_back(std::move(term));
    ++t_idx;
  }
  if (j.contains("metadata") && j["metadata"].is_object()) {
    const auto& md = j["metadata"];
    if (md.contains("system") && md["system"].is_string())
      h.system = md["system"].get<std::string>();
    if (md.contains("geometry") && md["geometry"].is_string())
      h.geometry = md["geometry"].get<std::string>();
  }
  return h;
}

}  // namespace

FermionicHamiltonian parse_electronic_hamiltonian_text(
    const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, origin + ": " + e.what());
  }
  return from_json(j, origin);
}

FermionicHamiltonian parse_electronic_hamiltonian(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_electronic_hamiltonian_text(ss.str(), path);
}

}  // namespace qumvqd
