#include "qumvqd.h"

#include <cstring>
#include <string>

#include "core/ansatz.hpp"
#include "core/electronic.hpp"
#include "core/fragments.hpp"
#include "core/noise.hpp"
#include "core/reports.hpp"
#include "core/vqd.hpp"

using namespace qumvqd;

namespace {

thread_local std::string g_last_error;

qvd_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Argument:
      return QVD_ERR_ARGUMENT;
    case ErrorCode::Parse:
      return QVD_ERR_PARSE;
    case ErrorCode::Capacity:
      return QVD_ERR_CAPACITY;
    case ErrorCode::SymmetryViolation:
      return QVD_ERR_SYMMETRY;
    case ErrorCode::Numerical:
      return QVD_ERR_NUMERIC;
    case ErrorCode::Truncation:
      return QVD_ERR_TRUNCATION;
    case ErrorCode::Convergence:
      return QVD_ERR_CONVERGENCE;
    case ErrorCode::InputInconsistency:
      return QVD_ERR_INPUT;
    case ErrorCode::Io:
      return QVD_ERR_IO;
    case ErrorCode::Internal:
      return QVD_ERR_INTERNAL;
  }
  return QVD_ERR_INTERNAL;
}

template <typename F>
qvd_status guarded(F&& f) noexcept {
  try {
    f();
    g_last_error.clear();
    return QVD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QVD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QVD_ERR_INTERNAL;
  }
}

}  // namespace

struct qvd_hamiltonian {
  DenseHamiltonian h;
  std::string geometry;
};

struct qvd_fragment_set {
  FragmentSet fs;
};

struct qvd_vqd_result {
  VqdResult result;
  AnsatzSpec ansatz;
};

extern "C" {

const char* qvd_version(void) { return kVersion; }

const char* qvd_last_error(void) { return g_last_error.c_str(); }

qvd_status qvd_electronic_load(const char* path, qvd_hamiltonian** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    FermionicHamiltonian fh = parse_electronic_hamiltonian(path);
    auto* handle = new qvd_hamiltonian{jordan_wigner_to_matrix(fh),
                                       fh.geometry};
    *out = handle;
  });
}

qvd_status qvd_electronic_load_text(const char* text, const char* origin,
                                    qvd_hamiltonian** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    FermionicHamiltonian fh = parse_electronic_hamiltonian_text(
        text, origin ? origin : "<text>");
    *out = new qvd_hamiltonian{jordan_wigner_to_matrix(fh), fh.geometry};
  });
}

qvd_status qvd_hamiltonian_filter(const qvd_hamiltonian* h, int n_e,
                                  qvd_hamiltonian** out) {
  return guarded([&] {
    require(h != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    *out = new qvd_hamiltonian{filter_by_particle_number(h->h, n_e),
                               h->geometry};
  });
}

int64_t qvd_hamiltonian_dim(const qvd_hamiltonian* h) {
  return h ? h->h.dimension() : 0;
}

int qvd_hamiltonian_orbitals(const qvd_hamiltonian* h) {
  return h ? h->h.num_spin_orbitals : 0;
}

int qvd_hamiltonian_particle_number(const qvd_hamiltonian* h) {
  return h ? h->h.particle_number : -1;
}

const char* qvd_hamiltonian_source(const qvd_hamiltonian* h) {
  return h ? h->h.source.c_str() : "";
}

const char* qvd_hamiltonian_geometry(const qvd_hamiltonian* h) {
  return h ? h->geometry.c_str() : "";
}

qvd_status qvd_hamiltonian_eigenvalues(const qvd_hamiltonian* h, double* out,
                                       int64_t capacity) {
  return guarded([&] {
    require(h != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    require(capacity >= 0, ErrorCode::Argument, "negative capacity");
    EigenSystem es = exact_diagonalize(h->h.matrix);
    const int64_t n = std::min<int64_t>(capacity, es.values.size());
    for (int64_t i = 0; i < n; ++i) out[i] = es.values[i];
  });
}

void qvd_hamiltonian_free(qvd_hamiltonian* h) { delete h; }

qvd_status qvd_fragments_load(const char* path, qvd_fragment_set** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    *out = new qvd_fragment_set{parse_fragment_set(path)};
  });
}

qvd_status qvd_fragments_load_text(const char* text, const char* origin,
                                   qvd_fragment_set** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    *out = new qvd_fragment_set{
        parse_fragment_set_text(text, origin ? origin : "<text>")};
  });
}

int qvd_fragments_count(const qvd_fragment_set* fs) {
  return fs ? static_cast<int>(fs->fs.fragments.size()) : 0;
}

int qvd_fragments_modes(const qvd_fragment_set* fs) {
  return fs ? fs->fs.num_modes : 0;
}

int qvd_fragments_cutoff(const qvd_fragment_set* fs) {
  return fs ? fs->fs.cutoff : 0;
}

qvd_status qvd_fragments_reconstruct(const qvd_fragment_set* fs,
                                     qvd_hamiltonian** out) {
  return guarded([&] {
    require(fs != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    *out = new qvd_hamiltonian{reconstruct_hamiltonian(fs->fs), ""};
  });
}

qvd_status qvd_fragments_gate_counts(const qvd_fragment_set* fs, int depth,
                                     qvd_gate_counts* out) {
  return guarded([&] {
    require(fs != nullptr && out != nullptr, ErrorCode::Argument,
            "null pointer argument");
    GateCountReport r = count_gates(fs->fs, depth);
    out->num_modes = r.num_modes;
    out->num_fragments = r.num_fragments;
    out->depth = r.depth;
    out->fragment_displacement = r.fragment_displacement;
    out->fragment_squeeze = r.fragment_squeeze;
    out->fragment_bs_per_qumode = r.fragment_bs_per_qumode;
    out->fragment_bs = r.fragment_bs;
    out->ansatz_per_type = r.ansatz_per_type;
    out->circuit_displacement = r.circuit_displacement;
    out->circuit_squeeze = r.circuit_squeeze;
    out->circuit_bs = r.circuit_bs;
    out->total_displacement = r.total_displacement;
    out->total_squeeze = r.total_squeeze;
    out->total_bs = r.total_bs;
  });
}

void qvd_fragments_free(qvd_fragment_set* fs) { delete fs; }

qvd_status qvd_compression_report(int m, int n_e, int d,
                                  qvd_compression* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::Argument, "null pointer argument");
    CompressionReport r = compression_report(m, n_e, d);
    out->m = r.m;
    out->n_e = r.n_e;
    out->cutoff = r.cutoff;
    out->full_dim = r.full_dim;
    out->restricted_dim = r.restricted_dim;
    out->ratio = r.ratio;
    out->qumodes_full = r.qumodes_full;
    out->qumodes_restricted = r.qumodes_restricted;
  });
}

qvd_status qvd_stirling_central_binomial(int m, double* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::Argument, "null pointer argument");
    *out = stirling_central_binomial(m);
  });
}

qvd_status qvd_run_vqd_dense(const qvd_hamiltonian* h,
                             const char* config_json, qvd_vqd_result** out) {
  return guarded([&] {
    require(h != nullptr && config_json != nullptr && out != nullptr,
            ErrorCode::Argument, "null pointer argument");
    VqdConfig config = parse_vqd_config_text(config_json, "config");
    int n = qumodes_for_dimension(
        static_cast<std::uint64_t>(h->h.dimension()), config.cutoff);
    if (n < 1) n = 1;
    FockSpace space = FockSpace::make(n, config.cutoff);
    DenseBackend backend(h->h, space);
    AnsatzSpec ansatz = AnsatzSpec::make(space, config.depth);
    auto* handle = new qvd_vqd_result{run_vqd(ansatz, backend, config),
                                      ansatz};
    *out = handle;
  });
}

qvd_status qvd_run_vqd_fragments(const qvd_fragment_set* fs,
                                 const char* config_json,
                                 qvd_vqd_result** out) {
  return guarded([&] {
    require(fs != nullptr && config_json != nullptr && out != nullptr,
            ErrorCode::Argument, "null pointer argument");
    VqdConfig config = parse_vqd_config_text(config_json, "config");
    if (config.merge_tol <= 0) config.merge_tol = 1e-3;  // cm^-1 scale
    FragmentBackend backend(fs->fs);
    AnsatzSpec ansatz = AnsatzSpec::make(backend.space(), config.depth);
    *out = new qvd_vqd_result{run_vqd(ansatz, backend, config), ansatz};
  });
}

int qvd_result_num_states(const qvd_vqd_result* r) {
  return r ? static_cast<int>(r->result.states.size()) : 0;
}

double qvd_result_energy(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_states(r)) return 0.0;
  return r->result.states[index].energy;
}

int qvd_result_converged(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_states(r)) return 0;
  return r->result.states[index].converged ? 1 : 0;
}

int64_t qvd_result_evaluations(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_states(r)) return 0;
  return r->result.states[index].evaluations;
}

double qvd_result_grad_norm(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_states(r)) return 0.0;
  return r->result.states[index].grad_norm;
}

int qvd_result_num_deduplicated(const qvd_vqd_result* r) {
  return r ? static_cast<int>(r->result.deduplicated_energies.size()) : 0;
}

double qvd_result_deduplicated_energy(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_deduplicated(r)) return 0.0;
  return r->result.deduplicated_energies[index];
}

int qvd_result_num_warnings(const qvd_vqd_result* r) {
  return r ? static_cast<int>(r->result.warnings.size()) : 0;
}

const char* qvd_result_warning(const qvd_vqd_result* r, int index) {
  if (!r || index < 0 || index >= qvd_result_num_warnings(r)) return "";
  return r->result.warnings[index].c_str();
}

void qvd_result_free(qvd_vqd_result* r) { delete r; }

qvd_status qvd_result_noisy_energy(const qvd_vqd_result* r, int state,
                                   const qvd_hamiltonian* h,
                                   double kappa_tau, int l_max, double* out) {
  return guarded([&] {
    require(r != nullptr && h != nullptr && out != nullptr,
            ErrorCode::Argument, "null pointer argument");
    require(state >= 0 && state < qvd_result_num_states(r),
            ErrorCode::Argument, "state index out of range");
    CircuitEvaluator evaluator(r->ansatz);
    std::vector<GateSpec> circuit =
        evaluator.to_circuit(r->result.states[state].params);
    *out = noisy_circuit_expectation(circuit, r->ansatz.space, kappa_tau,
                                     l_max, h->h);
  });
}

qvd_status qvd_fidelity_energy_error(double error_prob, long long gate_count,
                                     double reference_energy, double* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::Argument, "null pointer argument");
    GateFidelityModel model{error_prob, gate_count, reference_energy};
    *out = fidelity_energy_error(model);
  });
}

qvd_status qvd_hash_file(const char* path, char out_hex[17]) {
  return guarded([&] {
    require(path != nullptr && out_hex != nullptr, ErrorCode::Argument,
            "null pointer argument");
    std::string h = hash_file(path);
    std::memcpy(out_hex, h.c_str(), 17);
  });
}

}  // extern "C"
