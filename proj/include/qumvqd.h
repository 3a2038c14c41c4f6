/* QumVQD public C API.
 *
 * All functionality is reached through opaque handles and status codes; a
 * thread-local message for the most recent failure is available from
 * qvd_last_error(). Handles are created by qvd_*_load / qvd_run_* calls and
 * released with the matching qvd_*_free.
 */
#ifndef QUMVQD_H
#define QUMVQD_H

#include <stdint.h>

#ifndef QVD_API
#if defined(_WIN32)
#define QVD_API __declspec(dllexport)
#else
#define QVD_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qvd_status {
  QVD_OK = 0,
  QVD_ERR_ARGUMENT = 1,
  QVD_ERR_PARSE = 2,
  QVD_ERR_CAPACITY = 3,
  QVD_ERR_SYMMETRY = 4,
  QVD_ERR_NUMERIC = 5,
  QVD_ERR_TRUNCATION = 6,
  QVD_ERR_CONVERGENCE = 7,
  QVD_ERR_INPUT = 8,
  QVD_ERR_IO = 9,
  QVD_ERR_INTERNAL = 10
} qvd_status;

QVD_API const char* qvd_version(void);
QVD_API const char* qvd_last_error(void);

typedef struct qvd_hamiltonian qvd_hamiltonian;
typedef struct qvd_fragment_set qvd_fragment_set;
typedef struct qvd_vqd_result qvd_vqd_result;

/* ---------- electronic Hamiltonians ---------- */

/* Parses the electronic Hamiltonian JSON document and assembles the dense
 * 2^M matrix under the Jordan-Wigner convention. */
QVD_API qvd_status qvd_electronic_load(const char* path,
                                       qvd_hamiltonian** out);
QVD_API qvd_status qvd_electronic_load_text(const char* text,
                                            const char* origin,
                                            qvd_hamiltonian** out);

/* Restriction to the fixed particle-number (Hamming weight) sector. */
QVD_API qvd_status qvd_hamiltonian_filter(const qvd_hamiltonian* h, int n_e,
                                          qvd_hamiltonian** out);

QVD_API int64_t qvd_hamiltonian_dim(const qvd_hamiltonian* h);
QVD_API int qvd_hamiltonian_orbitals(const qvd_hamiltonian* h);
QVD_API int qvd_hamiltonian_particle_number(const qvd_hamiltonian* h);
QVD_API const char* qvd_hamiltonian_source(const qvd_hamiltonian* h);
QVD_API const char* qvd_hamiltonian_geometry(const qvd_hamiltonian* h);

/* Ascending exact eigenvalues; fills min(dim, capacity) entries. */
QVD_API qvd_status qvd_hamiltonian_eigenvalues(const qvd_hamiltonian* h,
                                               double* out,
                                               int64_t capacity);
QVD_API void qvd_hamiltonian_free(qvd_hamiltonian* h);

/* ---------- vibrational fragment sets ---------- */

QVD_API qvd_status qvd_fragments_load(const char* path,
                                      qvd_fragment_set** out);
QVD_API qvd_status qvd_fragments_load_text(const char* text,
                                           const char* origin,
                                           qvd_fragment_set** out);
QVD_API int qvd_fragments_count(const qvd_fragment_set* fs);
QVD_API int qvd_fragments_modes(const qvd_fragment_set* fs);
QVD_API int qvd_fragments_cutoff(const qvd_fragment_set* fs);

/* Dense Σ_k U_k D_k U_k†, the oracle for fragment runs. */
QVD_API qvd_status qvd_fragments_reconstruct(const qvd_fragment_set* fs,
                                             qvd_hamiltonian** out);

typedef struct qvd_gate_counts {
  int num_modes;
  int num_fragments;
  int depth;
  int fragment_displacement;
  int fragment_squeeze;
  int fragment_bs_per_qumode;
  int fragment_bs;
  int ansatz_per_type;
  int circuit_displacement;
  int circuit_squeeze;
  int circuit_bs;
  long long total_displacement;
  long long total_squeeze;
  long long total_bs;
} qvd_gate_counts;

QVD_API qvd_status qvd_fragments_gate_counts(const qvd_fragment_set* fs,
                                             int depth,
                                             qvd_gate_counts* out);
QVD_API void qvd_fragments_free(qvd_fragment_set* fs);

/* ---------- particle-number compression reporting ---------- */

typedef struct qvd_compression {
  int m;
  int n_e;
  int cutoff;
  uint64_t full_dim;
  uint64_t restricted_dim;
  double ratio;
  int qumodes_full;
  int qumodes_restricted;
} qvd_compression;

QVD_API qvd_status qvd_compression_report(int m, int n_e, int d,
                                          qvd_compression* out);
QVD_API qvd_status qvd_stirling_central_binomial(int m, double* out);

/* ---------- VQD runs ----------
 *
 * config_json is the run-configuration document:
 *   { "depth": int, "betas": [float]|float, "k": int, "seed": int,
 *     "optimizer": { "restarts": int, "max_evals": int, "tol": float } }
 * plus optional keys cutoff, merge_tol and optimizer.{algorithm, adam_lr,
 * adam_fraction, stall_window, init_range, threads}. */

QVD_API qvd_status qvd_run_vqd_dense(const qvd_hamiltonian* h,
                                     const char* config_json,
                                     qvd_vqd_result** out);
QVD_API qvd_status qvd_run_vqd_fragments(const qvd_fragment_set* fs,
                                         const char* config_json,
                                         qvd_vqd_result** out);

QVD_API int qvd_result_num_states(const qvd_vqd_result* r);
QVD_API double qvd_result_energy(const qvd_vqd_result* r, int index);
QVD_API int qvd_result_converged(const qvd_vqd_result* r, int index);
QVD_API int64_t qvd_result_evaluations(const qvd_vqd_result* r, int index);
QVD_API double qvd_result_grad_norm(const qvd_vqd_result* r, int index);
QVD_API int qvd_result_num_deduplicated(const qvd_vqd_result* r);
QVD_API double qvd_result_deduplicated_energy(const qvd_vqd_result* r,
                                              int index);
QVD_API int qvd_result_num_warnings(const qvd_vqd_result* r);
QVD_API const char* qvd_result_warning(const qvd_vqd_result* r, int index);
QVD_API void qvd_result_free(qvd_vqd_result* r);

/* ---------- noise models ---------- */

/* Re-runs the converged circuit for result state `state` as a density
 * matrix with the amplitude-damping channel applied after every gate on
 * every touched mode, and returns Tr(rho H). kappa_tau = 0 recovers the
 * noiseless value. */
QVD_API qvd_status qvd_result_noisy_energy(const qvd_vqd_result* r, int state,
                                           const qvd_hamiltonian* h,
                                           double kappa_tau, int l_max,
                                           double* out);

/* (1 - (1-p)^n) |E_ref| for the fixed-gate-fidelity model. */
QVD_API qvd_status qvd_fidelity_energy_error(double error_prob,
                                             long long gate_count,
                                             double reference_energy,
                                             double* out);

/* ---------- misc ---------- */

/* FNV-1a hash of a file, 16 hex digits plus terminator. */
QVD_API qvd_status qvd_hash_file(const char* path, char out_hex[17]);

#ifdef __cplusplus
}
#endif

#endif /* QUMVQD_H */
