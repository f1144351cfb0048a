#ifndef CAVITY_RESPONSE_H
#define CAVITY_RESPONSE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrStatus {
  CR_STATUS_OK = 0,
  CR_STATUS_NULL_POINTER = 1,
  CR_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The frequency hit an exact pole; retry with a broadening.
   */
  CR_STATUS_SINGULAR = 3,
  CR_STATUS_SOLVER_FAILURE = 4,
  /**
   * The output buffer was too short; the required length was reported.
   */
  CR_STATUS_BUFFER_TOO_SMALL = 5,
  CR_STATUS_PANIC = 6,
} CrStatus;

typedef enum CrModelKind {
  CR_MODEL_KIND_DICKE = 0,
  CR_MODEL_KIND_LMG_LONGITUDINAL = 1,
  CR_MODEL_KIND_LMG_TRANSVERSE = 2,
  CR_MODEL_KIND_HEISENBERG = 3,
} CrModelKind;

typedef enum CrOperator {
  CR_OPERATOR_X = 0,
  CR_OPERATOR_Y = 1,
  CR_OPERATOR_Z = 2,
} CrOperator;

/**
 * The two-dimensional electron gas in a magnetic field and a cavity.
 */
typedef struct CrQheModel CrQheModel;

/**
 * A spin model at its mean-field ground state.
 */
typedef struct CrSpinModel CrSpinModel;

/**
 * Parameters of a spin model. Fields a model does not use must be zero.
 */
typedef struct CrSpinParams {
  enum CrModelKind kind;
  double omega_x;
  double omega_z;
  double j;
  uint32_t coordination;
  double lambda;
  double cavity_freq;
  double zeta;
} CrSpinParams;

typedef struct CrMeanField {
  double m_x;
  double m_z;
  double gap;
  double energy_per_site;
  bool coexistence;
} CrMeanField;

typedef struct CrComplex {
  double re;
  double im;
} CrComplex;

typedef struct CrQheParams {
  double cavity_freq;
  double plasma_freq;
  double cyclotron_freq;
  double filling;
} CrQheParams;

/**
 * Conductivity tensor; longitudinal entries relative to the Drude value,
 * Hall entries relative to `e^2 nu / h`.
 */
typedef struct CrConductivity {
  struct CrComplex xx;
  struct CrComplex xy;
  struct CrComplex yx;
  struct CrComplex yy;
} CrConductivity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *cr_status_string(enum CrStatus status);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cr_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *cr_version(void);

/**
 * Solve the mean field of a spin model and return a handle to it.
 *
 * # Safety
 * `params` must point to a valid `CrSpinParams` whose `kind` is one of
 * the declared values, and `out` to writable storage for one pointer.
 */
enum CrStatus cr_spin_model_new(const struct CrSpinParams *params, struct CrSpinModel **out);

/**
 * Release a handle from [`cr_spin_model_new`]. NULL is ignored.
 *
 * # Safety
 * `model` must be NULL or a handle not yet freed.
 */
void cr_spin_model_free(struct CrSpinModel *model);

/**
 * Mean-field ground state of the model.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum CrStatus cr_spin_model_mean_field(const struct CrSpinModel *model, struct CrMeanField *out);

/**
 * Normal photon propagator at `omega + i delta`.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum CrStatus cr_spin_model_photon(const struct CrSpinModel *model,
                                   double omega,
                                   double delta,
                                   struct CrComplex *out);

/**
 * Dressed spin susceptibility `chi_rs` at `omega + i delta`.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum CrStatus cr_spin_model_susceptibility(const struct CrSpinModel *model,
                                           enum CrOperator r,
                                           enum CrOperator s,
                                           double omega,
                                           double delta,
                                           struct CrComplex *out);

/**
 * Collective-mode frequencies in `[lo, hi]`. `*count` receives the
 * number of modes even when `cap` is too small.
 *
 * # Safety
 * `model` must be a live handle, `buf` valid for `cap` doubles and
 * `count` writable.
 */
enum CrStatus cr_spin_model_poles(const struct CrSpinModel *model,
                                  double lo,
                                  double hi,
                                  double *buf,
                                  size_t cap,
                                  size_t *count);

/**
 * Create the electron-gas model.
 *
 * # Safety
 * `params` must point to a valid `CrQheParams` and `out` to writable
 * storage for one pointer.
 */
enum CrStatus cr_qhe_model_new(const struct CrQheParams *params, struct CrQheModel **out);

/**
 * Release a handle from [`cr_qhe_model_new`]. NULL is ignored.
 *
 * # Safety
 * `model` must be NULL or a handle not yet freed.
 */
void cr_qhe_model_free(struct CrQheModel *model);

/**
 * Conductivity tensor at `omega + i delta`; `delta` doubles as the
 * transport scattering rate.
 *
 * # Safety
 * `model` must be a live handle and `out` writable.
 */
enum CrStatus cr_qhe_conductivity(const struct CrQheModel *model,
                                  double omega,
                                  double delta,
                                  struct CrConductivity *out);

/**
 * Lower and upper Landau polariton.
 *
 * # Safety
 * `model` must be a live handle; `lower` and `upper` writable.
 */
enum CrStatus cr_qhe_landau_polaritons(const struct CrQheModel *model,
                                       double *lower,
                                       double *upper);

/**
 * Collective-mode frequencies of the electron gas in `[lo, hi]`.
 *
 * # Safety
 * As [`cr_spin_model_poles`].
 */
enum CrStatus cr_qhe_model_poles(const struct CrQheModel *model,
                                 double lo,
                                 double hi,
                                 double *buf,
                                 size_t cap,
                                 size_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAVITY_RESPONSE_H */
