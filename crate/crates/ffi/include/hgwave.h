#ifndef HGWAVE_H
#define HGWAVE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Phase family selectors for [`hgwave_phase_new`].
 */
#define HGWAVE_FAMILY_FRAC_SCHRODINGER 0

#define HGWAVE_FAMILY_FRAC_WAVE 1

#define HGWAVE_FAMILY_FOURTH_ORDER 2

/**
 * Status code of every FFI call.
 */
typedef enum HgStatus {
  /**
   * Success; out-pointers hold valid results.
   */
  HgStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  HgStatus_NullPointer = 1,
  /**
   * A parameter was rejected (range, configuration, or grid mismatch).
   */
  HgStatus_InvalidParameter = 2,
  /**
   * A numerical procedure failed to converge or certify its result.
   */
  HgStatus_Numeric = 3,
} HgStatus;

/**
 * Opaque handle for the group parameters of H^n.
 */
typedef struct HgGroup HgGroup;

/**
 * Opaque handle for a dispersive phase function.
 */
typedef struct HgPhase HgPhase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the group parameters of H^n; `n >= 1`.
 *
 * # Safety
 * `out` must be a valid pointer. The returned handle must be released with
 * [`hgwave_group_free`].
 */
enum HgStatus hgwave_group_new(uint32_t n, struct HgGroup **out);

/**
 * Releases a group handle; accepts null.
 *
 * # Safety
 * `group` must be null or a handle from [`hgwave_group_new`], not yet freed.
 */
void hgwave_group_free(struct HgGroup *group);

/**
 * Homogeneous dimension N = 2n + 2.
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum HgStatus hgwave_group_homogeneous_dim(const struct HgGroup *group, uint32_t *out);

/**
 * Spectral eigenvalue b_m(lambda) = 4 (2m + n) |lambda|.
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum HgStatus hgwave_group_eigenvalue(const struct HgGroup *group,
                                      uint32_t m,
                                      double lambda,
                                      double *out);

/**
 * Creates a built-in phase function; `alpha` is ignored by the
 * fourth-order family.
 *
 * # Safety
 * `out` must be a valid pointer. The returned handle must be released with
 * [`hgwave_phase_free`].
 */
enum HgStatus hgwave_phase_new(uint32_t family, double alpha, struct HgPhase **out);

/**
 * Releases a phase handle; accepts null.
 *
 * # Safety
 * `phase` must be null or a handle from [`hgwave_phase_new`], not yet freed.
 */
void hgwave_phase_free(struct HgPhase *phase);

/**
 * Evaluates phi(r), phi'(r), phi''(r); any out-pointer may be null to skip
 * that value (but not all three).
 *
 * # Safety
 * `phase` must be a valid handle; non-null out-pointers must be valid.
 */
enum HgStatus hgwave_phase_eval(const struct HgPhase *phase,
                                double r,
                                double *value,
                                double *first,
                                double *second);

/**
 * Sup-norm of the evolved band-limited kernel U_t phi_j with its argmax,
 * at the default window and search tolerances.
 *
 * # Safety
 * All handles and out-pointers must be valid.
 */
enum HgStatus hgwave_sup_norm(const struct HgPhase *phase,
                              const struct HgGroup *group,
                              double t,
                              int32_t j,
                              uint32_t m_max,
                              double *out_sup,
                              double *out_argmax_r,
                              double *out_argmax_s);

/**
 * t^{1/2}-normalized magnitude of the sharpness example u(0, t s0, t).
 *
 * # Safety
 * `phase` and `out` must be valid pointers.
 */
enum HgStatus hgwave_sharpness_normalized(const struct HgPhase *phase,
                                          uint32_t n,
                                          double t,
                                          double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HGWAVE_H */
