#ifndef FRACOURNOT_H
#define FRACOURNOT_H

/* Generated by cbindgen from the fracournot-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code shared by every fallible entry point.
 */
typedef enum FrcStatus {
  FRC_STATUS_OK = 0,
  FRC_STATUS_NULL_POINTER = 1,
  FRC_STATUS_INVALID_ARGUMENT = 2,
} FrcStatus;

/**
 * Opaque handle to a validated duopoly parameter set.
 */
typedef struct FrcParams FrcParams;

/**
 * Opaque handle to a computed orbit.
 */
typedef struct FrcTrajectory FrcTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a parameter handle; all six values must be positive and
 * finite. On failure `*out` is null.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum FrcStatus frc_params_new(double alpha1,
                              double alpha2,
                              double b,
                              double d,
                              double c1,
                              double c2,
                              struct FrcParams **out);

/**
 * Releases a parameter handle. Null is ignored.
 *
 * # Safety
 * `p` must be null or a handle from [`frc_params_new`] not yet freed.
 */
void frc_params_free(struct FrcParams *p);

/**
 * Writes the four equilibria as (q1, q2) pairs — eight doubles in the
 * order E1, E2, E3, E4.
 *
 * # Safety
 * `p` must be a live handle; `out` must point to at least 8 writable
 * doubles.
 */
enum FrcStatus frc_equilibria(const struct FrcParams *p, double *out);

/**
 * Trace and determinant of the Jacobian at the interior equilibrium.
 *
 * # Safety
 * `p` must be a live handle; `out_tr` and `out_det` must each point to
 * one writable double.
 */
enum FrcStatus frc_tr_det_e4(const struct FrcParams *p, double *out_tr, double *out_det);

/**
 * The critical memory order at E4: the orbit is locally stable there
 * for every ν above this value.
 *
 * # Safety
 * `p` must be a live handle; `out` must point to one writable double.
 */
enum FrcStatus frc_nu_threshold_e4(const struct FrcParams *p, double *out);

/**
 * Stability verdict at E4 for memory order `nu` in (0,1); `nu = 1`
 * (classical) is rejected — use the unit-disk test there.
 *
 * # Safety
 * `p` must be a live handle; `out_stable` must point to one writable
 * bool.
 */
enum FrcStatus frc_stable_at(const struct FrcParams *p, double nu, bool *out_stable);

/**
 * Integrates the duopoly orbit for `steps` steps from `(q1_0, q2_0)` at
 * memory order `nu`, stopping early if any output magnitude exceeds
 * `guard`. On success `*out` owns the trajectory.
 *
 * # Safety
 * `p` must be a live handle; `out` must point to writable storage for
 * one pointer.
 */
enum FrcStatus frc_simulate(const struct FrcParams *p,
                            double nu,
                            double q1_0,
                            double q2_0,
                            uintptr_t steps,
                            double guard,
                            struct FrcTrajectory **out);

/**
 * Number of stored states (steps + 1 for a complete orbit; fewer after
 * a guard trip). Null yields 0.
 *
 * # Safety
 * `t` must be null or a live trajectory handle.
 */
uintptr_t frc_trajectory_len(const struct FrcTrajectory *t);

/**
 * Step index at which the orbit tripped the divergence guard, or -1 if
 * it completed (or `t` is null).
 *
 * # Safety
 * `t` must be null or a live trajectory handle.
 */
int64_t frc_trajectory_diverged_step(const struct FrcTrajectory *t);

/**
 * Copies one component's series (0 = q1, 1 = q2) into `buf`, which must
 * hold at least [`frc_trajectory_len`] doubles.
 *
 * # Safety
 * `t` must be a live handle; `buf` must point to `buf_len` writable
 * doubles.
 */
enum FrcStatus frc_trajectory_component(const struct FrcTrajectory *t,
                                        uintptr_t component,
                                        double *buf,
                                        uintptr_t buf_len);

/**
 * Releases a trajectory handle. Null is ignored.
 *
 * # Safety
 * `t` must be null or a handle from [`frc_simulate`] not yet freed.
 */
void frc_trajectory_free(struct FrcTrajectory *t);

/**
 * Runs the 0-1 chaos test on a scalar series with `n_c` random test
 * frequencies (band and displacement cutoff at their standard
 * defaults) and writes the median statistic: ≈1 diffusive/chaotic,
 * ≈0 regular. The series must be finite and long enough for the
 * displacement window (at least 20 points at the default cutoff).
 *
 * # Safety
 * `series` must point to `len` readable doubles; `out_k` must point to
 * one writable double.
 */
enum FrcStatus frc_chaos_k(const double *series,
                           uintptr_t len,
                           uintptr_t n_c,
                           uint64_t seed,
                           double *out_k);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACOURNOT_H */
