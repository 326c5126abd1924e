#ifndef BEVERIDGEAN_H
#define BEVERIDGEAN_H

/* Generated by cbindgen from beveridgean-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Shock selector for [`bvp_shock`].
 */
typedef enum BvpShockKind {
  /**
   * Discount-rate change (demand).
   */
  BVP_SHOCK_KIND_DEMAND_DELTA = 0,
  /**
   * Wealth-utility change (demand).
   */
  BVP_SHOCK_KIND_DEMAND_SIGMA = 1,
  /**
   * Policy-intercept change (demand).
   */
  BVP_SHOCK_KIND_DEMAND_INTERCEPT = 2,
  /**
   * Separation-rate change (supply).
   */
  BVP_SHOCK_KIND_SUPPLY_SEPARATION = 3,
  /**
   * Matching-efficacy change (supply).
   */
  BVP_SHOCK_KIND_SUPPLY_EFFICACY = 4,
} BvpShockKind;

/**
 * Result of an FFI call.
 */
typedef enum BvpStatus {
  /**
   * Success.
   */
  BVP_STATUS_OK = 0,
  /**
   * A pointer argument was NULL.
   */
  BVP_STATUS_NULL_POINTER = 1,
  /**
   * Parameters violate a model assumption.
   */
  BVP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An input lies outside the model domain.
   */
  BVP_STATUS_DOMAIN_ERROR = 3,
  /**
   * A solver could not produce a result (no solution, ambiguous, …).
   */
  BVP_STATUS_SOLVER_ERROR = 4,
} BvpStatus;

/**
 * Stability classification of the linearized system, mirroring the
 * trace-determinant taxonomy.
 */
typedef enum BvpSystemKind {
  BVP_SYSTEM_KIND_SOURCE = 0,
  BVP_SYSTEM_KIND_SPIRAL_SOURCE = 1,
  BVP_SYSTEM_KIND_SADDLE = 2,
  BVP_SYSTEM_KIND_SINK = 3,
  BVP_SYSTEM_KIND_SPIRAL_SINK = 4,
  BVP_SYSTEM_KIND_DEGENERATE = 5,
} BvpSystemKind;

/**
 * Opaque model handle: matching parameters, preferences, and policy.
 */
typedef struct BvpModel BvpModel;

/**
 * Opaque handle to an integrated trajectory.
 */
typedef struct BvpTrajectory BvpTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread, or NULL if no call
 * has failed yet. Valid until the next failing call on the same thread.
 */
const char *bvp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bvp_version(void);

/**
 * Creates a model with the default calibration (u* = 4%, i* = 2.12%,
 * active policy φ = 1.5). Never fails. Free with [`bvp_model_free`].
 */
struct BvpModel *bvp_model_new_default(void);

/**
 * Creates a model from explicit parameters. `intercept_is_efficient != 0`
 * derives the policy intercept as the efficient rate `i*` and ignores
 * `intercept`. On failure writes nothing and returns the error status.
 *
 * # Safety
 *
 * `out` must be a valid pointer to a `BvpModel*` slot.
 */
enum BvpStatus bvp_model_new(double s,
                             double omega,
                             double delta,
                             double sigma,
                             double pi_star,
                             double kappa_plus,
                             double kappa_minus,
                             double labor_force,
                             double phi,
                             double intercept,
                             int32_t intercept_is_efficient,
                             struct BvpModel **out);

/**
 * Releases a model handle. NULL is a no-op.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor,
 * not yet freed. The handle is invalid after this call.
 */
void bvp_model_free(struct BvpModel *model);

/**
 * Efficient allocation and rate: `u* = v*`, `θ* = 1`, and
 * `i* = π* + δ − σ(1 − u*)l`. Any output pointer may be NULL to skip it.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
 * pointers must be valid `double` slots.
 */
enum BvpStatus bvp_steady_state(const struct BvpModel *model,
                                double *u_star,
                                double *v_star,
                                double *theta_star,
                                double *i_star);

/**
 * Time derivatives of the nonlinear system at `(u, pi)`.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor.
 * `du` and `dpi` must be valid `double` slots.
 */
enum BvpStatus bvp_rhs(const struct BvpModel *model, double u, double pi, double *du, double *dpi);

/**
 * Linearized system matrix around the divine point, row-major
 * `[a11, a12, a21, a22]`. `slack_branch != 0` selects the below-target
 * cost `κ⁻`; otherwise the tight branch `κ⁺` is used.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor.
 * `matrix` must point to at least 4 writable `double`s.
 */
enum BvpStatus bvp_linearize(const struct BvpModel *model, int32_t slack_branch, double *matrix);

/**
 * Stability classification of the selected branch. Output pointers may be
 * NULL to skip the corresponding value.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
 * pointers must be valid slots of the corresponding type.
 */
enum BvpStatus bvp_classify(const struct BvpModel *model,
                            int32_t slack_branch,
                            enum BvpSystemKind *kind,
                            double *trace,
                            double *determinant);

/**
 * Integrates the nonlinear system from `(u0, pi0)` with fixed step `dt`
 * until `t_end`. On success writes a trajectory handle; free it with
 * [`bvp_trajectory_free`].
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor.
 * `out` must be a valid pointer to a `BvpTrajectory*` slot.
 */
enum BvpStatus bvp_simulate(const struct BvpModel *model,
                            double u0,
                            double pi0,
                            double t_end,
                            double dt,
                            struct BvpTrajectory **out);

/**
 * Number of `(t, u, pi)` samples. 0 for NULL.
 *
 * # Safety
 *
 * `trajectory` must be NULL or a handle from [`bvp_simulate`].
 */
uintptr_t bvp_trajectory_len(const struct BvpTrajectory *trajectory);

/**
 * 1 when the integration reached `t_end`, 0 when the trajectory left the
 * model domain early (expected for a source) or the handle is NULL.
 *
 * # Safety
 *
 * `trajectory` must be NULL or a handle from [`bvp_simulate`].
 */
int32_t bvp_trajectory_completed(const struct BvpTrajectory *trajectory);

/**
 * Reads sample `index`. Fails with `BVP_STATUS_DOMAIN_ERROR` when the
 * index is out of bounds.
 *
 * # Safety
 *
 * `trajectory` must be NULL or a handle from [`bvp_simulate`].
 * Non-NULL output pointers must be valid `double` slots.
 */
enum BvpStatus bvp_trajectory_point(const struct BvpTrajectory *trajectory,
                                    uintptr_t index,
                                    double *t,
                                    double *u,
                                    double *pi);

/**
 * Releases a trajectory handle. NULL is a no-op.
 *
 * # Safety
 *
 * `trajectory` must be NULL or a handle from [`bvp_simulate`], not yet freed.
 * The handle is invalid after this call.
 */
void bvp_trajectory_free(struct BvpTrajectory *trajectory);

/**
 * Applies an unexpected permanent shock and reports the new equilibrium.
 * `recenter` only matters for supply shocks: nonzero re-centers the policy
 * intercept on the new efficient rate. Output pointers may be NULL.
 *
 * # Safety
 *
 * `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
 * pointers must be valid `double` slots.
 */
enum BvpStatus bvp_shock(const struct BvpModel *model,
                         enum BvpShockKind kind,
                         double magnitude,
                         int32_t recenter,
                         double *u_after,
                         double *pi_after,
                         double *u_hat,
                         double *pi_hat);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BEVERIDGEAN_H */
