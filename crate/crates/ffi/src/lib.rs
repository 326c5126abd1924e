//! C ABI for the beveridgean library.
//!
//! Conventions:
//!
//! - Handles (`BvpModel`, `BvpTrajectory`) are opaque; create them with the
//!   `bvp_*_new*` constructors and release them with the matching `*_free`.
//! - Every fallible call returns a [`BvpStatus`]; outputs are written
//!   through pointers only on `BVP_STATUS_OK`.
//! - On failure, [`bvp_last_error`] returns a thread-local, NUL-terminated
//!   message describing the most recent error on the calling thread. The
//!   pointer is valid until the next failing call on the same thread.
//! - All rates are per year, as in the Rust API.

use beveridgean::dynamics::{self, EconomyState, IntegrationStatus, Trajectory};
use beveridgean::linear::{self, PhillipsBranch, SystemKind};
use beveridgean::scenario::{self, Shock};
use beveridgean::{market, Error, ModelConfig};
use std::cell::RefCell;
use std::ffi::{c_char, CString};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BvpStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was NULL.
    NullPointer = 1,
    /// Parameters violate a model assumption.
    InvalidArgument = 2,
    /// An input lies outside the model domain.
    DomainError = 3,
    /// A solver could not produce a result (no solution, ambiguous, …).
    SolverError = 4,
}

/// Stability classification of the linearized system, mirroring the
/// trace-determinant taxonomy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BvpSystemKind {
    Source = 0,
    SpiralSource = 1,
    Saddle = 2,
    Sink = 3,
    SpiralSink = 4,
    Degenerate = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(e: &Error) -> BvpStatus {
    let msg = CString::new(e.to_string()).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    match e {
        Error::InvalidParams(_) => BvpStatus::InvalidArgument,
        Error::OutOfRange { .. } | Error::Infeasible(_) => BvpStatus::DomainError,
        _ => BvpStatus::SolverError,
    }
}

fn null_error(what: &str) -> BvpStatus {
    let msg = CString::new(format!("NULL pointer: {what}")).unwrap();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    BvpStatus::NullPointer
}

/// Message for the most recent error on this thread, or NULL if no call
/// has failed yet. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bvp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bvp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque model handle: matching parameters, preferences, and policy.
pub struct BvpModel(ModelConfig);

/// Opaque handle to an integrated trajectory.
pub struct BvpTrajectory(Trajectory);

/// Creates a model with the default calibration (u* = 4%, i* = 2.12%,
/// active policy φ = 1.5). Never fails. Free with [`bvp_model_free`].
#[no_mangle]
pub extern "C" fn bvp_model_new_default() -> *mut BvpModel {
    Box::into_raw(Box::new(BvpModel(ModelConfig::default_calibration())))
}

/// Creates a model from explicit parameters. `intercept_is_efficient != 0`
/// derives the policy intercept as the efficient rate `i*` and ignores
/// `intercept`. On failure writes nothing and returns the error status.
///
/// # Safety
///
/// `out` must be a valid pointer to a `BvpModel*` slot.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bvp_model_new(
    s: f64,
    omega: f64,
    delta: f64,
    sigma: f64,
    pi_star: f64,
    kappa_plus: f64,
    kappa_minus: f64,
    labor_force: f64,
    phi: f64,
    intercept: f64,
    intercept_is_efficient: i32,
    out: *mut *mut BvpModel,
) -> BvpStatus {
    if out.is_null() {
        return null_error("out");
    }
    let mut cfg = ModelConfig::default_calibration();
    cfg.matching.s = s;
    cfg.matching.omega = omega;
    cfg.prefs.delta = delta;
    cfg.prefs.sigma = sigma;
    cfg.prefs.pi_star = pi_star;
    cfg.prefs.kappa_plus = kappa_plus;
    cfg.prefs.kappa_minus = kappa_minus;
    cfg.prefs.labor_force = labor_force;
    cfg.policy.phi = phi;
    cfg.policy.intercept = intercept;
    if intercept_is_efficient != 0 {
        cfg = cfg.with_efficient_intercept();
    }
    if let Err(e) = cfg.validate() {
        return set_error(&e);
    }
    unsafe { *out = Box::into_raw(Box::new(BvpModel(cfg))) };
    BvpStatus::Ok
}

/// Releases a model handle. NULL is a no-op.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor,
/// not yet freed. The handle is invalid after this call.
#[no_mangle]
pub unsafe extern "C" fn bvp_model_free(model: *mut BvpModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

unsafe fn deref<'a>(model: *const BvpModel) -> Option<&'a ModelConfig> {
    unsafe { model.as_ref() }.map(|m| &m.0)
}

/// Efficient allocation and rate: `u* = v*`, `θ* = 1`, and
/// `i* = π* + δ − σ(1 − u*)l`. Any output pointer may be NULL to skip it.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
/// pointers must be valid `double` slots.
#[no_mangle]
pub unsafe extern "C" fn bvp_steady_state(
    model: *const BvpModel,
    u_star: *mut f64,
    v_star: *mut f64,
    theta_star: *mut f64,
    i_star: *mut f64,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    let alloc = market::efficient_allocation(&cfg.matching);
    let rate = dynamics::efficient_nominal_rate(cfg);
    unsafe {
        if !u_star.is_null() {
            *u_star = alloc.u_star;
        }
        if !v_star.is_null() {
            *v_star = alloc.v_star;
        }
        if !theta_star.is_null() {
            *theta_star = alloc.theta_star;
        }
        if !i_star.is_null() {
            *i_star = rate.i_star;
        }
    }
    BvpStatus::Ok
}

/// Time derivatives of the nonlinear system at `(u, pi)`.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor.
/// `du` and `dpi` must be valid `double` slots.
#[no_mangle]
pub unsafe extern "C" fn bvp_rhs(
    model: *const BvpModel,
    u: f64,
    pi: f64,
    du: *mut f64,
    dpi: *mut f64,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    if du.is_null() || dpi.is_null() {
        return null_error("du/dpi");
    }
    let state = EconomyState::new(u, pi);
    match (
        dynamics::euler_rhs(&state, cfg),
        dynamics::phillips_rhs(&state, cfg),
    ) {
        (Ok(e), Ok(p)) => {
            unsafe {
                *du = e;
                *dpi = p;
            }
            BvpStatus::Ok
        }
        (Err(e), _) | (_, Err(e)) => set_error(&e),
    }
}

/// Linearized system matrix around the divine point, row-major
/// `[a11, a12, a21, a22]`. `slack_branch != 0` selects the below-target
/// cost `κ⁻`; otherwise the tight branch `κ⁺` is used.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor.
/// `matrix` must point to at least 4 writable `double`s.
#[no_mangle]
pub unsafe extern "C" fn bvp_linearize(
    model: *const BvpModel,
    slack_branch: i32,
    matrix: *mut f64,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    if matrix.is_null() {
        return null_error("matrix");
    }
    let lin = match linear::linearize(&cfg.clone().with_efficient_intercept()) {
        Ok(lin) => lin,
        Err(e) => return set_error(&e),
    };
    let branch = if slack_branch != 0 {
        PhillipsBranch::Slack
    } else {
        PhillipsBranch::Tight
    };
    let m = lin.matrix(branch);
    unsafe {
        let out = std::slice::from_raw_parts_mut(matrix, 4);
        out.copy_from_slice(&[m[0][0], m[0][1], m[1][0], m[1][1]]);
    }
    BvpStatus::Ok
}

/// Stability classification of the selected branch. Output pointers may be
/// NULL to skip the corresponding value.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
/// pointers must be valid slots of the corresponding type.
#[no_mangle]
pub unsafe extern "C" fn bvp_classify(
    model: *const BvpModel,
    slack_branch: i32,
    kind: *mut BvpSystemKind,
    trace: *mut f64,
    determinant: *mut f64,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    let lin = match linear::linearize(&cfg.clone().with_efficient_intercept()) {
        Ok(lin) => lin,
        Err(e) => return set_error(&e),
    };
    let branch = if slack_branch != 0 {
        PhillipsBranch::Slack
    } else {
        PhillipsBranch::Tight
    };
    let cls = linear::classify_branch(&lin, branch);
    unsafe {
        if !kind.is_null() {
            *kind = match cls.kind {
                SystemKind::Source => BvpSystemKind::Source,
                SystemKind::SpiralSource => BvpSystemKind::SpiralSource,
                SystemKind::Saddle => BvpSystemKind::Saddle,
                SystemKind::Sink => BvpSystemKind::Sink,
                SystemKind::SpiralSink => BvpSystemKind::SpiralSink,
                SystemKind::Degenerate => BvpSystemKind::Degenerate,
            };
        }
        if !trace.is_null() {
            *trace = cls.trace;
        }
        if !determinant.is_null() {
            *determinant = cls.determinant;
        }
    }
    BvpStatus::Ok
}

/// Integrates the nonlinear system from `(u0, pi0)` with fixed step `dt`
/// until `t_end`. On success writes a trajectory handle; free it with
/// [`bvp_trajectory_free`].
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor.
/// `out` must be a valid pointer to a `BvpTrajectory*` slot.
#[no_mangle]
pub unsafe extern "C" fn bvp_simulate(
    model: *const BvpModel,
    u0: f64,
    pi0: f64,
    t_end: f64,
    dt: f64,
    out: *mut *mut BvpTrajectory,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    if out.is_null() {
        return null_error("out");
    }
    match dynamics::integrate(&EconomyState::new(u0, pi0), cfg, t_end, dt) {
        Ok(t) => {
            unsafe { *out = Box::into_raw(Box::new(BvpTrajectory(t))) };
            BvpStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Number of `(t, u, pi)` samples. 0 for NULL.
///
/// # Safety
///
/// `trajectory` must be NULL or a handle from [`bvp_simulate`].
#[no_mangle]
pub unsafe extern "C" fn bvp_trajectory_len(trajectory: *const BvpTrajectory) -> usize {
    unsafe { trajectory.as_ref() }.map_or(0, |t| t.0.points.len())
}

/// 1 when the integration reached `t_end`, 0 when the trajectory left the
/// model domain early (expected for a source) or the handle is NULL.
///
/// # Safety
///
/// `trajectory` must be NULL or a handle from [`bvp_simulate`].
#[no_mangle]
pub unsafe extern "C" fn bvp_trajectory_completed(trajectory: *const BvpTrajectory) -> i32 {
    unsafe { trajectory.as_ref() }.map_or(0, |t| {
        matches!(t.0.status, IntegrationStatus::Completed) as i32
    })
}

/// Reads sample `index`. Fails with `BVP_STATUS_DOMAIN_ERROR` when the
/// index is out of bounds.
///
/// # Safety
///
/// `trajectory` must be NULL or a handle from [`bvp_simulate`].
/// Non-NULL output pointers must be valid `double` slots.
#[no_mangle]
pub unsafe extern "C" fn bvp_trajectory_point(
    trajectory: *const BvpTrajectory,
    index: usize,
    t: *mut f64,
    u: *mut f64,
    pi: *mut f64,
) -> BvpStatus {
    let Some(traj) = (unsafe { trajectory.as_ref() }) else {
        return null_error("trajectory");
    };
    let Some(&(pt, pu, ppi)) = traj.0.points.get(index) else {
        return set_error(&Error::OutOfRange {
            name: "index",
            value: index as f64,
            min: 0.0,
            max: traj.0.points.len() as f64,
        });
    };
    unsafe {
        if !t.is_null() {
            *t = pt;
        }
        if !u.is_null() {
            *u = pu;
        }
        if !pi.is_null() {
            *pi = ppi;
        }
    }
    BvpStatus::Ok
}

/// Releases a trajectory handle. NULL is a no-op.
///
/// # Safety
///
/// `trajectory` must be NULL or a handle from [`bvp_simulate`], not yet freed.
/// The handle is invalid after this call.
#[no_mangle]
pub unsafe extern "C" fn bvp_trajectory_free(trajectory: *mut BvpTrajectory) {
    if !trajectory.is_null() {
        drop(unsafe { Box::from_raw(trajectory) });
    }
}

/// Shock selector for [`bvp_shock`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BvpShockKind {
    /// Discount-rate change (demand).
    DemandDelta = 0,
    /// Wealth-utility change (demand).
    DemandSigma = 1,
    /// Policy-intercept change (demand).
    DemandIntercept = 2,
    /// Separation-rate change (supply).
    SupplySeparation = 3,
    /// Matching-efficacy change (supply).
    SupplyEfficacy = 4,
}

/// Applies an unexpected permanent shock and reports the new equilibrium.
/// `recenter` only matters for supply shocks: nonzero re-centers the policy
/// intercept on the new efficient rate. Output pointers may be NULL.
///
/// # Safety
///
/// `model` must be NULL or a handle from a `bvp_model_new*` constructor. Non-NULL output
/// pointers must be valid `double` slots.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bvp_shock(
    model: *const BvpModel,
    kind: BvpShockKind,
    magnitude: f64,
    recenter: i32,
    u_after: *mut f64,
    pi_after: *mut f64,
    u_hat: *mut f64,
    pi_hat: *mut f64,
) -> BvpStatus {
    let Some(cfg) = (unsafe { deref(model) }) else {
        return null_error("model");
    };
    let shock = match kind {
        BvpShockKind::DemandDelta => Shock::DemandDelta(magnitude),
        BvpShockKind::DemandSigma => Shock::DemandSigma(magnitude),
        BvpShockKind::DemandIntercept => Shock::DemandRateIntercept(magnitude),
        BvpShockKind::SupplySeparation => Shock::SupplySeparation(magnitude),
        BvpShockKind::SupplyEfficacy => Shock::SupplyEfficacy(magnitude),
    };
    let res = if shock.is_demand() {
        scenario::apply_demand_shock(cfg, shock)
    } else {
        scenario::apply_supply_shock(cfg, shock, recenter != 0)
    };
    match res {
        Ok(r) => {
            unsafe {
                if !u_after.is_null() {
                    *u_after = r.after.u;
                }
                if !pi_after.is_null() {
                    *pi_after = r.after.pi;
                }
                if !u_hat.is_null() {
                    *u_hat = r.u_hat;
                }
                if !pi_hat.is_null() {
                    *pi_hat = r.pi_hat;
                }
            }
            BvpStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}
