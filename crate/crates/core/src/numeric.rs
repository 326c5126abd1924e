//! Small numerical helpers: bisection and finite differences.

use crate::error::{Error, Result};

/// Finds a root of `f` on `[lo, hi]` by bisection.
///
/// Requires `f(lo)` and `f(hi)` to bracket a sign change (either endpoint may
/// be zero). Stops when the bracket width falls below `tol` (absolute).
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::NoSolution(format!(
            "non-finite bracket values f({lo}) = {flo}, f({hi}) = {fhi}"
        )));
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSolution(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}"
        )));
    }
    // 200 iterations halve the bracket well past f64 resolution for any
    // bracket the model produces.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Central finite difference of `f` at `x` with relative step `rel_step`.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, rel_step: f64) -> f64 {
    let h = rel_step * x.abs().max(rel_step);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Elasticity of `f` at `x` via central differences: `x f'(x) / f(x)`.
pub fn fd_elasticity<F: Fn(f64) -> f64>(f: &F, x: f64, rel_step: f64) -> f64 {
    let d = central_difference(f, x, rel_step);
    x * d / f(x)
}
