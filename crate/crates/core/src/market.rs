//! Labor-market primitives derived from the matching function
//! `h(U, V) = ω√(UV) − sU`.
//!
//! Everything here is a closed form in tightness `θ = V/U` (or in the
//! unemployment rate `u`), valid on `θ ∈ [θ̲, θ̄)` where the lower bound
//! keeps the matching function increasing in `U` and the upper bound is the
//! pole of the recruiter-producer ratio.

use crate::error::{Error, Result};
use crate::numeric;
use serde::{Deserialize, Serialize};

/// Job-separation rate `s` and matching efficacy `ω`, both per year.
///
/// The maintained assumption is `ω > 2s`, which puts the efficient
/// unemployment rate `u* = s/ω` in `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchingParams {
    pub s: f64,
    pub omega: f64,
}

impl MatchingParams {
    pub fn new(s: f64, omega: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParams(format!(
                "separation rate must be positive, got s = {s}"
            )));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParams(format!(
                "matching efficacy must be positive, got omega = {omega}"
            )));
        }
        if omega <= 2.0 * s {
            return Err(Error::InvalidParams(format!(
                "need omega > 2s, got omega = {omega}, s = {s}"
            )));
        }
        Ok(Self { s, omega })
    }

    /// `s/ω`, the efficient unemployment (and recruiting) rate.
    pub fn ratio(&self) -> f64 {
        self.s / self.omega
    }
}

/// The admissible tightness range `[lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `θ̲ = 4(s/ω)²`, below which the matching function decreases in `U`.
pub fn lower_tightness_bound(p: &MatchingParams) -> f64 {
    let r = p.ratio();
    4.0 * r * r
}

/// `θ̄ = θ̲ / (1 − √(1 − θ̲))²`, the tightness at which `q(θ̄) = s` and the
/// recruiter-producer ratio diverges.
pub fn upper_tightness_bound(p: &MatchingParams) -> f64 {
    let lo = lower_tightness_bound(p);
    let d = 1.0 - (1.0 - lo).sqrt();
    lo / (d * d)
}

pub fn tightness_bounds(p: &MatchingParams) -> TightnessBounds {
    TightnessBounds {
        lower: lower_tightness_bound(p),
        upper: upper_tightness_bound(p),
    }
}

fn check_theta_lower(theta: f64, p: &MatchingParams) -> Result<()> {
    let lo = lower_tightness_bound(p);
    if !theta.is_finite() || theta < lo {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            min: lo,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

fn check_theta_range(theta: f64, p: &MatchingParams) -> Result<()> {
    let b = tightness_bounds(p);
    if !theta.is_finite() || theta < b.lower || theta >= b.upper {
        return Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            min: b.lower,
            max: b.upper,
        });
    }
    Ok(())
}

/// Customer-finding rate `f(θ) = ω√θ − s`.
///
/// Increasing on `[θ̲, ∞)` with `f(θ̲) = s`.
pub fn customer_finding_rate(theta: f64, p: &MatchingParams) -> Result<f64> {
    check_theta_lower(theta, p)?;
    Ok(p.omega * theta.sqrt() - p.s)
}

/// Worker-finding rate `q(θ) = ω/√θ − s/θ`.
///
/// Decreasing on `[θ̲, ∞)`, with `q(θ̲) = ω²/4s` and `f(θ) = θ q(θ)`.
pub fn worker_finding_rate(theta: f64, p: &MatchingParams) -> Result<f64> {
    check_theta_lower(theta, p)?;
    Ok(p.omega / theta.sqrt() - p.s / theta)
}

/// Unemployment rate under balanced flows: `u(θ) = (s/ω)/√θ`.
pub fn unemployment_rate(theta: f64, p: &MatchingParams) -> Result<f64> {
    check_theta_lower(theta, p)?;
    Ok(p.ratio() / theta.sqrt())
}

/// Beveridge curve: `v(u) = (s/ω)²/u`, a rectangular hyperbola.
pub fn beveridge_v_of_u(u: f64, p: &MatchingParams) -> Result<f64> {
    if !u.is_finite() || u <= 0.0 || u > 0.5 {
        return Err(Error::OutOfRange {
            name: "u",
            value: u,
            min: 0.0,
            max: 0.5,
        });
    }
    let r = p.ratio();
    Ok(r * r / u)
}

/// Recruiting rate `v(θ) = (s/ω)√θ`.
pub fn recruiting_rate(theta: f64, p: &MatchingParams) -> Result<f64> {
    check_theta_lower(theta, p)?;
    Ok(p.ratio() * theta.sqrt())
}

/// Recruiter-producer ratio `τ(θ) = s/(q(θ) − s)`.
///
/// Increasing on `[θ̲, θ̄)` with a pole at `θ̄`.
pub fn recruiter_producer_ratio(theta: f64, p: &MatchingParams) -> Result<f64> {
    check_theta_range(theta, p)?;
    let q = worker_finding_rate(theta, p)?;
    Ok(p.s / (q - p.s))
}

/// Recruiter-producer ratio from the unemployment side:
/// `τ(u) = v(u) / (1 − u − v(u))`.
pub fn recruiter_producer_from_u(u: f64, p: &MatchingParams) -> Result<f64> {
    let v = beveridge_v_of_u(u, p)?;
    let producers = 1.0 - u - v;
    if producers <= 0.0 {
        return Err(Error::Infeasible(format!(
            "u + v(u) = {} leaves no producers",
            u + v
        )));
    }
    Ok(v / producers)
}

/// The five elasticities with respect to tightness (and, for the demand
/// curve, with respect to the posted price).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Elasticities {
    /// Customer-finding rate: `(1/2)/(1 − u)`.
    pub customer_finding: f64,
    /// Worker-finding rate: `E_f − 1`.
    pub worker_finding: f64,
    /// Unemployment rate: exactly `−1/2`.
    pub unemployment: f64,
    /// Recruiter-producer ratio: `(1/2)(1 − 2u)/(1 − u − v)`.
    pub recruiter_producer: f64,
    /// Demand curve `θⱼ(pⱼ)`: `−(1 − u)/(τ (1/2 − u))`.
    pub demand: f64,
}

pub fn elasticities(theta: f64, p: &MatchingParams) -> Result<Elasticities> {
    check_theta_range(theta, p)?;
    let u = unemployment_rate(theta, p)?;
    let v = recruiting_rate(theta, p)?;
    let tau = recruiter_producer_ratio(theta, p)?;
    let e_f = 0.5 / (1.0 - u);
    Ok(Elasticities {
        customer_finding: e_f,
        worker_finding: e_f - 1.0,
        unemployment: -0.5,
        recruiter_producer: 0.5 * (1.0 - 2.0 * u) / (1.0 - u - v),
        demand: -(1.0 - u) / (tau * (0.5 - u)),
    })
}

/// Whether the labor market is slack, efficient, or tight at a point on the
/// Beveridge curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TightnessRegime {
    InefficientlySlack,
    Efficient,
    InefficientlyTight,
}

impl TightnessRegime {
    /// Tight iff there are more recruiters than jobseekers (`v > u`).
    pub fn from_rates(u: f64, v: f64) -> Self {
        if v > u {
            TightnessRegime::InefficientlyTight
        } else if v < u {
            TightnessRegime::InefficientlySlack
        } else {
            TightnessRegime::Efficient
        }
    }
}

impl std::fmt::Display for TightnessRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TightnessRegime::InefficientlySlack => "inefficiently-slack",
            TightnessRegime::Efficient => "efficient",
            TightnessRegime::InefficientlyTight => "inefficiently-tight",
        };
        f.write_str(s)
    }
}

/// The allocation minimizing `u + v(u)` on the Beveridge curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Allocation {
    pub u_star: f64,
    pub v_star: f64,
    pub theta_star: f64,
    pub tightness_regime: TightnessRegime,
}

/// Productive efficiency: `u* = v* = s/ω`, `θ* = 1`.
pub fn efficient_allocation(p: &MatchingParams) -> Allocation {
    let r = p.ratio();
    Allocation {
        u_star: r,
        v_star: r,
        theta_star: 1.0,
        tightness_regime: TightnessRegime::Efficient,
    }
}

/// Tightness faced by a seller posting price `p_own` when the aggregate
/// market is at `(p_agg, theta_agg)`:
/// `θⱼ = τ⁻¹((p_agg/p_own)(1 + τ(θ_agg)) − 1)`.
///
/// `τ` is strictly increasing on `[θ̲, θ̄)` so the inverse is computed by
/// bisection; the upper bracket is clamped just below the pole at `θ̄`.
pub fn demand_tightness(p_own: f64, p_agg: f64, theta_agg: f64, p: &MatchingParams) -> Result<f64> {
    if !(p_own > 0.0) || !(p_agg > 0.0) || !p_own.is_finite() || !p_agg.is_finite() {
        return Err(Error::OutOfRange {
            name: "price",
            value: p_own.min(p_agg),
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    let tau_agg = recruiter_producer_ratio(theta_agg, p)?;
    if p_own == p_agg {
        return Ok(theta_agg);
    }
    let target = (p_agg / p_own) * (1.0 + tau_agg) - 1.0;
    if !target.is_finite() || target <= 0.0 {
        return Err(Error::NoSolution(format!(
            "implied recruiter-producer target {target} is not positive"
        )));
    }
    let b = tightness_bounds(p);
    let hi = b.upper * (1.0 - 1e-9);
    let tau_lo = recruiter_producer_ratio(b.lower, p)?;
    if target <= tau_lo {
        return Err(Error::NoSolution(format!(
            "target {target} below tau(theta_lower) = {tau_lo}"
        )));
    }
    let tau_hi = recruiter_producer_ratio(hi, p)?;
    if target >= tau_hi {
        // Price low enough that the implied ratio exceeds anything sustainable:
        // tightness saturates at the upper bound.
        return Ok(hi);
    }
    numeric::bisect(
        |theta| recruiter_producer_ratio(theta, p).unwrap_or(f64::INFINITY) - target,
        b.lower,
        hi,
        1e-12,
    )
}
