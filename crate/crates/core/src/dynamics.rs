//! The nonlinear Euler-Phillips system in the unemployment-inflation plane.
//!
//! State is `(u, π)`. The Euler equation comes from optimal saving with
//! wealth in the utility; the Phillips equation from optimal pricing under
//! (possibly asymmetric) quadratic price-adjustment costs:
//!
//! ```text
//! u̇ = (1 − u) · { δ − [ i − π + σ(1 − u)l ] }
//! π̇ = δ(π − π*) − (1/κ) · [ 1 − (u/v(u)) · (1 − u − v(u))/(1 − 2u) ]
//! ```
//!
//! with `i = intercept + φ(π − π*)` and `κ = κ⁻` below the inflation norm,
//! `κ⁺` above it.

use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::market;
use crate::numeric;
use serde::{Deserialize, Serialize};

/// Household preferences and price-adjustment costs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preferences {
    /// Time discount rate δ (> 0, per year).
    pub delta: f64,
    /// Marginal utility of wealth σ (≥ 0).
    pub sigma: f64,
    /// Inflation norm π* (per year).
    pub pi_star: f64,
    /// Price-increase adjustment cost κ⁺ (> 0), binding when π > π*.
    pub kappa_plus: f64,
    /// Price-decrease adjustment cost κ⁻ (> 0), binding when π < π*.
    pub kappa_minus: f64,
    /// Labor force l (> 0).
    pub labor_force: f64,
}

impl Preferences {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "discount rate must be positive, got delta = {}",
                self.delta
            )));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidParams(format!(
                "marginal utility of wealth must be nonnegative, got sigma = {}",
                self.sigma
            )));
        }
        if !(self.kappa_plus > 0.0) || !(self.kappa_minus > 0.0) {
            return Err(Error::InvalidParams(format!(
                "price-adjustment costs must be positive, got kappa_plus = {}, kappa_minus = {}",
                self.kappa_plus, self.kappa_minus
            )));
        }
        if self.kappa_minus < self.kappa_plus {
            return Err(Error::InvalidParams(format!(
                "need kappa_minus >= kappa_plus, got kappa_minus = {}, kappa_plus = {}",
                self.kappa_minus, self.kappa_plus
            )));
        }
        if !(self.labor_force > 0.0) || !self.labor_force.is_finite() {
            return Err(Error::InvalidParams(format!(
                "labor force must be positive, got l = {}",
                self.labor_force
            )));
        }
        if !self.pi_star.is_finite() {
            return Err(Error::InvalidParams("pi_star must be finite".into()));
        }
        Ok(())
    }

    /// `true` when the adjustment cost is asymmetric.
    pub fn kinked(&self) -> bool {
        self.kappa_minus != self.kappa_plus
    }

    /// Cost parameter for the branch containing `pi`. At `π = π*` both
    /// branches give the same right-hand side; `κ⁺` is used by convention.
    pub fn kappa_at(&self, pi: f64) -> f64 {
        if pi < self.pi_star {
            self.kappa_minus
        } else {
            self.kappa_plus
        }
    }
}

/// Monetary policy: a Taylor rule `i = intercept + φ(π − π*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    /// Nominal rate when inflation is on target.
    pub intercept: f64,
    /// Response to inflation: active when φ > 1, passive when 0 ≤ φ ≤ 1.
    pub phi: f64,
    /// Clamp the rule at zero when set.
    pub enforce_zlb: bool,
}

impl Policy {
    pub fn validate(&self) -> Result<()> {
        if !(self.phi >= 0.0) || !self.phi.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Taylor coefficient must be nonnegative, got phi = {}",
                self.phi
            )));
        }
        if !self.intercept.is_finite() {
            return Err(Error::InvalidParams(
                "policy intercept must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Nominal rate at inflation `pi`.
    pub fn rate(&self, pi: f64, pi_star: f64) -> f64 {
        let i = self.intercept + self.phi * (pi - pi_star);
        if self.enforce_zlb {
            i.max(0.0)
        } else {
            i
        }
    }
}

/// A point in the unemployment-inflation plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyState {
    pub u: f64,
    pub pi: f64,
}

impl EconomyState {
    pub fn new(u: f64, pi: f64) -> Self {
        Self { u, pi }
    }
}

fn check_u(u: f64) -> Result<()> {
    if !u.is_finite() || u <= 0.0 || u >= 0.5 {
        return Err(Error::OutOfRange {
            name: "u",
            value: u,
            min: 0.0,
            max: 0.5,
        });
    }
    Ok(())
}

/// Labor-market inefficiency term of the Phillips equation:
/// `1 − (u/v(u)) · (1 − u − v(u))/(1 − 2u)`.
///
/// Zero at `u = u*`, positive when the market is tight (`v > u`), negative
/// when slack (`v < u`).
pub fn phillips_bracket(u: f64, matching: &market::MatchingParams) -> Result<f64> {
    check_u(u)?;
    let v = market::beveridge_v_of_u(u, matching)?;
    if u + v >= 1.0 {
        return Err(Error::Infeasible(format!(
            "u + v(u) = {} leaves no producers",
            u + v
        )));
    }
    Ok(1.0 - (u / v) * (1.0 - u - v) / (1.0 - 2.0 * u))
}

/// `u̇` at `state` under the configured Taylor rule.
pub fn euler_rhs(state: &EconomyState, config: &ModelConfig) -> Result<f64> {
    check_u(state.u)?;
    let p = &config.prefs;
    let i = config.policy.rate(state.pi, p.pi_star);
    let hedonic = p.sigma * (1.0 - state.u) * p.labor_force;
    Ok((1.0 - state.u) * (p.delta - (i - state.pi + hedonic)))
}

/// `π̇` at `state`, selecting the adjustment-cost branch from the sign of
/// `π − π*`.
pub fn phillips_rhs(state: &EconomyState, config: &ModelConfig) -> Result<f64> {
    let p = &config.prefs;
    let bracket = phillips_bracket(state.u, &config.matching)?;
    let kappa = p.kappa_at(state.pi);
    Ok(p.delta * (state.pi - p.pi_star) - bracket / kappa)
}

/// The `u̇ = 0` locus: unemployment on the Euler curve at inflation `pi`.
///
/// Errors with [`Error::DegenerateEulerCurve`] when `σ = 0`, reporting the
/// horizontal locus `π = i − δ` (solved through the Taylor rule when φ ≠ 1).
pub fn euler_curve_u(pi: f64, config: &ModelConfig) -> Result<f64> {
    let p = &config.prefs;
    let pol = &config.policy;
    if p.sigma == 0.0 {
        // pi = i - delta with i = intercept + phi (pi - pi*) pins inflation.
        let pinned = if pol.phi != 1.0 {
            (pol.intercept - pol.phi * p.pi_star - p.delta) / (1.0 - pol.phi)
        } else {
            f64::NAN
        };
        return Err(Error::DegenerateEulerCurve { pi: pinned });
    }
    let i = pol.rate(pi, p.pi_star);
    Ok(1.0 - (p.delta - i + pi) / (p.sigma * p.labor_force))
}

/// Residual of the steady-state Phillips curve at `state`:
/// `κδ(π − π*) − [1 − (u/v)(1 − u − v)/(1 − 2u)]`.
pub fn phillips_curve_residual(state: &EconomyState, config: &ModelConfig) -> Result<f64> {
    let p = &config.prefs;
    let bracket = phillips_bracket(state.u, &config.matching)?;
    let kappa = p.kappa_at(state.pi);
    Ok(kappa * p.delta * (state.pi - p.pi_star) - bracket)
}

/// Inflation on the steady-state Phillips curve at unemployment `u`.
///
/// The branch is selected consistently: a tight market (`u < u*`) puts the
/// curve above the norm (κ⁺ branch), a slack market below it (κ⁻ branch).
pub fn phillips_curve_pi(u: f64, config: &ModelConfig) -> Result<f64> {
    let p = &config.prefs;
    let bracket = phillips_bracket(u, &config.matching)?;
    let kappa = if bracket >= 0.0 {
        p.kappa_plus
    } else {
        p.kappa_minus
    };
    Ok(p.pi_star + bracket / (kappa * p.delta))
}

/// Unemployment on the steady-state Phillips curve at inflation `pi`,
/// found by bisection (the bracket term is strictly decreasing in `u`).
pub fn phillips_curve_u(pi: f64, config: &ModelConfig) -> Result<f64> {
    let p = &config.prefs;
    let kappa = p.kappa_at(pi);
    let target = kappa * p.delta * (pi - p.pi_star);
    // Keep u + v(u) < 1: the bracket is defined on (u_min, 1/2).
    let matching = &config.matching;
    let r = matching.ratio();
    // u + r^2/u = 1 at u = (1 - sqrt(1 - 4r^2))/2; stay strictly inside.
    let u_min = (0.5 * (1.0 - (1.0 - 4.0 * r * r).sqrt())) * (1.0 + 1e-9);
    let u_max = 0.5 * (1.0 - 1e-9);
    numeric::bisect(
        |u| target - phillips_bracket(u, matching).unwrap_or(f64::NAN),
        u_min,
        u_max,
        1e-14,
    )
}

/// Result of [`efficient_nominal_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficientRate {
    /// `i* = π* + δ − σ(1 − u*)l`.
    pub i_star: f64,
    /// Set when `i* < 0`: the divine steady state would violate the zero
    /// lower bound.
    pub zlb_violation: bool,
}

/// The nominal rate that places the divine steady state on the Euler curve.
pub fn efficient_nominal_rate(config: &ModelConfig) -> EfficientRate {
    let p = &config.prefs;
    let u_star = config.matching.ratio();
    let i_star = p.pi_star + p.delta - p.sigma * (1.0 - u_star) * p.labor_force;
    EfficientRate {
        i_star,
        zlb_violation: i_star < 0.0,
    }
}

/// Why an integration run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrationStatus {
    /// Reached `t_end`.
    Completed,
    /// The state left the model domain; `t` is the last valid time.
    DomainExit { t: f64 },
}

/// A time series of `(t, u, π)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<(f64, f64, f64)>,
    pub status: IntegrationStatus,
}

const DOMAIN_MARGIN: f64 = 1e-6;

fn in_domain(state: &EconomyState, config: &ModelConfig) -> bool {
    if !(state.u > DOMAIN_MARGIN && state.u < 0.5 - DOMAIN_MARGIN) || !state.pi.is_finite() {
        return false;
    }
    match market::beveridge_v_of_u(state.u, &config.matching) {
        Ok(v) => state.u + v < 1.0,
        Err(_) => false,
    }
}

fn rhs(state: &EconomyState, config: &ModelConfig) -> Result<(f64, f64)> {
    Ok((euler_rhs(state, config)?, phillips_rhs(state, config)?))
}

fn rk4_step(state: &EconomyState, config: &ModelConfig, dt: f64) -> Result<EconomyState> {
    let s = |u: f64, pi: f64| EconomyState { u, pi };
    let k1 = rhs(state, config)?;
    let k2 = rhs(
        &s(state.u + 0.5 * dt * k1.0, state.pi + 0.5 * dt * k1.1),
        config,
    )?;
    let k3 = rhs(
        &s(state.u + 0.5 * dt * k2.0, state.pi + 0.5 * dt * k2.1),
        config,
    )?;
    let k4 = rhs(&s(state.u + dt * k3.0, state.pi + dt * k3.1), config)?;
    Ok(s(
        state.u + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        state.pi + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    ))
}

/// Fixed-step RK4 integration of the Euler-Phillips system.
///
/// When the adjustment cost is kinked and a step crosses `π = π*`, the
/// crossing time is located by bisection and the step is split there, so
/// each RK4 step sees a smooth right-hand side. Leaving the model domain is
/// reported as a normal [`IntegrationStatus::DomainExit`], not an error
/// (trajectories of a source are expected to diverge).
pub fn integrate(
    state0: &EconomyState,
    config: &ModelConfig,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    if !(dt > 0.0) || !dt.is_finite() || !(t_end >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "need dt > 0 and t_end >= 0, got dt = {dt}, t_end = {t_end}"
        )));
    }
    check_u(state0.u)?;
    let kinked = config.prefs.kinked();
    let pi_star = config.prefs.pi_star;
    let mut points = Vec::with_capacity((t_end / dt).ceil() as usize + 1);
    let mut t = 0.0;
    let mut state = *state0;
    points.push((t, state.u, state.pi));
    while t < t_end - 1e-12 * t_end.max(1.0) {
        let step = dt.min(t_end - t);
        if !in_domain(&state, config) {
            return Ok(Trajectory {
                points,
                status: IntegrationStatus::DomainExit { t },
            });
        }
        let next = match rk4_step(&state, config, step) {
            Ok(n) => n,
            Err(Error::OutOfRange { .. }) | Err(Error::Infeasible(_)) => {
                // A stage left the domain mid-step.
                return Ok(Trajectory {
                    points,
                    status: IntegrationStatus::DomainExit { t },
                });
            }
            Err(e) => return Err(e),
        };
        if !next.u.is_finite() || !next.pi.is_finite() {
            return Err(Error::StepFailure { t });
        }
        let crosses = kinked
            && (state.pi - pi_star).signum() != (next.pi - pi_star).signum()
            && state.pi != pi_star;
        if crosses {
            // Locate the crossing time within the step and land exactly on it.
            let base = state;
            let cross_dt = numeric::bisect(
                |h| {
                    if h == 0.0 {
                        return base.pi - pi_star;
                    }
                    match rk4_step(&base, config, h) {
                        Ok(s) => s.pi - pi_star,
                        Err(_) => f64::NAN,
                    }
                },
                0.0,
                step,
                1e-15 * step.max(1.0),
            )?;
            if cross_dt > 0.0 {
                state = rk4_step(&base, config, cross_dt)?;
                // Place the state exactly on the kink so the next step picks
                // one branch cleanly.
                state.pi = pi_star;
                t += cross_dt;
                points.push((t, state.u, state.pi));
                continue;
            }
        }
        state = next;
        t += step;
        points.push((t, state.u, state.pi));
        if !in_domain(&state, config) {
            return Ok(Trajectory {
                points,
                status: IntegrationStatus::DomainExit { t },
            });
        }
    }
    Ok(Trajectory {
        points,
        status: IntegrationStatus::Completed,
    })
}
