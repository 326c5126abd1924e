//! A self-check suite over the model invariants, runnable from the CLI.
//! Each check re-derives a property numerically (grid searches, finite
//! differences, residuals) rather than trusting the closed forms it tests.

use crate::config::ModelConfig;
use crate::dynamics::{self, EconomyState};
use crate::error::Result;
use crate::linear::{self, PhillipsBranch, SystemKind};
use crate::numeric;
use crate::{market, scenario};

/// Outcome of one invariant check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs all invariant checks against `config`. Checks never abort the
/// suite; a check that cannot run (e.g. a domain error) is reported as
/// failed with the error message.
type Check = fn(&ModelConfig) -> Result<(bool, String)>;

pub fn run_all(config: &ModelConfig) -> Vec<CheckResult> {
    let checks: &[(&'static str, Check)] = &[
        ("efficiency-at-unit-tightness", check_efficiency),
        ("beveridge-hyperbola", check_hyperbola),
        ("unemployment-elasticity", check_elasticity),
        ("divine-point-residuals", check_divine_residuals),
        ("steady-state-is-source", check_classification),
        ("jacobian-matches-linearization", check_jacobian),
        ("phillips-quadrant-signs", check_phillips_signs),
        ("kink-slope-ratio", check_kink_ratio),
        ("shock-sign-structure", check_shock_signs),
        ("integrator-order", check_integrator_order),
    ];
    checks
        .iter()
        .map(|&(name, f)| match f(config) {
            Ok((passed, detail)) => CheckResult {
                name,
                passed,
                detail,
            },
            Err(e) => CheckResult {
                name,
                passed: false,
                detail: format!("check failed to run: {e}"),
            },
        })
        .collect()
}

/// True when every check passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn check_efficiency(config: &ModelConfig) -> Result<(bool, String)> {
    let m = &config.matching;
    let u_star = config.u_star();
    // Grid search: u + v minimized at theta = 1 along the Beveridge curve.
    let mut best = (f64::INFINITY, 0.0);
    let bounds = market::tightness_bounds(m);
    for k in 1..2000 {
        let theta = bounds.lower + (bounds.upper - bounds.lower) * k as f64 / 2000.0;
        let u = market::unemployment_rate(theta, m)?;
        let v = market::beveridge_v_of_u(u, m)?;
        if u + v < best.0 {
            best = (u + v, theta);
        }
    }
    let eff = market::efficient_allocation(m);
    let ok = (eff.theta_star - 1.0).abs() < 1e-12
        && (eff.u_star - u_star).abs() < 1e-12
        && (best.1 - 1.0).abs() < bounds.upper / 1000.0;
    Ok((
        ok,
        format!("u* = {:.6}, grid argmin theta = {:.4}", eff.u_star, best.1),
    ))
}

fn check_hyperbola(config: &ModelConfig) -> Result<(bool, String)> {
    let m = &config.matching;
    let target = m.ratio() * m.ratio();
    let mut worst: f64 = 0.0;
    for k in 1..500 {
        let u = 0.499 * k as f64 / 500.0;
        if let Ok(v) = market::beveridge_v_of_u(u, m) {
            worst = worst.max((u * v - target).abs());
        }
    }
    Ok((
        worst < 1e-15,
        format!("max |uv - (s/omega)^2| = {worst:.3e}"),
    ))
}

fn check_elasticity(config: &ModelConfig) -> Result<(bool, String)> {
    let m = config.matching;
    let mut worst: f64 = 0.0;
    let bounds = market::tightness_bounds(&m);
    for k in 1..100 {
        let theta = bounds.lower * (bounds.upper / bounds.lower).powf(k as f64 / 100.0) * 0.999;
        let e = market::elasticities(theta, &m)?;
        let fd =
            numeric::fd_elasticity(&|t| market::unemployment_rate(t, &m).unwrap(), theta, 1e-6);
        worst = worst.max((e.unemployment - fd).abs());
        worst = worst.max((e.unemployment + 0.5).abs());
    }
    Ok((
        worst < 1e-6,
        format!("max elasticity deviation = {worst:.3e}"),
    ))
}

fn check_divine_residuals(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let divine = EconomyState::new(cfg.u_star(), cfg.prefs.pi_star);
    let e = dynamics::euler_rhs(&divine, &cfg)?;
    let p = dynamics::phillips_rhs(&divine, &cfg)?;
    Ok((
        e.abs() < 1e-12 && p.abs() < 1e-12,
        format!("|du| = {:.3e}, |dpi| = {:.3e}", e.abs(), p.abs()),
    ))
}

fn check_classification(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let lin = linear::linearize(&cfg)?;
    let cls = linear::classify(&lin);
    let cond = linear::sigma_condition(&cfg);
    let is_source = matches!(cls.kind, SystemKind::Source | SystemKind::SpiralSource);
    let consistent = is_source == cond.holds || config.policy.phi > 1.0;
    Ok((
        is_source && consistent,
        format!(
            "{} (trace {:.4e}, det {:.4e}); sigma condition holds: {}",
            cls.kind, cls.trace, cls.determinant, cond.holds
        ),
    ))
}

fn check_jacobian(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let lin = linear::linearize(&cfg)?;
    let u0 = cfg.u_star();
    let pi0 = cfg.prefs.pi_star;
    let h = 1e-7;
    // Finite-difference Jacobian on the tight side of the kink.
    let f = |u: f64, pi: f64| -> Result<(f64, f64)> {
        let s = EconomyState::new(u, pi);
        Ok((
            dynamics::euler_rhs(&s, &cfg)?,
            dynamics::phillips_rhs(&s, &cfg)?,
        ))
    };
    let (e_up, p_up) = f(u0 + h, pi0 + h * 1e-3)?;
    let (e_dn, p_dn) = f(u0 - h, pi0 + h * 1e-3)?;
    let a11 = (e_up - e_dn) / (2.0 * h);
    let a21 = (p_up - p_dn) / (2.0 * h);
    let (e_up, p_up) = f(u0, pi0 + h)?;
    let (e_dn, p_dn) = f(u0, pi0 + h * 1e-3)?;
    let a12 = (e_up - e_dn) / (h - h * 1e-3);
    let a22 = (p_up - p_dn) / (h - h * 1e-3);
    let worst = [
        (a11 - lin.a11).abs(),
        (a12 - lin.a12).abs(),
        (a21 - lin.a21_tight).abs() / lin.a21_tight.abs().max(1.0),
        (a22 - lin.a22).abs(),
    ]
    .into_iter()
    .fold(0.0_f64, f64::max);
    Ok((
        worst < 1e-5,
        format!("max Jacobian deviation = {worst:.3e}"),
    ))
}

fn check_phillips_signs(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let u_star = cfg.u_star();
    let mut checked = 0;
    for k in 0..20 {
        let u = (0.5 + k as f64 / 10.0) * u_star;
        if u >= 0.5 {
            break;
        }
        let Ok(pi_on) = dynamics::phillips_curve_pi(u, &cfg) else {
            continue;
        };
        for dpi in [2e-3, -2e-3] {
            let s = EconomyState::new(u, pi_on + dpi);
            let r = dynamics::phillips_rhs(&s, &cfg)?;
            if r.signum() != dpi.signum() {
                return Ok((
                    false,
                    format!("pi-dot sign {} above/below curve at u = {u}", r.signum()),
                ));
            }
            checked += 1;
        }
    }
    Ok((checked > 0, format!("{checked} sampled points consistent")))
}

fn check_kink_ratio(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let lin = linear::linearize(&cfg)?;
    let ratio = lin.a21_tight / lin.a21_slack;
    let expected = cfg.prefs.kappa_minus / cfg.prefs.kappa_plus;
    Ok((
        (ratio - expected).abs() < 1e-12 * expected,
        format!("branch slope ratio = {ratio:.6}"),
    ))
}

fn check_shock_signs(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let lin = linear::linearize(&cfg)?;
    let source = [PhillipsBranch::Tight, PhillipsBranch::Slack]
        .iter()
        .all(|&b| {
            matches!(
                linear::classify_branch(&lin, b).kind,
                SystemKind::Source | SystemKind::SpiralSource
            )
        });
    if !source {
        return Ok((true, "skipped: steady state is not a source".into()));
    }
    let res = scenario::apply_demand_shock(&cfg, scenario::Shock::DemandRateIntercept(1e-3))?;
    let ok = res.u_hat > 0.0 && res.pi_hat < 0.0;
    Ok((
        ok,
        format!(
            "tighter money: u_hat = {:+.3e}, pi_hat = {:+.3e}",
            res.u_hat, res.pi_hat
        ),
    ))
}

fn check_integrator_order(config: &ModelConfig) -> Result<(bool, String)> {
    let cfg = config.clone().with_efficient_intercept();
    let start = EconomyState::new(cfg.u_star() * 1.1, cfg.prefs.pi_star + 1e-3);
    let end_u = |dt: f64| -> Result<f64> {
        let t = dynamics::integrate(&start, &cfg, 1.0, dt)?;
        Ok(t.points.last().unwrap().1)
    };
    let fine = end_u(1e-4)?;
    let e1 = (end_u(2e-2)? - fine).abs();
    let e2 = (end_u(1e-2)? - fine).abs();
    let ratio = e1 / e2.max(1e-300);
    // Fourth order: halving the step cuts the error by about 16.
    let ok = e2 < 1e-12 || (8.0..40.0).contains(&ratio);
    Ok((ok, format!("error ratio on step halving = {ratio:.1}")))
}
