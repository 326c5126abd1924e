//! Comparative statics for unexpected permanent shocks.
//!
//! The linearized system is a source, so after an unexpected permanent
//! shock the economy jumps straight to the intersection of the new Euler
//! and (possibly kinked) Phillips lines. Supply shocks move the Beveridge
//! curve and hence the divine point itself; the engine re-linearizes around
//! the new point and expresses the policy stance as an intercept shift in
//! the new coordinates.

use crate::config::ModelConfig;
use crate::dynamics::{self, EconomyState};
use crate::error::{Error, Result};
use crate::linear::{self, LinearizedSystem, PhillipsBranch, SystemKind};
use serde::Serialize;

/// An unexpected permanent shock to one model parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "magnitude", rename_all = "kebab-case")]
pub enum Shock {
    /// Change in the discount rate δ (a decrease is a negative demand shock).
    DemandDelta(f64),
    /// Change in the marginal utility of wealth σ (an increase is a
    /// negative demand shock).
    DemandSigma(f64),
    /// Change in the policy intercept (an increase is tighter money).
    DemandRateIntercept(f64),
    /// Change in the job-separation rate s (an increase is adverse).
    SupplySeparation(f64),
    /// Change in the matching efficacy ω (a decrease is adverse).
    SupplyEfficacy(f64),
}

impl Shock {
    pub fn is_demand(&self) -> bool {
        matches!(
            self,
            Shock::DemandDelta(_) | Shock::DemandSigma(_) | Shock::DemandRateIntercept(_)
        )
    }

    pub fn is_supply(&self) -> bool {
        !self.is_demand()
    }

    /// The post-shock configuration, keeping the policy intercept fixed.
    pub fn apply(&self, config: &ModelConfig) -> Result<ModelConfig> {
        let mut post = config.clone();
        match *self {
            Shock::DemandDelta(m) => post.prefs.delta += m,
            Shock::DemandSigma(m) => post.prefs.sigma += m,
            Shock::DemandRateIntercept(m) => post.policy.intercept += m,
            Shock::SupplySeparation(m) => post.matching.s += m,
            Shock::SupplyEfficacy(m) => post.matching.omega += m,
        }
        post.validate()?;
        Ok(post)
    }
}

/// Whether the Taylor rule responds more than one-for-one to inflation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyMode {
    Active,
    Passive,
}

impl PolicyMode {
    pub fn from_phi(phi: f64) -> Self {
        if phi > 1.0 {
            PolicyMode::Active
        } else {
            PolicyMode::Passive
        }
    }
}

/// Which side of the kink the post-shock solution landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchUsed {
    Tight,
    Slack,
    AtKink,
}

impl std::fmt::Display for BranchUsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BranchUsed::Tight => "tight",
            BranchUsed::Slack => "slack",
            BranchUsed::AtKink => "at-kink",
        })
    }
}

/// Intersection of the shifted Euler line with the (piecewise) Phillips
/// line, in deviations from the expansion point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Intersection {
    pub u_hat: f64,
    pub pi_hat: f64,
    pub branch: BranchUsed,
}

fn solve_branch(
    lin: &LinearizedSystem,
    branch: PhillipsBranch,
    euler_shift: f64,
    phillips_shift: f64,
) -> Result<(f64, f64)> {
    // Euler line:    a11 u_hat + a12 pi_hat = (1 - u*) * euler_shift
    // Phillips line: a21 u_hat + a22 pi_hat = -phillips_shift
    let m = lin.matrix(branch);
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() < 1e-300 {
        return Err(Error::NoSolution("parallel curves".into()));
    }
    let b0 = (1.0 - lin.u_star) * euler_shift;
    let b1 = -phillips_shift;
    Ok((
        (b0 * m[1][1] - m[0][1] * b1) / det,
        (m[0][0] * b1 - b0 * m[1][0]) / det,
    ))
}

/// Solves for the new intersection after shifting the Euler line by
/// `euler_intercept_shift` (in units of the nominal rate: the actual policy
/// intercept minus the efficient rate of the post-shock economy) and the
/// Phillips line by `phillips_intercept_shift` (in `π̇` units).
///
/// For a kinked system the branch is selected by the sign of the resulting
/// `π̂`; an intersection that is sign-consistent on neither branch is
/// reported with both candidates rather than silently picked.
pub fn solve_intersection(
    lin: &LinearizedSystem,
    euler_intercept_shift: f64,
    phillips_intercept_shift: f64,
) -> Result<Intersection> {
    for branch in [PhillipsBranch::Tight, PhillipsBranch::Slack] {
        let kind = linear::classify_branch(lin, branch).kind;
        if !matches!(kind, SystemKind::Source | SystemKind::SpiralSource) {
            return Err(Error::AmbiguousSolution {
                kind: kind.to_string(),
            });
        }
        if !lin.kinked {
            break;
        }
    }

    if !lin.kinked {
        let (u_hat, pi_hat) = solve_branch(
            lin,
            PhillipsBranch::Tight,
            euler_intercept_shift,
            phillips_intercept_shift,
        )?;
        let branch = if pi_hat > 0.0 {
            BranchUsed::Tight
        } else if pi_hat < 0.0 {
            BranchUsed::Slack
        } else {
            BranchUsed::AtKink
        };
        return Ok(Intersection {
            u_hat,
            pi_hat,
            branch,
        });
    }

    let tight = solve_branch(
        lin,
        PhillipsBranch::Tight,
        euler_intercept_shift,
        phillips_intercept_shift,
    )?;
    let slack = solve_branch(
        lin,
        PhillipsBranch::Slack,
        euler_intercept_shift,
        phillips_intercept_shift,
    )?;
    let tight_ok = tight.1 >= 0.0;
    let slack_ok = slack.1 <= 0.0;
    match (tight_ok, slack_ok) {
        (true, false) => Ok(Intersection {
            u_hat: tight.0,
            pi_hat: tight.1,
            branch: if tight.1 == 0.0 {
                BranchUsed::AtKink
            } else {
                BranchUsed::Tight
            },
        }),
        (false, true) => Ok(Intersection {
            u_hat: slack.0,
            pi_hat: slack.1,
            branch: BranchUsed::Slack,
        }),
        (true, true) => {
            // Both candidates sit on the kink itself.
            if tight.1 == 0.0 {
                Ok(Intersection {
                    u_hat: tight.0,
                    pi_hat: 0.0,
                    branch: BranchUsed::AtKink,
                })
            } else {
                Err(Error::InconsistentBranch {
                    tight_u_hat: tight.0,
                    tight_pi_hat: tight.1,
                    slack_u_hat: slack.0,
                    slack_pi_hat: slack.1,
                })
            }
        }
        (false, false) => Err(Error::InconsistentBranch {
            tight_u_hat: tight.0,
            tight_pi_hat: tight.1,
            slack_u_hat: slack.0,
            slack_pi_hat: slack.1,
        }),
    }
}

/// Outcome of a comparative-statics experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScenarioResult {
    /// Pre-shock state in levels (the old divine point).
    pub before: EconomyState,
    /// Post-shock state in levels.
    pub after: EconomyState,
    pub u_star_before: f64,
    pub u_star_after: f64,
    /// Gap `u − u*` against the post-shock efficient rate.
    pub u_hat: f64,
    /// Gap `π − π*`.
    pub pi_hat: f64,
    /// Tightness gap `θ − 1` at the post-shock state.
    pub tightness_gap: f64,
    pub branch_used: BranchUsed,
    pub policy_mode: PolicyMode,
}

fn run_scenario(config: &ModelConfig, post: ModelConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let u_star_before = config.u_star();
    let pi_star = config.prefs.pi_star;
    let u_star_after = post.u_star();

    // Re-linearize around the post-shock divine point; the fixed policy
    // intercept shows up as an Euler-line shift in the new coordinates.
    let i_star_post = dynamics::efficient_nominal_rate(&post).i_star;
    let euler_shift = post.policy.intercept - i_star_post;
    let mut lin_config = post.clone();
    lin_config.policy.intercept = i_star_post;
    let lin = linear::linearize(&lin_config)?;

    let inter = solve_intersection(&lin, euler_shift, 0.0)?;
    let after = EconomyState::new(u_star_after + inter.u_hat, pi_star + inter.pi_hat);
    // theta from u via u = (s/omega)/sqrt(theta).
    let ratio = post.matching.ratio();
    let theta_after = (ratio / after.u).powi(2);
    Ok(ScenarioResult {
        before: EconomyState::new(u_star_before, pi_star),
        after,
        u_star_before,
        u_star_after,
        u_hat: inter.u_hat,
        pi_hat: inter.pi_hat,
        tightness_gap: theta_after - 1.0,
        branch_used: inter.branch,
        policy_mode: PolicyMode::from_phi(post.policy.phi),
    })
}

/// Applies a demand shock. The efficient unemployment rate is unchanged;
/// the Euler line shifts.
pub fn apply_demand_shock(config: &ModelConfig, shock: Shock) -> Result<ScenarioResult> {
    if !shock.is_demand() {
        return Err(Error::InvalidParams(format!(
            "expected a demand shock, got {shock:?}"
        )));
    }
    run_scenario(config, shock.apply(config)?)
}

/// Applies a supply shock, which moves the Beveridge curve and the divine
/// point. With `recenter_intercept` the central bank tracks the new
/// efficient rate (and the economy lands on the new divine point); without
/// it the old intercept is kept, as when the bank is unaware of the shift.
pub fn apply_supply_shock(
    config: &ModelConfig,
    shock: Shock,
    recenter_intercept: bool,
) -> Result<ScenarioResult> {
    if !shock.is_supply() {
        return Err(Error::InvalidParams(format!(
            "expected a supply shock, got {shock:?}"
        )));
    }
    let mut post = shock.apply(config)?;
    if recenter_intercept {
        post.policy.intercept = dynamics::efficient_nominal_rate(&post).i_star;
    }
    run_scenario(config, post)
}

/// Inflation responses to demand shocks of equal size and opposite signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinkAsymmetry {
    /// `π̂` after an expansionary intercept cut of `magnitude`.
    pub pi_hat_expansionary: f64,
    /// `π̂` after a contractionary intercept rise of `magnitude`.
    pub pi_hat_contractionary: f64,
    /// `|π̂(expansionary)| / |π̂(contractionary)|`; above 1 when `κ⁻ > κ⁺`
    /// (inflation moves more when the economy turns tight).
    pub ratio: f64,
}

/// Compares the inflation response to `±magnitude` intercept shocks.
pub fn kink_asymmetry_report(config: &ModelConfig, magnitude: f64) -> Result<KinkAsymmetry> {
    if !(magnitude > 0.0) {
        return Err(Error::InvalidParams(format!(
            "shock magnitude must be positive, got {magnitude}"
        )));
    }
    let expansionary = apply_demand_shock(config, Shock::DemandRateIntercept(-magnitude))?;
    let contractionary = apply_demand_shock(config, Shock::DemandRateIntercept(magnitude))?;
    Ok(KinkAsymmetry {
        pi_hat_expansionary: expansionary.pi_hat,
        pi_hat_contractionary: contractionary.pi_hat,
        ratio: expansionary.pi_hat.abs() / contractionary.pi_hat.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{euler_rhs, phillips_rhs};
    use approx::assert_relative_eq;

    fn default_config() -> ModelConfig {
        ModelConfig::default_calibration()
    }

    fn kinked_config() -> ModelConfig {
        let mut cfg = default_config();
        cfg.prefs.kappa_minus = 120_000.0;
        cfg
    }

    #[test]
    fn zero_shift_stays_at_divine_point() {
        let lin = linear::linearize(&default_config()).unwrap();
        let i = solve_intersection(&lin, 0.0, 0.0).unwrap();
        assert_eq!(i.u_hat, 0.0);
        assert_eq!(i.pi_hat, 0.0);
        assert_eq!(i.branch, BranchUsed::AtKink);
    }

    #[test]
    fn intercept_shock_hand_solution_symmetric() {
        // u_hat = delta_i / (sigma l + (phi-1)|phillips slope|).
        let res = apply_demand_shock(&default_config(), Shock::DemandRateIntercept(0.001)).unwrap();
        let slope = 2.0 / (0.03 * 60_000.0 * 0.04) * 0.96 / 0.92;
        let u_hat_expected = 0.001 / (0.03 + 0.5 * slope);
        assert_relative_eq!(res.u_hat, u_hat_expected, max_relative = 1e-10);
        assert_relative_eq!(res.pi_hat, -slope * u_hat_expected, max_relative = 1e-10);
        assert_relative_eq!(res.u_hat, 0.02248, max_relative = 1e-3);
        assert_relative_eq!(res.pi_hat, -6.52e-4, max_relative = 1e-3);
        assert_eq!(res.branch_used, BranchUsed::Slack);
        assert_eq!(res.u_star_after, res.u_star_before);
    }

    #[test]
    fn intercept_shock_hand_solution_kinked() {
        let res = apply_demand_shock(&kinked_config(), Shock::DemandRateIntercept(0.001)).unwrap();
        let slope_slack = 2.0 / (0.03 * 120_000.0 * 0.04) * 0.96 / 0.92;
        let u_hat_expected = 0.001 / (0.03 + 0.5 * slope_slack);
        assert_relative_eq!(res.u_hat, u_hat_expected, max_relative = 1e-10);
        assert_relative_eq!(res.u_hat, 0.02685, max_relative = 1e-3);
        assert_relative_eq!(res.pi_hat, -3.89e-4, max_relative = 2e-3);
        assert_eq!(res.branch_used, BranchUsed::Slack);
    }

    #[test]
    fn demand_shock_signs_active_and_passive() {
        for phi in [0.0, 0.5, 1.5, 2.0] {
            let mut cfg = default_config();
            cfg.policy.phi = phi;
            for shock in [
                Shock::DemandRateIntercept(0.001),
                Shock::DemandDelta(-0.001),
                Shock::DemandSigma(0.001),
            ] {
                let res = apply_demand_shock(&cfg, shock).unwrap();
                assert!(res.u_hat > 0.0, "u_hat <= 0 for {shock:?} at phi = {phi}");
                assert!(res.pi_hat < 0.0, "pi_hat >= 0 for {shock:?} at phi = {phi}");
                assert_eq!(res.u_star_after, res.u_star_before);
            }
        }
    }

    #[test]
    fn supply_shock_moves_divine_point() {
        let cfg = default_config();
        let res = apply_supply_shock(&cfg, Shock::SupplyEfficacy(-0.2), false).unwrap();
        assert_relative_eq!(res.u_star_after, 0.05, max_relative = 1e-12);
        // Fixed intercept, active policy: inflation up, gap negative.
        assert!(res.pi_hat > 0.0);
        assert!(res.u_hat < 0.0);
        assert_eq!(res.branch_used, BranchUsed::Tight);
        // Unemployment and inflation both rise in levels.
        assert!(res.after.pi > res.before.pi);
        assert!(res.after.u > res.before.u);
    }

    #[test]
    fn supply_shock_passive_policy_lowers_unemployment() {
        let mut cfg = default_config();
        cfg.policy.phi = 0.5;
        let res = apply_supply_shock(&cfg, Shock::SupplyEfficacy(-0.1), false).unwrap();
        assert!(res.pi_hat > 0.0);
        assert!(
            res.after.u < res.before.u,
            "u should fall under passive policy"
        );
        assert!(res.u_hat < 0.0);
    }

    #[test]
    fn recentered_supply_shock_lands_on_new_divine_point() {
        let cfg = default_config();
        let res = apply_supply_shock(&cfg, Shock::SupplySeparation(0.01), true).unwrap();
        assert_relative_eq!(res.u_star_after, 0.05, max_relative = 1e-12);
        assert!(res.u_hat.abs() < 1e-14);
        assert!(res.pi_hat.abs() < 1e-14);
    }

    #[test]
    fn after_state_satisfies_post_shock_linear_curves() {
        let cfg = kinked_config();
        let shock = Shock::DemandRateIntercept(0.001);
        let res = apply_demand_shock(&cfg, shock).unwrap();
        let post = shock.apply(&cfg).unwrap();
        let lin = linear::linearize(&post.clone().with_efficient_intercept()).unwrap();
        let euler_shift = post.policy.intercept - dynamics::efficient_nominal_rate(&post).i_star;
        // Shifted Euler line and slack Phillips line both pass through the
        // solution.
        let euler_res =
            lin.a11 * res.u_hat + lin.a12 * res.pi_hat - (1.0 - lin.u_star) * euler_shift;
        let phillips_res = lin.a21_slack * res.u_hat + lin.a22 * res.pi_hat;
        assert!(euler_res.abs() < 1e-10);
        assert!(phillips_res.abs() < 1e-10);
    }

    #[test]
    fn pre_shock_point_is_not_post_shock_fixed_point() {
        let cfg = default_config();
        let shock = Shock::DemandRateIntercept(0.001);
        let res = apply_demand_shock(&cfg, shock).unwrap();
        let post = shock.apply(&cfg).unwrap();
        // The old divine point no longer solves the post-shock system.
        let e = euler_rhs(&res.before, &post).unwrap();
        assert!(e.abs() > 1e-6);
        // The pre-shock system holds at the old point.
        assert!(euler_rhs(&res.before, &cfg).unwrap().abs() < 1e-14);
        assert!(phillips_rhs(&res.before, &cfg).unwrap().abs() < 1e-14);
    }

    #[test]
    fn kink_asymmetry_symmetric_ratio_is_one() {
        let rep = kink_asymmetry_report(&default_config(), 0.001).unwrap();
        assert_relative_eq!(rep.ratio, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn kink_asymmetry_hand_ratio() {
        // kappa_minus = 2 kappa_plus: hand-derived two-branch formula.
        let cfg = kinked_config();
        let rep = kink_asymmetry_report(&cfg, 0.001).unwrap();
        let slope_t = 2.0 / (0.03 * 60_000.0 * 0.04) * 0.96 / 0.92;
        let slope_s = slope_t / 2.0;
        let sigma_l = 0.03;
        let phi_m1 = 0.5;
        let expected = (slope_t * (0.001 / (sigma_l + phi_m1 * slope_t)))
            / (slope_s * (0.001 / (sigma_l + phi_m1 * slope_s)));
        assert_relative_eq!(rep.ratio, expected, max_relative = 1e-10);
        assert_relative_eq!(rep.ratio, 1.674, max_relative = 1e-3);
        assert!(rep.pi_hat_expansionary > 0.0);
        assert!(rep.pi_hat_contractionary < 0.0);
        assert!(rep.pi_hat_expansionary.abs() > rep.pi_hat_contractionary.abs());
    }

    #[test]
    fn extreme_slack_cost_flattens_slack_branch() {
        let mut cfg = default_config();
        cfg.prefs.kappa_minus = 60_000.0 * 1e6;
        let rep = kink_asymmetry_report(&cfg, 0.001).unwrap();
        assert!(rep.pi_hat_contractionary.abs() < 1e-9);
        assert!(rep.ratio > 1e3);
    }

    #[test]
    fn non_source_system_is_ambiguous() {
        let mut cfg = default_config();
        cfg.policy.phi = 0.0;
        cfg.prefs.sigma = 0.01;
        cfg = cfg.with_efficient_intercept();
        let lin = linear::linearize(&cfg).unwrap();
        assert!(matches!(
            solve_intersection(&lin, 0.001, 0.0),
            Err(Error::AmbiguousSolution { .. })
        ));
    }

    #[test]
    fn shock_kind_mismatch_rejected() {
        let cfg = default_config();
        assert!(apply_demand_shock(&cfg, Shock::SupplySeparation(0.01)).is_err());
        assert!(apply_supply_shock(&cfg, Shock::DemandDelta(0.01), false).is_err());
        // Post-shock params must remain valid.
        assert!(apply_supply_shock(&cfg, Shock::SupplyEfficacy(-0.95), false).is_err());
    }
}
