//! Linearization of the Euler-Phillips system around the divine steady
//! state, and everything that follows from the 2x2 matrix: classification,
//! closed-form solutions, and nullclines.
//!
//! With deviations `û = u − u*`, `π̂ = π − π*` the linearized system is
//!
//! ```text
//! [u̇, π̇]ᵀ = M [û, π̂]ᵀ,   M = [ σy*                      −(φ−1)(1−u*) ]
//!                              [ 2(1−u*)/(κu*(1−2u*))     δ           ]
//! ```
//!
//! where `y* = (1−u*)l`. With asymmetric adjustment costs the lower-left
//! entry differs per branch (`κ⁺` when `π > π*`, `κ⁻` when `π < π*`).

use crate::config::ModelConfig;
use crate::dynamics;
use crate::error::{Error, Result};
use serde::Serialize;

/// Side of the Phillips kink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhillipsBranch {
    /// `π > π*` (inefficiently tight market), cost `κ⁺`.
    Tight,
    /// `π < π*` (inefficiently slack market), cost `κ⁻`.
    Slack,
}

/// The 2x2 system matrix at the divine steady state, with per-branch
/// Phillips coupling when the adjustment cost is kinked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearizedSystem {
    /// `σ y*` with `y* = (1 − u*) l`.
    pub a11: f64,
    /// `−(φ − 1)(1 − u*)`.
    pub a12: f64,
    /// `2(1 − u*)/(κ⁺ u*(1 − 2u*))`, the tight-branch Phillips coupling.
    pub a21_tight: f64,
    /// Same entry with `κ⁻`.
    pub a21_slack: f64,
    /// `δ`.
    pub a22: f64,
    /// Expansion point.
    pub u_star: f64,
    pub pi_star: f64,
    /// `κ⁻ ≠ κ⁺`.
    pub kinked: bool,
}

impl LinearizedSystem {
    pub fn a21(&self, branch: PhillipsBranch) -> f64 {
        match branch {
            PhillipsBranch::Tight => self.a21_tight,
            PhillipsBranch::Slack => self.a21_slack,
        }
    }

    pub fn matrix(&self, branch: PhillipsBranch) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a21(branch), self.a22]]
    }

    /// Right-hand side `M x` on the branch selected by the sign of `π̂`
    /// (tight at and above zero, matching the nonlinear convention).
    pub fn rhs(&self, u_hat: f64, pi_hat: f64) -> (f64, f64) {
        let branch = if pi_hat < 0.0 {
            PhillipsBranch::Slack
        } else {
            PhillipsBranch::Tight
        };
        let a21 = self.a21(branch);
        (
            self.a11 * u_hat + self.a12 * pi_hat,
            a21 * u_hat + self.a22 * pi_hat,
        )
    }
}

/// Builds the system matrix at the divine steady state.
///
/// Requires the policy intercept to sit at the efficient rate `i*`; the
/// expansion point is a fixed point only then.
pub fn linearize(config: &ModelConfig) -> Result<LinearizedSystem> {
    config.validate()?;
    let i_star = dynamics::efficient_nominal_rate(config).i_star;
    let intercept = config.policy.intercept;
    if (intercept - i_star).abs() > 1e-9 * i_star.abs().max(1.0) {
        return Err(Error::InvalidParams(format!(
            "policy intercept {intercept} is not the efficient rate {i_star}; \
             the divine point is not a fixed point"
        )));
    }
    let p = &config.prefs;
    let u_star = config.u_star();
    let one_minus = 1.0 - u_star;
    let y_star = one_minus * p.labor_force;
    let coupling = |kappa: f64| 2.0 * one_minus / (kappa * u_star * (1.0 - 2.0 * u_star));
    Ok(LinearizedSystem {
        a11: p.sigma * y_star,
        a12: -(config.policy.phi - 1.0) * one_minus,
        a21_tight: coupling(p.kappa_plus),
        a21_slack: coupling(p.kappa_minus),
        a22: p.delta,
        u_star,
        pi_star: p.pi_star,
        kinked: p.kinked(),
    })
}

/// Qualitative type of the 2x2 system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    Source,
    SpiralSource,
    Saddle,
    Sink,
    SpiralSink,
    Degenerate,
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SystemKind::Source => "source",
            SystemKind::SpiralSource => "spiral-source",
            SystemKind::Saddle => "saddle",
            SystemKind::Sink => "sink",
            SystemKind::SpiralSink => "spiral-sink",
            SystemKind::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Trace/determinant classification with the eigenstructure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub trace: f64,
    pub determinant: f64,
    pub discriminant: f64,
    pub kind: SystemKind,
    /// `(re, im)` pairs; complex eigenvalues come as conjugates.
    pub eigenvalues: [(f64, f64); 2],
    /// Real case: the two eigenvectors (columns as rows here). Complex
    /// case: real and imaginary parts of the eigenvector of `μ₁`.
    pub eigenvectors: [[f64; 2]; 2],
}

/// Relative eigenvalue gap below which the eigenstructure is reported
/// degenerate instead of solved.
const DEGENERACY_TOL: f64 = 1e-10;

/// Classifies an arbitrary 2x2 matrix by trace, determinant, and
/// discriminant.
pub fn classify_matrix(m: [[f64; 2]; 2]) -> Classification {
    let [[a, b], [c, d]] = m;
    let trace = a + d;
    let det = a * d - b * c;
    let disc = trace * trace - 4.0 * det;
    let scale = trace.abs().max(det.abs().sqrt()).max(1e-300);

    let (eigenvalues, eigenvectors, degenerate) = if disc >= 0.0 {
        let root = disc.sqrt();
        let mu1 = 0.5 * (trace - root);
        let mu2 = 0.5 * (trace + root);
        let vec_for = |mu: f64| -> [f64; 2] {
            if b.abs() > c.abs() {
                normalize([b, mu - a])
            } else if c != 0.0 {
                normalize([mu - d, c])
            } else {
                // Diagonal matrix.
                if (mu - a).abs() < (mu - d).abs() {
                    [1.0, 0.0]
                } else {
                    [0.0, 1.0]
                }
            }
        };
        let degenerate = (mu2 - mu1).abs() <= DEGENERACY_TOL * scale;
        (
            [(mu1, 0.0), (mu2, 0.0)],
            [vec_for(mu1), vec_for(mu2)],
            degenerate,
        )
    } else {
        let re = 0.5 * trace;
        let beta = 0.5 * (-disc).sqrt();
        // Eigenvector of mu1 = re + i beta, split into real/imag parts.
        let (v_re, v_im) = if b != 0.0 {
            ([b, re - a], [0.0, beta])
        } else {
            ([re - d, c], [beta, 0.0])
        };
        ([(re, beta), (re, -beta)], [v_re, v_im], false)
    };

    let kind = if degenerate {
        SystemKind::Degenerate
    } else if det < 0.0 {
        SystemKind::Saddle
    } else if det == 0.0 || trace == 0.0 {
        SystemKind::Degenerate
    } else if trace > 0.0 {
        if disc >= 0.0 {
            SystemKind::Source
        } else {
            SystemKind::SpiralSource
        }
    } else if disc >= 0.0 {
        SystemKind::Sink
    } else {
        SystemKind::SpiralSink
    };

    Classification {
        trace,
        determinant: det,
        discriminant: disc,
        kind,
        eigenvalues,
        eigenvectors,
    }
}

fn normalize(v: [f64; 2]) -> [f64; 2] {
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    if n == 0.0 {
        v
    } else {
        [v[0] / n, v[1] / n]
    }
}

/// Classifies the linearized system on the given branch (branches coincide
/// when the cost is symmetric).
pub fn classify_branch(lin: &LinearizedSystem, branch: PhillipsBranch) -> Classification {
    classify_matrix(lin.matrix(branch))
}

/// Classification on the tight branch; identical to the slack branch for a
/// symmetric adjustment cost.
pub fn classify(lin: &LinearizedSystem) -> Classification {
    classify_branch(lin, PhillipsBranch::Tight)
}

/// The lower bound on `σ` ensuring `det(M) > 0` for every `φ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaCondition {
    /// `(2/(κδl)) · (1 − u*)/(u*(1 − 2u*))`, evaluated with `κ⁺` (the
    /// smaller cost gives the binding bound when the curve is kinked).
    pub sigma_min: f64,
    pub holds: bool,
}

pub fn sigma_condition(config: &ModelConfig) -> SigmaCondition {
    let p = &config.prefs;
    let u_star = config.u_star();
    let sigma_min = 2.0 / (p.kappa_plus * p.delta * p.labor_force) * (1.0 - u_star)
        / (u_star * (1.0 - 2.0 * u_star));
    SigmaCondition {
        sigma_min,
        holds: p.sigma >= sigma_min,
    }
}

/// Closed-form solution of the linear system `ẋ = Mx` from deviation `x0`,
/// evaluated at time `t`, on the given branch.
///
/// Real eigenvalues: `x(t) = x₁e^{μ₁t}v₁ + x₂e^{μ₂t}v₂`. Complex pair
/// `μ ± iβ`: `x(t) = e^{μt}[v₁ v₂] R(βt) x` with `R` a rotation.
pub fn linear_solution(
    lin: &LinearizedSystem,
    branch: PhillipsBranch,
    x0: (f64, f64),
    t: f64,
) -> Result<(f64, f64)> {
    let cls = classify_branch(lin, branch);
    if cls.kind == SystemKind::Degenerate {
        return Err(Error::DegenerateEigenstructure(format!(
            "eigenvalues {:?} too close or system singular",
            cls.eigenvalues
        )));
    }
    let [v1, v2] = cls.eigenvectors;
    let det_v = v1[0] * v2[1] - v2[0] * v1[1];
    if det_v.abs() < 1e-14 {
        return Err(Error::DegenerateEigenstructure(
            "eigenvectors nearly collinear".into(),
        ));
    }
    // Solve [v1 v2] x = x0.
    let x1 = (x0.0 * v2[1] - v2[0] * x0.1) / det_v;
    let x2 = (v1[0] * x0.1 - x0.0 * v1[1]) / det_v;
    let (mu1, beta) = cls.eigenvalues[0];
    if beta == 0.0 {
        let mu2 = cls.eigenvalues[1].0;
        let e1 = (mu1 * t).exp();
        let e2 = (mu2 * t).exp();
        Ok((
            x1 * e1 * v1[0] + x2 * e2 * v2[0],
            x1 * e1 * v1[1] + x2 * e2 * v2[1],
        ))
    } else {
        let growth = (mu1 * t).exp();
        let (sin, cos) = (beta * t).sin_cos();
        let c1 = cos * x1 + sin * x2;
        let c2 = -sin * x1 + cos * x2;
        Ok((
            growth * (v1[0] * c1 + v2[0] * c2),
            growth * (v1[1] * c1 + v2[1] * c2),
        ))
    }
}

/// Nullclines of the linearized system, as slopes through the divine point
/// `(û, π̂) = (0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Nullclines {
    /// Euler line `û = ((φ−1)/(σl)) π̂`, as `dû/dπ̂`. Infinite when `σ = 0`.
    pub euler_du_dpi: f64,
    /// Tight-branch Phillips line `π̂ = −(a21⁺/δ) û`, as `dπ̂/dû`.
    pub phillips_dpi_du_tight: f64,
    /// Slack-branch slope, `−(a21⁻/δ)`.
    pub phillips_dpi_du_slack: f64,
}

pub fn nullclines(lin: &LinearizedSystem) -> Nullclines {
    Nullclines {
        euler_du_dpi: -lin.a12 / lin.a11,
        phillips_dpi_du_tight: -lin.a21_tight / lin.a22,
        phillips_dpi_du_slack: -lin.a21_slack / lin.a22,
    }
}
