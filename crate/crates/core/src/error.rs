//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a model assumption (e.g. `ω ≤ 2s`).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An input lies outside the domain where the primitive is defined.
    #[error("{name} = {value} out of range [{min}, {max})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A rate combination that cannot occur in the model (e.g. `u + v ≥ 1`).
    #[error("infeasible state: {0}")]
    Infeasible(String),

    /// The Euler curve degenerates to a horizontal line when `σ = 0`.
    /// `pi` is the inflation rate pinned down by `π = i − δ` under the
    /// configured policy rule.
    #[error("degenerate Euler curve: horizontal at pi = {pi}")]
    DegenerateEulerCurve { pi: f64 },

    /// A root/inversion target has no solution in the admissible range.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Eigenstructure too close to a repeated eigenvalue to solve with.
    #[error("degenerate eigenstructure: {0}")]
    DegenerateEigenstructure(String),

    /// The linearized system is not a source, so a curve intersection does
    /// not determine the solution.
    #[error("ambiguous solution: linearized system is {kind}, not a source")]
    AmbiguousSolution { kind: String },

    /// Neither kink branch yields a sign-consistent intersection. Both
    /// candidates are reported.
    #[error("no sign-consistent kink branch: tight candidate (u_hat={tight_u_hat}, pi_hat={tight_pi_hat}), slack candidate (u_hat={slack_u_hat}, pi_hat={slack_pi_hat})")]
    InconsistentBranch {
        tight_u_hat: f64,
        tight_pi_hat: f64,
        slack_u_hat: f64,
        slack_pi_hat: f64,
    },

    /// The integrator produced a non-finite right-hand side.
    #[error("integration step failure at t = {t}")]
    StepFailure { t: f64 },

    /// A data series is too short for the requested computation.
    #[error("insufficient history: {0}")]
    InsufficientHistory(String),

    /// Input series do not share any usable dates.
    #[error("date misalignment: {0}")]
    DateMisalignment(String),

    /// Too few observations on one side of the kink to fit a slope.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed input data (CSV cell, date, config field).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// `true` for errors caused by file handling rather than the model.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
