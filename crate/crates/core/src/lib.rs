//! Beveridgean model of the Phillips curve.
//!
//! The crate is organized around the model's moving parts:
//!
//! - [`market`]: closed-form labor-market primitives built on the matching
//!   function `h(U, V) = ω√(UV) − sU`: finding rates, the hyperbolic
//!   Beveridge curve, the recruiter-producer ratio, elasticities, tightness
//!   bounds, and the directed-search demand curve.
//! - [`dynamics`]: the nonlinear Euler-Phillips system in the
//!   unemployment-inflation plane, its steady-state curves, the efficient
//!   nominal interest rate, and a fixed-step RK4 integrator with event
//!   splitting at the price-adjustment kink.
//! - [`linear`]: linearization around the divine steady state, the 2x2
//!   system matrix, trace/determinant classification, closed-form solutions,
//!   and nullclines.
//! - [`scenario`]: comparative statics for unexpected permanent demand and
//!   supply shocks, including the kinked (asymmetric-cost) variant.
//! - [`series`]: year-over-year gap computation for empirical overlays and a
//!   descriptive kinked-line fit.
//! - [`portrait`]: phase-diagram emission (vector field, nullclines,
//!   trajectories) as CSV and a minimal SVG.
//! - [`config`]: TOML/JSON configuration loading with the default
//!   calibration.
//!
//! All rates (`s`, `ω`, `δ`, `i`, `π`) are per year.

// Parameter validation is written as `!(x > 0.0)` on purpose: the negated
// form also rejects NaN, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dynamics;
pub mod error;
pub mod linear;
pub mod market;
pub mod numeric;
pub mod portrait;
pub mod scenario;
pub mod series;
pub mod validate;

pub use config::ModelConfig;
pub use dynamics::{EconomyState, Policy, Preferences};
pub use error::{Error, Result};
pub use market::MatchingParams;
