//! Phase-portrait construction and file emission: a vector-field grid,
//! nullcline polylines from the nonlinear curves, optional trajectories,
//! and deterministic CSV plus a minimal static SVG rendering.

use crate::config::ModelConfig;
use crate::dynamics::{self, EconomyState, Trajectory};
use crate::error::{Error, Result};
use std::io::Write;
use std::path::Path;

/// Rectangle of the (u, π) plane to sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub u_min: f64,
    pub u_max: f64,
    pub pi_min: f64,
    pub pi_max: f64,
}

impl Bounds {
    /// Bounds around the divine point: `u ∈ [u*/2, min(3u*, 0.45)]`,
    /// `π ∈ [π* ∓ 0.02]`.
    pub fn default_for(config: &ModelConfig) -> Self {
        let u_star = config.u_star();
        let pi_star = config.prefs.pi_star;
        Bounds {
            u_min: u_star / 2.0,
            u_max: (3.0 * u_star).min(0.45),
            pi_min: pi_star - 0.02,
            pi_max: pi_star + 0.02,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.u_min, self.u_max, self.pi_min, self.pi_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.u_min >= self.u_max || self.pi_min >= self.pi_max {
            return Err(Error::InvalidParams(format!("degenerate bounds {self:?}")));
        }
        if self.u_min <= 0.0 || self.u_max >= 0.5 {
            return Err(Error::OutOfRange {
                name: "u bounds",
                value: if self.u_min <= 0.0 {
                    self.u_min
                } else {
                    self.u_max
                },
                min: 0.0,
                max: 0.5,
            });
        }
        Ok(())
    }
}

/// One vector-field sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSample {
    pub u: f64,
    pub pi: f64,
    pub du: f64,
    pub dpi: f64,
}

/// Everything needed to draw a phase diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePortrait {
    pub grid: Vec<GridSample>,
    /// Euler nullcline polyline, as (u, π) points.
    pub euler_nullcline: Vec<(f64, f64)>,
    /// Phillips nullcline, branch with `π ≥ π*`.
    pub phillips_tight: Vec<(f64, f64)>,
    /// Phillips nullcline, branch with `π ≤ π*`.
    pub phillips_slack: Vec<(f64, f64)>,
    pub trajectories: Vec<Trajectory>,
    pub bounds: Bounds,
}

/// Builds the portrait: an `resolution × resolution` vector-field grid
/// (points outside the model domain are skipped), nullclines sampled from
/// the nonlinear curves, and one trajectory per seed integrated to
/// `t_end` with step `dt`.
pub fn build_portrait(
    config: &ModelConfig,
    bounds: &Bounds,
    resolution: usize,
    seeds: &[EconomyState],
    t_end: f64,
    dt: f64,
) -> Result<PhasePortrait> {
    config.validate()?;
    bounds.validate()?;
    if resolution < 2 {
        return Err(Error::InvalidParams(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }

    let lerp = |a: f64, b: f64, k: usize| a + (b - a) * k as f64 / (resolution - 1) as f64;
    let mut grid = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let u = lerp(bounds.u_min, bounds.u_max, i);
        for j in 0..resolution {
            let pi = lerp(bounds.pi_min, bounds.pi_max, j);
            let state = EconomyState::new(u, pi);
            let (du, dpi) = match (
                dynamics::euler_rhs(&state, config),
                dynamics::phillips_rhs(&state, config),
            ) {
                (Ok(du), Ok(dpi)) => (du, dpi),
                _ => continue,
            };
            grid.push(GridSample { u, pi, du, dpi });
        }
    }

    // Euler nullcline: u as a function of π, except under an interest-rate
    // peg with σ = 0, where it degenerates to a horizontal line.
    let samples = resolution.max(64);
    let mut euler_nullcline = Vec::new();
    for k in 0..=samples {
        let pi = lerp_n(bounds.pi_min, bounds.pi_max, k, samples);
        match dynamics::euler_curve_u(pi, config) {
            Ok(u) if u >= bounds.u_min && u <= bounds.u_max => euler_nullcline.push((u, pi)),
            Ok(_) => {}
            Err(Error::DegenerateEulerCurve { pi }) => {
                euler_nullcline.clear();
                if pi >= bounds.pi_min && pi <= bounds.pi_max {
                    euler_nullcline.push((bounds.u_min, pi));
                    euler_nullcline.push((bounds.u_max, pi));
                }
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let mut phillips_tight = Vec::new();
    let mut phillips_slack = Vec::new();
    let pi_star = config.prefs.pi_star;
    for k in 0..=samples {
        let u = lerp_n(bounds.u_min, bounds.u_max, k, samples);
        let Ok(pi) = dynamics::phillips_curve_pi(u, config) else {
            continue;
        };
        if pi < bounds.pi_min || pi > bounds.pi_max {
            continue;
        }
        if pi >= pi_star {
            phillips_tight.push((u, pi));
        }
        if pi <= pi_star {
            phillips_slack.push((u, pi));
        }
    }

    let trajectories = seeds
        .iter()
        .map(|s| dynamics::integrate(s, config, t_end, dt))
        .collect::<Result<Vec<_>>>()?;

    Ok(PhasePortrait {
        grid,
        euler_nullcline,
        phillips_tight,
        phillips_slack,
        trajectories,
        bounds: *bounds,
    })
}

fn lerp_n(a: f64, b: f64, k: usize, n: usize) -> f64 {
    a + (b - a) * k as f64 / n as f64
}

fn fmt_f(x: f64) -> String {
    format!("{x:.17e}")
}

/// Writes the vector-field grid as `u,pi,du,dpi`.
pub fn write_grid_csv<W: Write>(portrait: &PhasePortrait, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "pi", "du", "dpi"])?;
    for s in &portrait.grid {
        w.write_record([fmt_f(s.u), fmt_f(s.pi), fmt_f(s.du), fmt_f(s.dpi)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a nullcline polyline as `u,pi`.
pub fn write_nullcline_csv<W: Write>(points: &[(f64, f64)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "pi"])?;
    for &(u, pi) in points {
        w.write_record([fmt_f(u), fmt_f(pi)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a trajectory as `t,u,pi`.
pub fn write_trajectory_csv<W: Write>(trajectory: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "u", "pi"])?;
    for &(t, u, pi) in &trajectory.points {
        w.write_record([fmt_f(t), fmt_f(u), fmt_f(pi)])?;
    }
    w.flush()?;
    Ok(())
}

/// Renders a minimal static SVG: nullcline polylines, trajectories, and
/// the vector field as fixed-length arrows. The CSV files are the
/// authoritative output; this is a quick-look rendering.
pub fn write_svg<W: Write>(portrait: &PhasePortrait, mut out: W) -> Result<()> {
    const W_PX: f64 = 800.0;
    const H_PX: f64 = 600.0;
    const MARGIN: f64 = 40.0;
    let b = &portrait.bounds;
    let x = |u: f64| MARGIN + (u - b.u_min) / (b.u_max - b.u_min) * (W_PX - 2.0 * MARGIN);
    // SVG y grows downward.
    let y =
        |pi: f64| H_PX - MARGIN - (pi - b.pi_min) / (b.pi_max - b.pi_min) * (H_PX - 2.0 * MARGIN);

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W_PX}" height="{H_PX}" viewBox="0 0 {W_PX} {H_PX}">"#
    )?;
    writeln!(
        out,
        r#"<rect width="{W_PX}" height="{H_PX}" fill="white"/>"#
    )?;

    // Vector field: direction-only arrows.
    for s in &portrait.grid {
        let norm = (s.du * s.du + s.dpi * s.dpi).sqrt();
        if norm == 0.0 {
            continue;
        }
        let (dx, dy) = (s.du / norm * 9.0, -s.dpi / norm * 9.0);
        let (x0, y0) = (x(s.u), y(s.pi));
        let (x1, y1) = (x0 + dx, y0 + dy);
        writeln!(
            out,
            r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="#999" stroke-width="1"/>"##
        )?;
        // Arrowhead: two short strokes back from the tip.
        let (hx, hy) = (dx / 3.0, dy / 3.0);
        writeln!(
            out,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1"/>"##,
            x1 - hx + hy / 2.0,
            y1 - hy - hx / 2.0
        )?;
        writeln!(
            out,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1"/>"##,
            x1 - hx - hy / 2.0,
            y1 - hy + hx / 2.0
        )?;
    }

    let polyline = |points: &[(f64, f64)], color: &str| -> String {
        let pts: Vec<String> = points
            .iter()
            .map(|&(u, pi)| format!("{:.2},{:.2}", x(u), y(pi)))
            .collect();
        format!(
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"##,
            pts.join(" ")
        )
    };
    if !portrait.euler_nullcline.is_empty() {
        writeln!(out, "{}", polyline(&portrait.euler_nullcline, "#1f77b4"))?;
    }
    if !portrait.phillips_tight.is_empty() {
        writeln!(out, "{}", polyline(&portrait.phillips_tight, "#d62728"))?;
    }
    if !portrait.phillips_slack.is_empty() {
        writeln!(out, "{}", polyline(&portrait.phillips_slack, "#ff7f0e"))?;
    }
    for t in &portrait.trajectories {
        let pts: Vec<(f64, f64)> = t.points.iter().map(|&(_, u, pi)| (u, pi)).collect();
        writeln!(out, "{}", polyline(&pts, "#2ca02c"))?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}

/// Writes the full file set into `dir`: `field.csv`, `nullcline_euler.csv`,
/// `nullcline_phillips_tight.csv`, `nullcline_phillips_slack.csv`,
/// `trajectory_<k>.csv`, and `portrait.svg`. Returns the paths written.
pub fn emit_portrait_files(
    portrait: &PhasePortrait,
    dir: &Path,
) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut emit = |name: String, write: &dyn Fn(&mut Vec<u8>) -> Result<()>| -> Result<()> {
        let mut buf = Vec::new();
        write(&mut buf)?;
        let path = dir.join(name);
        std::fs::write(&path, &buf)?;
        written.push(path);
        Ok(())
    };
    emit("field.csv".into(), &|b| write_grid_csv(portrait, b))?;
    emit("nullcline_euler.csv".into(), &|b| {
        write_nullcline_csv(&portrait.euler_nullcline, b)
    })?;
    emit("nullcline_phillips_tight.csv".into(), &|b| {
        write_nullcline_csv(&portrait.phillips_tight, b)
    })?;
    emit("nullcline_phillips_slack.csv".into(), &|b| {
        write_nullcline_csv(&portrait.phillips_slack, b)
    })?;
    for (k, t) in portrait.trajectories.iter().enumerate() {
        emit(format!("trajectory_{k}.csv"), &|b| {
            write_trajectory_csv(t, b)
        })?;
    }
    emit("portrait.svg".into(), &|b| write_svg(portrait, b))?;
    Ok(written)
}
