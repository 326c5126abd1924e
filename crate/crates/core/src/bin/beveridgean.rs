//! Command-line front end: steady-state report, stability classification,
//! phase-portrait emission, trajectory simulation, shock scenarios,
//! empirical gap computation, the kinked fit, and the invariant suite.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or solver error,
//! 3 I/O or data-format error.

use beveridgean::config::{load_config, ModelConfig};
use beveridgean::dynamics::{self, EconomyState, IntegrationStatus};
use beveridgean::error::Error;
use beveridgean::linear::{self, PhillipsBranch};
use beveridgean::portrait::{self, Bounds};
use beveridgean::scenario::{self, Shock};
use beveridgean::series::{self, GapPoint, GapSeries};
use beveridgean::{market, validate};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "beveridgean",
    version,
    about = "Beveridgean unemployment-inflation model: steady states, dynamics, shocks, and data overlays"
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

/// Model parameters: a TOML/JSON file plus flag overrides. When a flag
/// changes a parameter that the efficient nominal rate depends on and no
/// explicit intercept is given, the intercept is re-derived as `i*`.
#[derive(Args)]
struct ConfigArgs {
    /// Configuration file (TOML or JSON).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Job-separation rate s.
    #[arg(long, global = true, value_name = "RATE")]
    separation: Option<f64>,
    /// Matching efficacy ω.
    #[arg(long, global = true, value_name = "RATE")]
    efficacy: Option<f64>,
    /// Discount rate δ.
    #[arg(long, global = true, value_name = "RATE")]
    delta: Option<f64>,
    /// Marginal utility of wealth σ.
    #[arg(long, global = true, value_name = "RATE")]
    sigma: Option<f64>,
    /// Inflation target π*.
    #[arg(long, global = true, value_name = "RATE")]
    pi_star: Option<f64>,
    /// Price-adjustment cost κ (sets both sides of the kink).
    #[arg(long, global = true, value_name = "COST")]
    kappa: Option<f64>,
    /// Price-adjustment cost above target, κ⁺.
    #[arg(long, global = true, value_name = "COST")]
    kappa_plus: Option<f64>,
    /// Price-adjustment cost below target, κ⁻ (≥ κ⁺).
    #[arg(long, global = true, value_name = "COST")]
    kappa_minus: Option<f64>,
    /// Labor force l.
    #[arg(long, global = true, value_name = "SIZE")]
    labor_force: Option<f64>,
    /// Monetary-policy intercept (nominal rate at π = π*).
    #[arg(long, global = true, value_name = "RATE")]
    intercept: Option<f64>,
    /// Taylor coefficient φ.
    #[arg(long, global = true, value_name = "COEFF")]
    phi: Option<f64>,
    /// Clamp the policy rate at zero.
    #[arg(long, global = true)]
    zlb: bool,
}

impl ConfigArgs {
    fn load(&self) -> Result<ModelConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => ModelConfig::default_calibration(),
        };
        let mut touched_i_star_inputs = false;
        let mut set = |slot: &mut f64, v: Option<f64>, affects_i_star: bool| {
            if let Some(v) = v {
                *slot = v;
                touched_i_star_inputs |= affects_i_star;
            }
        };
        set(&mut cfg.matching.s, self.separation, true);
        set(&mut cfg.matching.omega, self.efficacy, true);
        set(&mut cfg.prefs.delta, self.delta, true);
        set(&mut cfg.prefs.sigma, self.sigma, true);
        set(&mut cfg.prefs.pi_star, self.pi_star, true);
        set(&mut cfg.prefs.labor_force, self.labor_force, true);
        set(
            &mut cfg.prefs.kappa_plus,
            self.kappa_plus.or(self.kappa),
            false,
        );
        set(
            &mut cfg.prefs.kappa_minus,
            self.kappa_minus.or(self.kappa),
            false,
        );
        set(&mut cfg.policy.phi, self.phi, false);
        if let Some(i) = self.intercept {
            cfg.policy.intercept = i;
        } else if touched_i_star_inputs {
            cfg = cfg.with_efficient_intercept();
        }
        if self.zlb {
            cfg.policy.enforce_zlb = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Efficient allocation, efficient nominal rate, and the divine point.
    Steady {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Linearized matrix, trace/determinant classification, σ-condition.
    Classify {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit phase-portrait files (vector field, nullclines, trajectories, SVG).
    Phase {
        /// Output directory.
        #[arg(long, default_value = "portrait")]
        out: PathBuf,
        #[arg(long, default_value_t = 20)]
        resolution: usize,
        #[arg(long)]
        u_min: Option<f64>,
        #[arg(long)]
        u_max: Option<f64>,
        #[arg(long)]
        pi_min: Option<f64>,
        #[arg(long)]
        pi_max: Option<f64>,
        /// Trajectory seed as `u,pi`; repeatable.
        #[arg(long = "seed", value_name = "U,PI")]
        seeds: Vec<String>,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
    /// Integrate one trajectory and write `t,u,pi` CSV.
    Simulate {
        #[arg(long)]
        u0: f64,
        #[arg(long)]
        pi0: f64,
        #[arg(long, default_value_t = 50.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an unexpected permanent shock and report the new equilibrium.
    Shock {
        #[arg(long, value_enum)]
        kind: ShockKind,
        #[arg(long, allow_hyphen_values = true)]
        magnitude: f64,
        /// For supply shocks: re-center the intercept on the new efficient rate.
        #[arg(long)]
        recenter: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute tightness and inflation gaps from monthly CSV series.
    Gaps {
        /// Price index CSV (`date,value`).
        #[arg(long)]
        price_index: PathBuf,
        /// Labor-market tightness CSV (`date,value`, levels).
        #[arg(long)]
        tightness: PathBuf,
        /// Inflation target subtracted from year-over-year inflation.
        #[arg(long, default_value_t = 0.02)]
        target: f64,
        /// Average monthly gaps into calendar quarters.
        #[arg(long)]
        quarterly: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a piecewise line through the origin in gap space.
    Fit {
        /// Gap CSV as produced by `gaps` (`date,tightness_gap,inflation_gap`).
        #[arg(long, conflicts_with_all = ["price_index", "tightness"])]
        gaps: Option<PathBuf>,
        #[arg(long, requires = "tightness")]
        price_index: Option<PathBuf>,
        #[arg(long, requires = "price_index")]
        tightness: Option<PathBuf>,
        #[arg(long, default_value_t = 0.02)]
        target: f64,
        /// Fit one common slope instead of independent slopes per side.
        #[arg(long)]
        no_kink: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the numerical invariant suite against the configuration.
    Validate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShockKind {
    /// Discount-rate change (demand).
    DemandDelta,
    /// Wealth-utility change (demand).
    DemandSigma,
    /// Policy-intercept change (demand).
    DemandIntercept,
    /// Separation-rate change (supply).
    SupplySeparation,
    /// Matching-efficacy change (supply).
    SupplyEfficacy,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse(_) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Steady { format } => steady(&cli.config.load()?, *format),
        Command::Classify { format } => classify(&cli.config.load()?, *format),
        Command::Phase {
            out,
            resolution,
            u_min,
            u_max,
            pi_min,
            pi_max,
            seeds,
            t_end,
            dt,
        } => {
            let cfg = cli.config.load()?;
            let mut bounds = Bounds::default_for(&cfg);
            if let Some(v) = u_min {
                bounds.u_min = *v;
            }
            if let Some(v) = u_max {
                bounds.u_max = *v;
            }
            if let Some(v) = pi_min {
                bounds.pi_min = *v;
            }
            if let Some(v) = pi_max {
                bounds.pi_max = *v;
            }
            let seeds = seeds
                .iter()
                .map(|s| parse_seed(s))
                .collect::<Result<Vec<_>, _>>()?;
            let p = portrait::build_portrait(&cfg, &bounds, *resolution, &seeds, *t_end, *dt)?;
            let files = portrait::emit_portrait_files(&p, out)?;
            for f in files {
                println!("{}", f.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            u0,
            pi0,
            t_end,
            dt,
            out,
        } => {
            let cfg = cli.config.load()?;
            let traj = dynamics::integrate(&EconomyState::new(*u0, *pi0), &cfg, *t_end, *dt)?;
            if let IntegrationStatus::DomainExit { t } = traj.status {
                eprintln!("note: trajectory left the model domain at t = {t:.6}");
            }
            match out {
                Some(path) => {
                    let mut buf = Vec::new();
                    portrait::write_trajectory_csv(&traj, &mut buf)?;
                    std::fs::write(path, buf)?;
                }
                None => portrait::write_trajectory_csv(&traj, std::io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Shock {
            kind,
            magnitude,
            recenter,
            format,
        } => shock(&cli.config.load()?, *kind, *magnitude, *recenter, *format),
        Command::Gaps {
            price_index,
            tightness,
            target,
            quarterly,
            out,
        } => {
            let gaps = load_gaps(price_index, tightness, *target, *quarterly)?;
            match out {
                Some(path) => {
                    let mut buf = Vec::new();
                    series::write_gaps_csv(&gaps, &mut buf)?;
                    std::fs::write(path, buf)?;
                }
                None => series::write_gaps_csv(&gaps, std::io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fit {
            gaps,
            price_index,
            tightness,
            target,
            no_kink,
            format,
        } => {
            let gap_series = match (gaps, price_index, tightness) {
                (Some(path), _, _) => read_gap_csv(path)?,
                (None, Some(p), Some(t)) => load_gaps(p, t, *target, false)?,
                _ => {
                    return Err(Error::InvalidParams(
                        "fit needs either --gaps or both --price-index and --tightness".into(),
                    ))
                }
            };
            let fit = series::fit_kinked_line(&gap_series, !*no_kink)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&fit)?),
                Format::Text => {
                    println!("slope (tight side): {:.6}", fit.slope_tight);
                    println!("slope (slack side): {:.6}", fit.slope_slack);
                    println!(
                        "points: {} tight, {} slack; SSR = {:.3e}; R^2 = {:.4}",
                        fit.n_tight, fit.n_slack, fit.ssr, fit.r_squared
                    );
                    println!(
                        "steeper when tight: {}",
                        if fit.steeper_when_tight { "yes" } else { "no" }
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            let cfg = cli.config.load()?;
            let results = validate::run_all(&cfg);
            for r in &results {
                println!(
                    "{} {} — {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            if validate::all_passed(&results) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn parse_seed(s: &str) -> Result<EconomyState, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    let parsed = if parts.len() == 2 {
        match (
            parts[0].trim().parse::<f64>(),
            parts[1].trim().parse::<f64>(),
        ) {
            (Ok(u), Ok(pi)) => Some(EconomyState::new(u, pi)),
            _ => None,
        }
    } else {
        None
    };
    parsed.ok_or_else(|| Error::InvalidParams(format!("seed must be `u,pi`, got {s:?}")))
}

fn steady(cfg: &ModelConfig, format: Format) -> Result<ExitCode, Error> {
    let alloc = market::efficient_allocation(&cfg.matching);
    let rate = dynamics::efficient_nominal_rate(cfg);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "u_star": alloc.u_star,
                    "v_star": alloc.v_star,
                    "theta_star": alloc.theta_star,
                    "pi_star": cfg.prefs.pi_star,
                    "i_star": rate.i_star,
                    "zlb_violation": rate.zlb_violation,
                    "intercept": cfg.policy.intercept,
                }))?
            );
        }
        Format::Text => {
            println!("efficient unemployment rate u* = {:.6}", alloc.u_star);
            println!("efficient vacancy rate      v* = {:.6}", alloc.v_star);
            println!("efficient tightness     theta* = {:.6}", alloc.theta_star);
            println!("inflation target           pi* = {:.6}", cfg.prefs.pi_star);
            println!("efficient nominal rate      i* = {:.6}", rate.i_star);
            if rate.zlb_violation {
                println!("warning: i* < 0 — the divine point violates the zero lower bound");
            }
            if (cfg.policy.intercept - rate.i_star).abs() > 1e-12 {
                println!(
                    "note: policy intercept {:.6} differs from i*; the steady state is not the divine point",
                    cfg.policy.intercept
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(cfg: &ModelConfig, format: Format) -> Result<ExitCode, Error> {
    let lin = linear::linearize(&cfg.clone().with_efficient_intercept())?;
    let cond = linear::sigma_condition(cfg);
    let nulls = linear::nullclines(&lin);
    let tight = linear::classify_branch(&lin, PhillipsBranch::Tight);
    let slack = linear::classify_branch(&lin, PhillipsBranch::Slack);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "system": lin,
                    "tight": tight,
                    "slack": slack,
                    "sigma_condition": cond,
                    "nullclines": nulls,
                }))?
            );
        }
        Format::Text => {
            let print_branch = |name: &str, c: &linear::Classification, a21: f64| {
                println!("{name} branch:");
                println!(
                    "  M = [[{:.6e}, {:.6e}], [{:.6e}, {:.6e}]]",
                    lin.a11, lin.a12, a21, lin.a22
                );
                println!(
                    "  trace = {:.6e}, det = {:.6e}, discriminant = {:.6e}",
                    c.trace, c.determinant, c.discriminant
                );
                println!("  kind: {}", c.kind);
                println!(
                    "  eigenvalues: {:.6e} {:+.6e}i, {:.6e} {:+.6e}i",
                    c.eigenvalues[0].0, c.eigenvalues[0].1, c.eigenvalues[1].0, c.eigenvalues[1].1
                );
            };
            print_branch("tight", &tight, lin.a21_tight);
            if lin.kinked {
                print_branch("slack", &slack, lin.a21_slack);
            }
            println!(
                "sigma condition: sigma = {:.6} vs minimum {:.6} — {}",
                cfg.prefs.sigma,
                cond.sigma_min,
                if cond.holds {
                    "holds (source)"
                } else {
                    "violated"
                }
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn shock(
    cfg: &ModelConfig,
    kind: ShockKind,
    magnitude: f64,
    recenter: bool,
    format: Format,
) -> Result<ExitCode, Error> {
    let shock = match kind {
        ShockKind::DemandDelta => Shock::DemandDelta(magnitude),
        ShockKind::DemandSigma => Shock::DemandSigma(magnitude),
        ShockKind::DemandIntercept => Shock::DemandRateIntercept(magnitude),
        ShockKind::SupplySeparation => Shock::SupplySeparation(magnitude),
        ShockKind::SupplyEfficacy => Shock::SupplyEfficacy(magnitude),
    };
    let res = if shock.is_demand() {
        scenario::apply_demand_shock(cfg, shock)?
    } else {
        scenario::apply_supply_shock(cfg, shock, recenter)?
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&res)?),
        Format::Text => {
            println!(
                "before: u = {:.6}, pi = {:.6} (u* = {:.6})",
                res.before.u, res.before.pi, res.u_star_before
            );
            println!(
                "after:  u = {:.6}, pi = {:.6} (u* = {:.6})",
                res.after.u, res.after.pi, res.u_star_after
            );
            println!(
                "gaps: u - u* = {:+.6}, pi - pi* = {:+.6}, theta - 1 = {:+.6}",
                res.u_hat, res.pi_hat, res.tightness_gap
            );
            println!(
                "phillips branch: {}; policy: {}",
                res.branch_used,
                match res.policy_mode {
                    scenario::PolicyMode::Active => "active",
                    scenario::PolicyMode::Passive => "passive",
                }
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_gaps(
    price_index: &Path,
    tightness: &Path,
    target: f64,
    quarterly: bool,
) -> Result<GapSeries, Error> {
    let index = series::read_series_csv(price_index)?;
    let theta = series::read_series_csv(tightness)?;
    let gaps = series::compute_gaps(&index, &theta, target)?;
    Ok(if quarterly {
        series::aggregate_quarterly(&gaps)
    } else {
        gaps
    })
}

fn read_gap_csv(path: &Path) -> Result<GapSeries, Error> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if record.len() < 3 {
            return Err(Error::Parse(format!(
                "{}: expected date,tightness_gap,inflation_gap",
                path.display()
            )));
        }
        let parse = |s: &str| -> Result<f64, Error> {
            s.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{}: bad number {s:?}: {e}", path.display())))
        };
        points.push(GapPoint {
            date: record[0].parse()?,
            tightness_gap: parse(&record[1])?,
            inflation_gap: parse(&record[2])?,
        });
    }
    Ok(GapSeries { points })
}
