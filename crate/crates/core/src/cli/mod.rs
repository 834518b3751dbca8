//! Command-line front end. `run` maps parsed arguments to an
//! [`OutputRecord`] and an exit code; `main.rs` does the I/O.

pub mod output;

use std::f64::consts::{E, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{gap_certificate, linear_grid, sweep, BoundFamily};
use crate::channel::{capacity_full_cooperation, ChannelParams, LinkCapacity};
use crate::error::{Error, Result};
use crate::geometry::{
    intersection_exponent, lambda_fn, log_ball_intersection_upper, log_cap_area, log_cap_intersection,
    log_shell_cap_volume, log_shellcap_intersection_bounds, log_sphere_area, shell_cap_exponents, BallPairSpec,
    CapSpec, ShellSpec,
};
use crate::montecarlo::{
    basis_vector, verify_blowup, verify_concentration, verify_extended_isoperimetry_shell,
    verify_extended_isoperimetry_sphere, Estimator, McConfig, McReport, RadialLaw, SetSpec, ShellSet, Verdict,
};
pub use output::{Cell, Format, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_FAIL: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "relaycap", version, about = "Gaussian relay channel bounds and sphere geometry checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write the record to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cut-set, composite and compress-and-forward curves over a C0 grid.
    BoundsSweep(SweepArgs),
    /// Certified gap below C(inf) at one link capacity.
    Gap(GapArgs),
    /// Exact log-measures next to their large-dimension exponents.
    #[command(subcommand)]
    Geom(GeomCommand),
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Mc(McCommand),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Signal-to-noise ratio P/N; repeat for several curves.
    #[arg(long = "snr")]
    pub snr: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub c0_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub c0_max: f64,
    #[arg(long, default_value_t = 60)]
    pub c0_steps: usize,
    /// Optimization tolerance in bits.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

/// SNRs used when `--snr` is not given.
pub const DEFAULT_SNRS: [f64; 3] = [0.1, 1.0, 10.0];

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, default_value_t = 1.0)]
    pub snr: f64,
    #[arg(long)]
    pub c0: f64,
}

#[derive(Debug, Args, Clone)]
pub struct AngleUnit {
    /// Angles are given in degrees (they are always reported in radians).
    #[arg(long, global = true)]
    pub deg: bool,
}

impl AngleUnit {
    fn convert(&self, v: f64) -> f64 {
        if self.deg {
            v.to_radians()
        } else {
            v
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GeomCommand {
    /// Cap area on the sphere of radius sqrt(m N).
    CapArea {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        n_scale: f64,
        #[arg(long)]
        theta: f64,
        #[command(flatten)]
        unit: AngleUnit,
    },
    /// Intersection of two caps with orthogonal poles.
    CapIntersect {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        n_scale: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        theta2: f64,
        #[command(flatten)]
        unit: AngleUnit,
    },
    /// Shell-cap volume, or the intersection of two shell caps with `--omega`.
    ShellCap {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        n_scale: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        omega: Option<f64>,
        #[command(flatten)]
        unit: AngleUnit,
    },
    /// Intersection of two balls.
    BallIntersect {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long)]
        d: f64,
    },
    /// log2(2 pi e N (sin^2 theta - cos^2 omega)).
    Exponent {
        #[arg(long, default_value_t = 1.0)]
        n_scale: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        omega: f64,
        #[command(flatten)]
        unit: AngleUnit,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    Cap,
    Band,
    Twocaps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Conditional,
    HitOrMiss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadialLawArg {
    Uniform,
    Volume,
}

#[derive(Debug, Args, Clone)]
pub struct McCommon {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of independent Y draws.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Samples per estimate.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Angular slack in Cap(Y, omega + slack); defaults to epsilon.
    #[arg(long)]
    pub slack: Option<f64>,
    #[arg(long, value_enum, default_value = "conditional")]
    pub estimator: EstimatorArg,
    #[command(flatten)]
    pub unit: AngleUnit,
}

#[derive(Debug, Subcommand)]
pub enum McCommand {
    /// Tail of one coordinate against the Chebyshev bound 1/(m mu^2).
    Concentration {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mu: f64,
        #[command(flatten)]
        common: McCommon,
    },
    /// Probability of the (pi/2 - theta + epsilon)-neighbourhood of a set.
    Blowup {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "cap")]
        set: SetKind,
        #[arg(long)]
        theta: f64,
        #[command(flatten)]
        common: McCommon,
    },
    /// Extended isoperimetry on the sphere.
    IsoperimetrySphere {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "cap")]
        set: SetKind,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        omega: f64,
        #[command(flatten)]
        common: McCommon,
    },
    /// Extended isoperimetry on the shell.
    IsoperimetryShell {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "cap")]
        set: SetKind,
        /// Effective angle of the direction set.
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        n_scale: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Extrude over only the innermost fraction of the shell.
        #[arg(long)]
        inner_fraction: Option<f64>,
        #[arg(long, value_enum, default_value = "uniform")]
        radial_law: RadialLawArg,
        #[command(flatten)]
        common: McCommon,
    },
}

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err.root() {
        Error::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_INVALID,
    }
}

fn exit_code_for_verdict(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Executes a parsed command.
pub fn run(cli: &Cli) -> Result<(OutputRecord, i32)> {
    match &cli.command {
        Command::BoundsSweep(a) => cmd_bounds_sweep(a).map(|r| (r, EXIT_OK)),
        Command::Gap(a) => cmd_gap(a).map(|r| (r, EXIT_OK)),
        Command::Geom(g) => cmd_geom(g).map(|r| (r, EXIT_OK)),
        Command::Mc(c) => cmd_mc(c),
    }
}

pub fn cmd_bounds_sweep(a: &SweepArgs) -> Result<OutputRecord> {
    let snrs: Vec<f64> = if a.snr.is_empty() { DEFAULT_SNRS.to_vec() } else { a.snr.clone() };
    if !(a.c0_min.is_finite() && a.c0_min >= 0.0 && a.c0_max.is_finite()) {
        return Err(Error::invalid("c0 range must be finite with c0-min >= 0"));
    }
    let grid = linear_grid(a.c0_min, a.c0_max, a.c0_steps)?;
    let mut rec = OutputRecord::new("bounds-sweep", &["snr", "c0", "cutset", "new_bound", "cf_rate", "c_infinity"]);
    rec.param("snr", snrs.iter().map(f64::to_string).collect::<Vec<_>>().join(";"))
        .param("c0_min", a.c0_min)
        .param("c0_max", a.c0_max)
        .param("c0_steps", a.c0_steps)
        .param("tol", a.tol);
    for &snr in &snrs {
        let params = ChannelParams::from_snr(snr)?;
        let curves = sweep(&params, &grid, a.tol)?;
        let of = |f: BoundFamily| curves.iter().find(|c| c.family == f).expect("sweep returns every family");
        let (cs, nb, cf) = (of(BoundFamily::CutSet), of(BoundFamily::NewBound), of(BoundFamily::CompressForward));
        let c_inf = capacity_full_cooperation(&params).bits();
        for (i, c0) in grid.iter().enumerate() {
            rec.push(vec![
                snr.into(),
                c0.bits().into(),
                cs.points[i].rate.bits().into(),
                nb.points[i].rate.bits().into(),
                cf.points[i].rate.bits().into(),
                c_inf.into(),
            ]);
        }
    }
    Ok(rec)
}

pub fn cmd_gap(a: &GapArgs) -> Result<OutputRecord> {
    if !(a.c0.is_finite() && a.c0 > 0.0) {
        return Err(Error::invalid(format!("c0 must be finite and > 0, got {}", a.c0)));
    }
    let params = ChannelParams::from_snr(a.snr)?;
    let g = gap_certificate(&params, LinkCapacity::new(a.c0)?)?;
    let mut rec = OutputRecord::new(
        "gap",
        &["theta0", "delta1", "derivative", "gap_lower_bound", "certified_bound", "c_infinity"],
    );
    rec.param("snr", a.snr).param("c0", a.c0);
    rec.push(vec![
        g.theta0.into(),
        g.delta1.into(),
        g.derivative_at_pi_half.into(),
        g.gap_lower_bound.into(),
        g.certified_bound.into(),
        capacity_full_cooperation(&params).bits().into(),
    ]);
    Ok(rec)
}

fn per_dim(log2_value: f64, m: usize) -> f64 {
    2.0 * log2_value / m as f64
}

pub fn cmd_geom(g: &GeomCommand) -> Result<OutputRecord> {
    match g {
        GeomCommand::CapArea { m, n_scale, theta, unit } => {
            let t = unit.convert(*theta);
            let spec = CapSpec::with_scale(*m, *n_scale, t)?;
            let area = log_cap_area(&spec)?.log2_value;
            let exponent = (2.0 * PI * E * n_scale * t.sin().powi(2)).log2();
            let mut rec = OutputRecord::new(
                "geom cap-area",
                &["m", "n_scale", "theta", "log2_measure", "log2_sphere", "exponent", "per_dim_gap"],
            );
            rec.push(vec![
                Cell::Count(*m as u64),
                (*n_scale).into(),
                t.into(),
                area.into(),
                log_sphere_area(*m, spec.radius).log2_value.into(),
                exponent.into(),
                (per_dim(area, *m) - exponent).into(),
            ]);
            Ok(rec)
        }
        GeomCommand::CapIntersect { m, n_scale, theta, theta2, unit } => {
            let (t1, t2) = (unit.convert(*theta), unit.convert(*theta2));
            let r = log_cap_intersection(*m, *n_scale, t1, t2)?;
            let exponent = intersection_exponent(*n_scale, t1, t2)?;
            let v = r.log_measure.log2_value;
            let mut rec = OutputRecord::new(
                "geom cap-intersect",
                &["m", "n_scale", "theta", "theta2", "log2_measure", "exponent", "per_dim_gap", "near_degenerate"],
            );
            rec.push(vec![
                Cell::Count(*m as u64),
                (*n_scale).into(),
                t1.into(),
                t2.into(),
                v.into(),
                exponent.into(),
                (per_dim(v, *m) - exponent).into(),
                Cell::Count(r.near_degenerate as u64),
            ]);
            Ok(rec)
        }
        GeomCommand::ShellCap { m, n_scale, delta, theta, omega, unit } => {
            let spec = ShellSpec::new(*m, *n_scale, *delta)?;
            let t = unit.convert(*theta);
            let cols = [
                "m",
                "n_scale",
                "delta",
                "theta",
                "omega",
                "log2_measure",
                "exponent_lower",
                "exponent_upper",
                "per_dim_gap_lower",
                "per_dim_gap_upper",
            ];
            let mut rec = OutputRecord::new("geom shell-cap", &cols);
            let (w, v, lo, hi) = match omega {
                Some(w) => {
                    let w = unit.convert(*w);
                    let r = log_shellcap_intersection_bounds(&spec, t, w)?;
                    (w, r.exact.log2_value, r.lower.log2_value, r.upper.log2_value)
                }
                None => {
                    let v = log_shell_cap_volume(&spec, t)?.log2_value;
                    let (lo, hi) = shell_cap_exponents(&spec, t);
                    (f64::NAN, v, lo.log2_value, hi.log2_value)
                }
            };
            let (elo, ehi) = (per_dim(lo, *m), per_dim(hi, *m));
            rec.push(vec![
                Cell::Count(*m as u64),
                (*n_scale).into(),
                (*delta).into(),
                t.into(),
                w.into(),
                v.into(),
                elo.into(),
                ehi.into(),
                (per_dim(v, *m) - elo).into(),
                (per_dim(v, *m) - ehi).into(),
            ]);
            Ok(rec)
        }
        GeomCommand::BallIntersect { m, r1, r2, d } => {
            let spec = BallPairSpec::new(*m, *r1, *r2, *d)?;
            let b = log_ball_intersection_upper(&spec)?;
            let exponent = (PI * E * lambda_fn(&spec)).log2();
            let mut rec = OutputRecord::new(
                "geom ball-intersect",
                &["m", "r1", "r2", "d", "lambda", "log2_measure", "log2_bound", "exponent", "per_dim_gap"],
            );
            rec.push(vec![
                Cell::Count(*m as u64),
                (*r1).into(),
                (*r2).into(),
                (*d).into(),
                b.lambda.into(),
                b.exact.log2_value.into(),
                b.bound.log2_value.into(),
                exponent.into(),
                (per_dim(b.exact.log2_value, *m) - exponent).into(),
            ]);
            Ok(rec)
        }
        GeomCommand::Exponent { n_scale, theta, omega, unit } => {
            let (t, w) = (unit.convert(*theta), unit.convert(*omega));
            let mut rec = OutputRecord::new("geom exponent", &["n_scale", "theta", "omega", "exponent"]);
            rec.push(vec![(*n_scale).into(), t.into(), w.into(), intersection_exponent(*n_scale, t, w)?.into()]);
            Ok(rec)
        }
    }
}

fn config(c: &McCommon) -> Result<McConfig> {
    let mut cfg = McConfig::new(c.seed, c.samples, c.trials, c.epsilon)?;
    cfg.angular_slack = c.slack.map(|s| c.unit.convert(s));
    cfg.estimator = match c.estimator {
        EstimatorArg::Conditional => Estimator::Conditional,
        EstimatorArg::HitOrMiss => Estimator::HitOrMiss,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn build_set(kind: SetKind, m: usize, theta: f64) -> Result<SetSpec> {
    let pole = basis_vector(m, 0);
    match kind {
        SetKind::Cap => SetSpec::cap(m, &pole, theta),
        SetKind::Band => SetSpec::band_with_effective_angle(m, &pole, theta),
        SetKind::Twocaps => SetSpec::two_caps_with_effective_angle(m, &pole, theta),
    }
}

fn set_label(kind: SetKind) -> &'static str {
    match kind {
        SetKind::Cap => "cap",
        SetKind::Band => "band",
        SetKind::Twocaps => "twocaps",
    }
}

const MC_COLUMNS: [&str; 8] =
    ["estimate", "std_error", "n_used", "threshold", "seed", "effective_theta", "omega", "verdict"];

fn mc_record(command: &str, c: &McCommon, report: &McReport, effective_theta: f64, omega: f64) -> OutputRecord {
    let mut rec = OutputRecord::new(command, &MC_COLUMNS);
    rec.param("seed", c.seed)
        .param("trials", c.trials)
        .param("samples", c.samples)
        .param("epsilon", c.epsilon)
        .param("estimator", format!("{:?}", c.estimator).to_lowercase())
        .param("verdict", report.verdict);
    if let Some(s) = c.slack {
        rec.param("slack", c.unit.convert(s));
    }
    rec.push(vec![
        report.estimate.into(),
        report.std_error.into(),
        Cell::Count(report.n_used as u64),
        report.threshold.into(),
        Cell::Count(report.seed),
        effective_theta.into(),
        omega.into(),
        Cell::Text(report.verdict.to_string()),
    ]);
    rec
}

pub fn cmd_mc(c: &McCommand) -> Result<(OutputRecord, i32)> {
    let (rec, verdict) = match c {
        McCommand::Concentration { m, mu, common } => {
            let r = verify_concentration(*m, *mu, &config(common)?)?;
            let mut rec = mc_record("mc concentration", common, &r, f64::NAN, f64::NAN);
            rec.param("m", m).param("mu", mu);
            (rec, r.verdict)
        }
        McCommand::Blowup { m, set, theta, common } => {
            let cfg = config(common)?;
            let s = build_set(*set, *m, common.unit.convert(*theta))?;
            let r = verify_blowup(*m, &s, cfg.epsilon, &cfg)?;
            let mut rec = mc_record("mc blowup", common, &r, s.effective_theta, f64::NAN);
            rec.param("m", m).param("set", set_label(*set)).param("theta", common.unit.convert(*theta));
            (rec, r.verdict)
        }
        McCommand::IsoperimetrySphere { m, set, theta, omega, common } => {
            let cfg = config(common)?;
            let s = build_set(*set, *m, common.unit.convert(*theta))?;
            let w = common.unit.convert(*omega);
            let r = verify_extended_isoperimetry_sphere(*m, &s, w, &cfg)?;
            let mut rec = mc_record("mc isoperimetry-sphere", common, &r, s.effective_theta, w);
            rec.param("m", m).param("set", set_label(*set)).param("theta", common.unit.convert(*theta));
            (rec, r.verdict)
        }
        McCommand::IsoperimetryShell { m, set, theta, omega, n_scale, delta, inner_fraction, radial_law, common } => {
            let mut cfg = config(common)?;
            cfg.radial_law = match radial_law {
                RadialLawArg::Uniform => RadialLaw::Uniform,
                RadialLawArg::Volume => RadialLaw::Volume,
            };
            let shell = ShellSpec::new(*m, *n_scale, *delta)?;
            let dirs = build_set(*set, *m, common.unit.convert(*theta))?;
            let s = match inner_fraction {
                Some(f) if *f > 0.0 && *f <= 1.0 => ShellSet::inner(shell, dirs, *f)?,
                Some(f) => return Err(Error::invalid(format!("inner fraction must lie in (0, 1], got {f}"))),
                None => ShellSet::full(shell, dirs)?,
            };
            let w = common.unit.convert(*omega);
            let r = verify_extended_isoperimetry_shell(&s, w, &cfg)?;
            let mut rec = mc_record("mc isoperimetry-shell", common, &r, s.effective_theta, w);
            rec.param("m", m)
                .param("set", set_label(*set))
                .param("theta", common.unit.convert(*theta))
                .param("n_scale", n_scale)
                .param("delta", delta)
                .param("radial_law", format!("{radial_law:?}").to_lowercase());
            if let Some(f) = inner_fraction {
                rec.param("inner_fraction", f);
            }
            (rec, r.verdict)
        }
    };
    Ok((rec, exit_code_for_verdict(verdict)))
}
