//! Experiments for measure concentration, blowing-up and the extended
//! isoperimetric inequalities, each reduced to a success frequency compared
//! against a threshold.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use super::estimate::{estimate_intersection, Estimator};
use super::rng::stream_rng;
use super::sampling::{sample_uniform_sphere, CapSampler};
use super::sets::{RadialLaw, SetSpec, ShellSet};
use crate::error::{Error, Result};
use crate::geometry::{log_cap_intersection, log_shellcap_intersection_bounds, log_sphere_area};

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub seed: u64,
    pub samples_per_estimate: usize,
    pub trials: usize,
    /// Probability slack, and angular slack unless `angular_slack` is set.
    pub epsilon: f64,
    pub angular_slack: Option<f64>,
    pub estimator: Estimator,
    pub radial_law: RadialLaw,
}

impl McConfig {
    pub fn new(seed: u64, samples_per_estimate: usize, trials: usize, epsilon: f64) -> Result<Self> {
        let cfg = Self {
            seed,
            samples_per_estimate,
            trials,
            epsilon,
            angular_slack: None,
            estimator: Estimator::default(),
            radial_law: RadialLaw::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples_per_estimate == 0 || self.trials == 0 {
            return Err(Error::invalid("sample and trial counts must be >= 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if let Some(s) = self.angular_slack {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::invalid(format!("angular slack must be finite and >= 0, got {s}")));
            }
        }
        Ok(())
    }

    pub fn slack(&self) -> f64 {
        self.angular_slack.unwrap_or(self.epsilon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McReport {
    pub estimate: f64,
    pub std_error: f64,
    pub n_used: usize,
    pub threshold: f64,
    pub verdict: Verdict,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Claim {
    AtLeast,
    AtMost,
}

fn judge(estimate: f64, std_error: f64, threshold: f64, claim: Claim) -> Verdict {
    if (estimate - threshold).abs() < 3.0 * std_error {
        return Verdict::Inconclusive;
    }
    let holds = match claim {
        Claim::AtLeast => estimate >= threshold,
        Claim::AtMost => estimate <= threshold,
    };
    if holds {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn frequency_report(hits: usize, n: usize, threshold: f64, claim: Claim, seed: u64) -> McReport {
    let p = hits as f64 / n as f64;
    let std_error = (p * (1.0 - p) / n as f64).sqrt();
    McReport { estimate: p, std_error, n_used: n, threshold, verdict: judge(p, std_error, threshold, claim), seed }
}

/// Counts uniform sphere points satisfying `event`, in fixed-size chunks
/// that each own an RNG stream.
fn count_sphere_hits<F>(m: usize, n: usize, seed: u64, event: F) -> usize
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let len = CHUNK.min(n - k * CHUNK);
            (0..len).filter(|_| event(&sample_uniform_sphere(m, 1.0, &mut rng))).count()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

/// `P(|<e1, Y/R>| >= mu)` against the Chebyshev bound `1 / (m mu^2)`.
pub fn verify_concentration(m: usize, mu_cut: f64, cfg: &McConfig) -> Result<McReport> {
    cfg.validate()?;
    if m < 2 {
        return Err(Error::domain(format!("concentration needs m >= 2, got {m}")));
    }
    if !(mu_cut > 0.0 && mu_cut < 1.0) {
        return Err(Error::domain(format!("mu must lie in (0, 1), got {mu_cut}")));
    }
    let threshold = 1.0 / (m as f64 * mu_cut * mu_cut);
    let n = cfg.samples_per_estimate;
    let hits = count_sphere_hits(m, n, cfg.seed, |y| y[0].abs() >= mu_cut);
    let mut report = frequency_report(hits, n, threshold, Claim::AtMost, cfg.seed);
    if threshold >= 1.0 {
        report.verdict = Verdict::Pass;
    }
    Ok(report)
}

/// `P(angle(Y, A) <= pi/2 - theta + epsilon)` against `1 - epsilon`.
pub fn verify_blowup(m: usize, set: &SetSpec, epsilon: f64, cfg: &McConfig) -> Result<McReport> {
    cfg.validate()?;
    if set.m != m {
        return Err(Error::invalid(format!("set lives in dimension {}, expected {m}", set.m)));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    let radius = FRAC_PI_2 - set.effective_theta + epsilon;
    let n = cfg.samples_per_estimate;
    let threshold = 1.0 - epsilon;
    set.min_angle_to(&set_probe(m))?;
    let hits = count_sphere_hits(m, n, cfg.seed, |y| set.min_angle_to(y).is_ok_and(|d| d <= radius));
    Ok(frequency_report(hits, n, threshold, Claim::AtLeast, cfg.seed))
}

fn set_probe(m: usize) -> Vec<f64> {
    let mut v = vec![0.0; m];
    v[0] = 1.0;
    v
}

/// Per-trial detail of an extended isoperimetry experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoperimetryOutcome {
    pub report: McReport,
    /// `ln` of the target `V`, in the units of `ln_estimates`.
    pub ln_target: f64,
    pub ln_estimates: Vec<f64>,
    pub rel_std_errors: Vec<f64>,
}

fn check_angles(theta: f64, omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega <= FRAC_PI_2) {
        return Err(Error::domain(format!("omega must lie in (0, pi/2], got {omega}")));
    }
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::domain(format!("effective angle must lie in (0, pi/2], got {theta}")));
    }
    if theta + omega <= FRAC_PI_2 {
        return Err(Error::domain(format!("theta + omega > pi/2 violated: {theta} + {omega} <= {FRAC_PI_2}")));
    }
    Ok(())
}

/// Runs `cfg.trials` independent trials; trial `t` draws a uniform direction
/// `Y` (and nothing else beforehand) from stream `t`, then `extra` may
/// consume further randomness before the intersection is estimated.
fn run_trials<X>(set: &SetSpec, alpha: f64, cfg: &McConfig, extra: X) -> Result<Vec<(f64, f64)>>
where
    X: Fn(&mut rand_chacha::ChaCha8Rng) + Sync,
{
    let m = set.m;
    if alpha >= PI {
        let exact = set.ln_fraction()?;
        return Ok(vec![(exact, 0.0); cfg.trials]);
    }
    let sampler = CapSampler::new(m, alpha)?;
    let results: Vec<Result<(f64, f64)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(cfg.seed, t as u64);
            let y = sample_uniform_sphere(m, 1.0, &mut rng);
            extra(&mut rng);
            let e = estimate_intersection(set, &y, &sampler, cfg.samples_per_estimate, cfg.estimator, &mut rng)?;
            Ok((e.ln_value, e.rel_std_error))
        })
        .collect();
    results.into_iter().collect()
}

fn summarize(ln_values: Vec<(f64, f64)>, ln_target: f64, cfg: &McConfig) -> IsoperimetryOutcome {
    let bar = ln_target + (1.0 - cfg.epsilon).ln();
    let hits = ln_values.iter().filter(|(v, _)| *v > bar).count();
    let report = frequency_report(hits, ln_values.len(), 1.0 - cfg.epsilon, Claim::AtLeast, cfg.seed);
    let (ln_estimates, rel_std_errors) = ln_values.into_iter().unzip();
    IsoperimetryOutcome { report, ln_target, ln_estimates, rel_std_errors }
}

/// Sphere experiment with all measures as natural-log fractions of the
/// sphere.
pub fn isoperimetry_sphere(m: usize, set: &SetSpec, omega: f64, cfg: &McConfig) -> Result<IsoperimetryOutcome> {
    cfg.validate()?;
    if set.m != m {
        return Err(Error::invalid(format!("set lives in dimension {}, expected {m}", set.m)));
    }
    let theta = set.effective_theta;
    check_angles(theta, omega)?;
    let r = (m as f64).sqrt();
    let v = log_cap_intersection(m, 1.0, theta, omega)?.log_measure.log2_value;
    let ln_target = (v - log_sphere_area(m, r).log2_value) * LN_2;
    let alpha = (omega + cfg.slack()).min(PI);
    let values = run_trials(set, alpha, cfg, |_| {})?;
    Ok(summarize(values, ln_target, cfg))
}

/// `P(mu(A ∩ Cap(Y, omega + eps)) > (1 - eps) V)` against `1 - eps`.
pub fn verify_extended_isoperimetry_sphere(m: usize, set: &SetSpec, omega: f64, cfg: &McConfig) -> Result<McReport> {
    Ok(isoperimetry_sphere(m, set, omega, cfg)?.report)
}

/// Shell experiment with all measures as natural-log volumes. The radial
/// part of `|A ∩ ShellCap(Y, alpha)|` is integrated exactly; only the
/// direction part is sampled.
pub fn isoperimetry_shell(set: &ShellSet, omega: f64, cfg: &McConfig) -> Result<IsoperimetryOutcome> {
    cfg.validate()?;
    let shell = set.shell;
    let theta = set.effective_theta;
    check_angles(theta, omega)?;
    let v = log_shellcap_intersection_bounds(&shell, theta, omega)?.exact.log2_value;
    let (r_lo, r_hi) = (shell.r_lower(), shell.r_upper());
    let m = shell.m as f64;
    let law = cfg.radial_law;
    let draw_radius = move |rng: &mut rand_chacha::ChaCha8Rng| {
        let u: f64 = rng.gen();
        // The intersection depends on the direction of Y only.
        let _radius = match law {
            RadialLaw::Uniform => r_lo + u * (r_hi - r_lo),
            RadialLaw::Volume => (r_lo.powf(m) + u * (r_hi.powf(m) - r_lo.powf(m))).powf(1.0 / m),
        };
    };
    let alpha = (omega + cfg.slack()).min(PI);
    let scale = (log_sphere_area(shell.m, r_lo).log2_value + set.log_radial()) * LN_2;
    let values =
        run_trials(&set.directions, alpha, cfg, draw_radius)?.into_iter().map(|(v, se)| (v + scale, se)).collect();
    Ok(summarize(values, v * LN_2, cfg))
}

/// `P(|A ∩ ShellCap(Y, omega + eps)| > (1 - eps) V)` against `1 - eps`.
pub fn verify_extended_isoperimetry_shell(set: &ShellSet, omega: f64, cfg: &McConfig) -> Result<McReport> {
    Ok(isoperimetry_shell(set, omega, cfg)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ShellSpec;
    use crate::montecarlo::sampling::basis_vector;

    fn cfg(seed: u64, samples: usize, trials: usize) -> McConfig {
        McConfig::new(seed, samples, trials, 0.1).unwrap()
    }

    #[test]
    fn verdict_rule() {
        assert_eq!(judge(0.95, 0.01, 0.9, Claim::AtLeast), Verdict::Pass);
        assert_eq!(judge(0.92, 0.01, 0.9, Claim::AtLeast), Verdict::Inconclusive);
        assert_eq!(judge(0.8, 0.01, 0.9, Claim::AtLeast), Verdict::Fail);
        assert_eq!(judge(0.8, 0.01, 0.9, Claim::AtMost), Verdict::Pass);
        assert_eq!(judge(1.0, 0.0, 0.9, Claim::AtLeast), Verdict::Pass);
    }

    #[test]
    fn config_validation() {
        assert!(McConfig::new(1, 0, 1, 0.1).is_err());
        assert!(McConfig::new(1, 1, 1, 1.0).is_err());
        let mut c = cfg(1, 1, 1);
        c.angular_slack = Some(-1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn concentration_small_cases() {
        let r = verify_concentration(2, 0.5, &cfg(1, 1000, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let est: Vec<f64> = [10, 100, 1000]
            .iter()
            .map(|&m| verify_concentration(m, 0.1, &cfg(2, 20_000, 1)).unwrap().estimate)
            .collect();
        assert!(est[0] > est[1] && est[1] > est[2]);
    }

    #[test]
    fn blowup_of_cap_and_band() {
        let m = 500;
        let p = basis_vector(m, 0);
        let theta = 70f64.to_radians();
        for set in [SetSpec::cap(m, &p, theta).unwrap(), SetSpec::band_with_effective_angle(m, &p, theta).unwrap()] {
            let r = verify_blowup(m, &set, 0.1, &cfg(3, 5000, 1)).unwrap();
            assert!(r.estimate >= 0.9);
        }
        let r = verify_blowup(m, &SetSpec::cap(m, &p, theta).unwrap(), 1.0, &cfg(3, 100, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn degenerate_slack_is_exact() {
        let m = 40;
        let set = SetSpec::cap(m, &basis_vector(m, 0), 1.2).unwrap();
        let mut c = cfg(4, 10, 5);
        c.angular_slack = Some(PI);
        let out = isoperimetry_sphere(m, &set, 1.0, &c).unwrap();
        assert_eq!(out.report.verdict, Verdict::Pass);
        assert!(out.ln_estimates.iter().all(|&v| v == set.ln_fraction().unwrap()));
    }

    #[test]
    fn precondition_errors() {
        let m = 30;
        let set = SetSpec::cap(m, &basis_vector(m, 0), 0.5).unwrap();
        assert!(matches!(verify_extended_isoperimetry_sphere(m, &set, 0.5, &cfg(1, 10, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn deterministic_reports() {
        let m = 60;
        let set = SetSpec::two_caps_with_effective_angle(m, &basis_vector(m, 0), 1.2).unwrap();
        let a = isoperimetry_sphere(m, &set, 0.7, &cfg(5, 200, 20)).unwrap();
        let b = isoperimetry_sphere(m, &set, 0.7, &cfg(5, 200, 20)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn thin_shell_matches_sphere() {
        let m = 80;
        let (theta, omega) = (1.2, 0.7);
        let dirs = SetSpec::cap(m, &basis_vector(m, 0), theta).unwrap();
        let c = cfg(6, 500, 60);
        let sphere = isoperimetry_sphere(m, &dirs, omega, &c).unwrap().report;
        let shell = ShellSet::full(ShellSpec::new(m, 1.0, 1e-6).unwrap(), dirs).unwrap();
        let on_shell = isoperimetry_shell(&shell, omega, &c).unwrap().report;
        let se = (sphere.std_error.powi(2) + on_shell.std_error.powi(2)).sqrt();
        assert!((sphere.estimate - on_shell.estimate).abs() <= 2.0 * se + 1e-12);
    }
}
