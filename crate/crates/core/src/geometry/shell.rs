//! Spherical shells `R_L <= |x| <= R_U` with `R_L = sqrt(m (N - delta))`
//! and `R_U = sqrt(m (N + delta))`, and their radially extruded caps.

use std::f64::consts::{E, FRAC_PI_2, LN_2, PI};

use super::caps::{log_cap_area, log_cap_intersection, sin2_minus_cos2, CapSpec};
use super::measure::LogMeasure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSpec {
    pub m: usize,
    pub n_scale: f64,
    pub delta: f64,
}

impl ShellSpec {
    pub fn new(m: usize, n_scale: f64, delta: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!("shell needs dimension m >= 2, got {m}")));
        }
        if !(n_scale.is_finite() && n_scale > 0.0) {
            return Err(Error::domain(format!("scale N must be finite and > 0, got {n_scale}")));
        }
        if !(delta >= 0.0 && delta < n_scale) {
            return Err(Error::domain(format!("0 <= delta < N violated: delta = {delta}, N = {n_scale}")));
        }
        Ok(Self { m, n_scale, delta })
    }

    pub fn r_lower(&self) -> f64 {
        (self.m as f64 * (self.n_scale - self.delta)).sqrt()
    }

    pub fn r_upper(&self) -> f64 {
        (self.m as f64 * (self.n_scale + self.delta)).sqrt()
    }

    /// Radius of the sphere the shell collapses to as `delta -> 0`.
    pub fn r_nominal(&self) -> f64 {
        (self.m as f64 * self.n_scale).sqrt()
    }
}

/// `log2 int_{r_lo}^{r_hi} (r / r_base)^{m-1} dr`.
pub fn log_radial_factor(m: usize, r_lo: f64, r_hi: f64, r_base: f64) -> f64 {
    if r_hi <= r_lo {
        return f64::NEG_INFINITY;
    }
    let mf = m as f64;
    let ln = (r_base / mf).ln() + mf * (r_hi / r_base).ln() + (-(mf * (r_lo / r_hi).ln()).exp_m1()).ln();
    ln / LN_2
}

/// Volume of the full shell.
pub fn log_shell_volume(spec: &ShellSpec) -> LogMeasure {
    let r_lo = spec.r_lower();
    let sphere = super::caps::log_sphere_area(spec.m, r_lo).log2_value;
    LogMeasure::volume(sphere + log_radial_factor(spec.m, r_lo, spec.r_upper(), r_lo))
}

/// Exact volume of the cone of half-angle `theta` cut out of the shell.
/// A zero-thickness shell gives `-inf`.
pub fn log_shell_cap_volume(spec: &ShellSpec, theta: f64) -> Result<LogMeasure> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) {
        return Err(Error::domain(format!("theta must lie in (0, pi/2], got {theta}")));
    }
    let r_lo = spec.r_lower();
    let cap = log_cap_area(&CapSpec::new(spec.m, r_lo, theta)?)?;
    let radial = log_radial_factor(spec.m, r_lo, spec.r_upper(), r_lo);
    Ok(LogMeasure::volume(cap.log2_value + radial))
}

/// The two sides `(m/2) log2(2 pi e (N -+ delta) sin^2 theta)` of the
/// asymptotic shell-cap volume, without the vanishing slack.
pub fn shell_cap_exponents(spec: &ShellSpec, theta: f64) -> (LogMeasure, LogMeasure) {
    let half_m = spec.m as f64 / 2.0;
    let s2 = theta.sin().powi(2);
    let side = |n: f64| LogMeasure::volume(half_m * (2.0 * PI * E * n * s2).log2());
    (side(spec.n_scale - spec.delta), side(spec.n_scale + spec.delta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellCapIntersection {
    pub exact: LogMeasure,
    /// `(m/2) log2(2 pi e N (sin^2 theta - cos^2 omega))`.
    pub lower: LogMeasure,
    /// `(m/2) log2(2 pi e (N + delta) (sin^2 theta - cos^2 omega))`.
    pub upper: LogMeasure,
    pub near_degenerate: bool,
}

/// Volume of the intersection of two shell caps with orthogonal poles,
/// together with the asymptotic exponent pair.
pub fn log_shellcap_intersection_bounds(spec: &ShellSpec, theta: f64, omega: f64) -> Result<ShellCapIntersection> {
    let m = spec.m;
    let r_lo = spec.r_lower();
    let on_base = log_cap_intersection(m, (r_lo * r_lo) / m as f64, theta, omega)?;
    let radial = log_radial_factor(m, r_lo, spec.r_upper(), r_lo);
    let q = sin2_minus_cos2(theta, omega);
    let half_m = m as f64 / 2.0;
    let side = |n: f64| LogMeasure::volume(half_m * (2.0 * PI * E * n * q).log2());
    Ok(ShellCapIntersection {
        exact: LogMeasure::volume(on_base.log_measure.log2_value + radial),
        lower: side(spec.n_scale),
        upper: side(spec.n_scale + spec.delta),
        near_degenerate: on_base.near_degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::caps::log_ball_volume;
    use crate::geometry::measure::ln_sub;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn radial_factor_closed_form() {
        // int_1^2 r^2 dr = 7/3
        assert!((log_radial_factor(3, 1.0, 2.0, 1.0) - (7.0f64 / 3.0).log2()).abs() < 1e-14);
        assert_eq!(log_radial_factor(3, 1.0, 1.0, 1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn shell_volume_is_ball_difference() {
        for &m in &[3, 30, 700] {
            let spec = ShellSpec::new(m, 1.0, 0.2).unwrap();
            let outer = log_ball_volume(m, spec.r_upper()).log2_value;
            let inner = log_ball_volume(m, spec.r_lower()).log2_value;
            let want = ln_sub(outer * LN_2, inner * LN_2) / LN_2;
            let got = log_shell_volume(&spec).log2_value;
            assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "m={m}");
        }
    }

    #[test]
    fn degenerate_and_hemispherical() {
        let thin = ShellSpec::new(50, 1.0, 0.0).unwrap();
        assert!(log_shell_cap_volume(&thin, 1.0).unwrap().is_zero());
        let spec = ShellSpec::new(80, 1.0, 0.1).unwrap();
        let half = log_shell_cap_volume(&spec, FRAC_PI_2).unwrap().log2_value;
        assert!((half - (log_shell_volume(&spec).log2_value - 1.0)).abs() < 1e-11);
        assert!(ShellSpec::new(10, 1.0, 1.0).is_err());
    }

    #[test]
    fn shell_cap_between_exponents() {
        let spec = ShellSpec::new(500, 1.0, 0.05).unwrap();
        let v = log_shell_cap_volume(&spec, PI / 3.0).unwrap().log2_value;
        let (lo, hi) = shell_cap_exponents(&spec, PI / 3.0);
        let slack = 0.05 * 500.0 / 2.0;
        assert!(v >= lo.log2_value - slack && v <= hi.log2_value + slack);
    }

    #[test]
    fn intersection_symmetry_cases() {
        let spec = ShellSpec::new(120, 1.0, 0.1).unwrap();
        let t = deg(70.0);
        let half = log_shellcap_intersection_bounds(&spec, t, FRAC_PI_2).unwrap().exact.log2_value;
        let cap = log_shell_cap_volume(&spec, t).unwrap().log2_value;
        assert!((half - (cap - 1.0)).abs() < 1e-8 * cap.abs());
        let quarter = log_shellcap_intersection_bounds(&spec, FRAC_PI_2, FRAC_PI_2).unwrap().exact.log2_value;
        let shell = log_shell_volume(&spec).log2_value;
        assert!((quarter - (shell - 2.0)).abs() < 1e-8 * shell.abs());
    }
}
