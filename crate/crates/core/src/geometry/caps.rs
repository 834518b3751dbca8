//! Spheres, spherical caps and the intersection of two caps with
//! orthogonal poles.

use std::f64::consts::{E, FRAC_PI_2, LN_2, PI};

use super::measure::{ln_add, ln_sub, log2_add, LogMeasure};
use super::quadrature::try_integrate_log2;
use super::special::{ln_gamma, ln_reg_inc_beta_split};
use crate::error::{Error, Result};

const QUAD_REL_TOL: f64 = 1e-10;
const NEAR_DEGENERATE: f64 = 1e-6;

/// A cap of half-angle `theta` on the sphere of radius `radius` in `R^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapSpec {
    pub m: usize,
    pub radius: f64,
    pub theta: f64,
}

impl CapSpec {
    pub fn new(m: usize, radius: f64, theta: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!("cap needs dimension m >= 2, got {m}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::domain(format!("radius must be finite and > 0, got {radius}")));
        }
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::domain(format!("cap angle must lie in (0, pi], got {theta}")));
        }
        Ok(Self { m, radius, theta })
    }

    /// The canonical radius `sqrt(m N)`.
    pub fn with_scale(m: usize, n_scale: f64, theta: f64) -> Result<Self> {
        Self::new(m, (m as f64 * n_scale).sqrt(), theta)
    }
}

/// `log2` of the surface area of the radius-`radius` sphere in `R^m`.
pub fn log_sphere_area(m: usize, radius: f64) -> LogMeasure {
    let h = m as f64 / 2.0;
    let ln_area = LN_2 + h * PI.ln() - ln_gamma(h) + (m as f64 - 1.0) * radius.ln();
    LogMeasure::area(ln_area / LN_2)
}

/// `log2` of the volume of the radius-`radius` ball in `R^m`.
pub fn log_ball_volume(m: usize, radius: f64) -> LogMeasure {
    let h = m as f64 / 2.0;
    let ln_vol = h * PI.ln() - ln_gamma(h + 1.0) + m as f64 * radius.ln();
    LogMeasure::volume(ln_vol / LN_2)
}

/// `sin^2(a) - cos^2(b)`, written as a product that is exactly symmetric
/// in its arguments and accurate near zero.
pub fn sin2_minus_cos2(a: f64, b: f64) -> f64 {
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    (sa * sb - ca * cb) * (sa * sb + ca * cb)
}

/// Natural log of the fraction of the sphere `S^{m-1}` covered by a cap of
/// half-angle `theta` in `[0, pi]`.
pub fn ln_cap_fraction(m: usize, theta: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::domain(format!("cap needs dimension m >= 2, got {m}")));
    }
    if theta.is_nan() || theta < 0.0 {
        return Err(Error::domain(format!("cap angle must be >= 0, got {theta}")));
    }
    if theta == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    if theta >= PI {
        return Ok(0.0);
    }
    let a = (m as f64 - 1.0) / 2.0;
    let (s, c) = theta.sin_cos();
    let half_beta = ln_reg_inc_beta_split(s * s, c * c, a, 0.5)? - LN_2;
    if theta <= FRAC_PI_2 {
        Ok(half_beta)
    } else {
        Ok((-half_beta.exp()).ln_1p())
    }
}

/// Natural log of `P(s1 <= t <= s2)` where `t` is one coordinate of a
/// uniform point on the unit sphere `S^{d-1}`. Limits are clamped to
/// `[-1, 1]`.
pub fn ln_prob_interval(d: usize, s1: f64, s2: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("sphere dimension must be >= 2, got {d}")));
    }
    if s1.is_nan() || s2.is_nan() {
        return Err(Error::domain("interval limits must not be NaN"));
    }
    let s1 = s1.clamp(-1.0, 1.0);
    let s2 = s2.clamp(-1.0, 1.0);
    if s2 <= s1 {
        return Ok(f64::NEG_INFINITY);
    }
    let b = (d as f64 - 1.0) / 2.0;
    // ln P(t >= s) for s >= 0.
    let ln_tail = |s: f64| -> Result<f64> {
        if s >= 1.0 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(ln_reg_inc_beta_split(1.0 - s * s, s * s, b, 0.5)? - LN_2)
    };
    if s1 >= 0.0 {
        Ok(ln_sub(ln_tail(s1)?, ln_tail(s2)?))
    } else if s2 <= 0.0 {
        Ok(ln_sub(ln_tail(-s2)?, ln_tail(-s1)?))
    } else {
        let lo = ln_reg_inc_beta_split(s1 * s1, 1.0 - s1 * s1, 0.5, b)? - LN_2;
        let hi = ln_reg_inc_beta_split(s2 * s2, 1.0 - s2 * s2, 0.5, b)? - LN_2;
        Ok(ln_add(lo, hi))
    }
}

/// Exact `log2` area of a cap, via the incomplete beta function.
pub fn log_cap_area(spec: &CapSpec) -> Result<LogMeasure> {
    let frac = ln_cap_fraction(spec.m, spec.theta)?;
    Ok(log_sphere_area(spec.m, spec.radius).times(frac / LN_2))
}

/// The same area by adaptive quadrature of `int_0^theta sin^{m-2}`.
pub fn log_cap_area_by_quadrature(spec: &CapSpec) -> Result<LogMeasure> {
    if spec.m < 3 {
        return Err(Error::domain("quadrature form needs m >= 3"));
    }
    let k = spec.m as f64 - 2.0;
    let integral = try_integrate_log2(|rho| Ok(k * rho.sin().log2()), 0.0, spec.theta, 1e-13)?;
    let slice = log_sphere_area(spec.m - 1, 1.0).log2_value;
    Ok(LogMeasure::area(slice + (spec.m as f64 - 1.0) * spec.radius.log2() + integral))
}

/// Area of the intersection of two caps with orthogonal poles on the sphere
/// of radius `sqrt(m N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapIntersection {
    pub log_measure: LogMeasure,
    /// `atan(cos theta1 / cos theta2)`.
    pub phi: f64,
    /// Set when `theta1 + theta2` is within `1e-6` of `pi/2`.
    pub near_degenerate: bool,
}

fn check_angle(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= FRAC_PI_2) {
        return Err(Error::domain(format!("{name} must lie in (0, pi/2], got {v}")));
    }
    Ok(())
}

/// `log2 J(phi, theta)` without the constant in front.
fn log_j(m: usize, phi: f64, theta: f64) -> Result<f64> {
    if phi >= theta {
        return Ok(f64::NEG_INFINITY);
    }
    let k = m as f64 - 2.0;
    let a = k / 2.0;
    let (sp, cp) = phi.sin_cos();
    let integrand = |rho: f64| -> Result<f64> {
        let s = rho.sin();
        let ratio = phi.tan() / rho.tan();
        let x = (rho - phi).sin() * (rho + phi).sin() / (s * s * cp * cp);
        let y = if sp == 0.0 { 0.0 } else { ratio * ratio };
        if x <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let ln_i = ln_reg_inc_beta_split(x.min(1.0), y.min(1.0), a, 0.5)?;
        Ok(k * s.log2() + ln_i / LN_2)
    };
    try_integrate_log2(integrand, phi, theta, QUAD_REL_TOL)
}

/// Exact `log2` area of `Cap(e1, theta1) ∩ Cap(e2, theta2)` on the sphere of
/// radius `sqrt(m N)`.
pub fn log_cap_intersection(m: usize, n_scale: f64, theta1: f64, theta2: f64) -> Result<CapIntersection> {
    if m < 4 {
        return Err(Error::domain(format!("cap intersection needs m >= 4, got {m}")));
    }
    if !(n_scale.is_finite() && n_scale > 0.0) {
        return Err(Error::domain(format!("scale N must be finite and > 0, got {n_scale}")));
    }
    check_angle("theta1", theta1)?;
    check_angle("theta2", theta2)?;
    if theta1 + theta2 <= FRAC_PI_2 {
        return Err(Error::domain(format!("theta1 + theta2 > pi/2 violated: {theta1} + {theta2} <= {FRAC_PI_2}")));
    }
    let phi = theta1.cos().atan2(theta2.cos());
    let mf = m as f64;
    let ln_k = 0.5 * (mf - 1.0) * (PI * mf * n_scale).ln() - ln_gamma(0.5 * (mf - 1.0));
    let sum = log2_add(log_j(m, phi, theta2)?, log_j(m, FRAC_PI_2 - phi, theta1)?);
    Ok(CapIntersection {
        log_measure: LogMeasure::area(ln_k / LN_2 + sum),
        phi,
        near_degenerate: theta1 + theta2 - FRAC_PI_2 <= NEAR_DEGENERATE,
    })
}

/// `log2(2 pi e N (sin^2 theta - cos^2 omega))`, the per-two-dimensions
/// exponent of a cap intersection.
pub fn intersection_exponent(n_scale: f64, theta: f64, omega: f64) -> Result<f64> {
    let q = sin2_minus_cos2(theta, omega);
    if !(q > 0.0) {
        return Err(Error::domain(format!("sin^2 theta > cos^2 omega violated for theta = {theta}, omega = {omega}")));
    }
    Ok((2.0 * PI * E * n_scale * q).log2())
}
