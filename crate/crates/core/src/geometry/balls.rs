//! Intersection of two balls `Ball(c1, sqrt(m R1))` and
//! `Ball(c2, sqrt(m R2))` whose centers are `sqrt(m D)` apart.

use std::f64::consts::{E, LN_2, PI};

use super::caps::log_ball_volume;
use super::measure::{log2_add, LogMeasure};
use super::special::ln_reg_inc_beta_split;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPairSpec {
    pub m: usize,
    pub r1: f64,
    pub r2: f64,
    pub d: f64,
}

impl BallPairSpec {
    pub fn new(m: usize, r1: f64, r2: f64, d: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::domain("ball dimension must be >= 1"));
        }
        for (name, v) in [("R1", r1), ("R2", r2), ("D", d)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        let (a, b) = (r1.sqrt(), r2.sqrt());
        if !((a - b).powi(2) < d && d < (a + b).powi(2)) {
            return Err(Error::domain(format!(
                "(sqrt R1 - sqrt R2)^2 < D < (sqrt R1 + sqrt R2)^2 violated for R1 = {r1}, R2 = {r2}, D = {d}"
            )));
        }
        Ok(Self { m, r1, r2, d })
    }

    /// Half-angles of the two solid caps, seen from each center.
    pub fn cap_angles(&self) -> (f64, f64) {
        let c1 = (self.r1 + self.d - self.r2) / (2.0 * (self.r1 * self.d).sqrt());
        let c2 = (self.r2 + self.d - self.r1) / (2.0 * (self.r2 * self.d).sqrt());
        (c1.clamp(-1.0, 1.0).acos(), c2.clamp(-1.0, 1.0).acos())
    }
}

/// `(2 R1 D + 2 R1 R2 + 2 D R2 - R1^2 - R2^2 - D^2) / (2 D)`.
pub fn lambda_fn(spec: &BallPairSpec) -> f64 {
    let BallPairSpec { r1, r2, d, .. } = *spec;
    (2.0 * r1 * d + 2.0 * r1 * r2 + 2.0 * d * r2 - r1 * r1 - r2 * r2 - d * d) / (2.0 * d)
}

/// `log2` volume of `{x in Ball(0, r) : x_1 >= r cos theta}`.
pub fn log_solid_cap_volume(m: usize, radius: f64, theta: f64) -> Result<f64> {
    let ball = log_ball_volume(m, radius).log2_value;
    let (s, c) = theta.sin_cos();
    let ln_half = ln_reg_inc_beta_split(s * s, c * c, (m as f64 + 1.0) / 2.0, 0.5)? - LN_2;
    let ln_frac = if theta <= PI / 2.0 { ln_half } else { (-ln_half.exp()).ln_1p() };
    Ok(ball + ln_frac / LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallIntersection {
    pub lambda: f64,
    /// Sum of the two solid caps.
    pub exact: LogMeasure,
    /// `m * 1/2 log2(pi e lambda)`.
    pub bound: LogMeasure,
    pub theta1: f64,
    pub theta2: f64,
}

pub fn log_ball_intersection_upper(spec: &BallPairSpec) -> Result<BallIntersection> {
    let lambda = lambda_fn(spec);
    let (theta1, theta2) = spec.cap_angles();
    let mf = spec.m as f64;
    let cap1 = log_solid_cap_volume(spec.m, (mf * spec.r1).sqrt(), theta1)?;
    let cap2 = log_solid_cap_volume(spec.m, (mf * spec.r2).sqrt(), theta2)?;
    Ok(BallIntersection {
        lambda,
        exact: LogMeasure::volume(log2_add(cap1, cap2)),
        bound: LogMeasure::volume(mf * 0.5 * (PI * E * lambda).log2()),
        theta1,
        theta2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::quadrature::integrate_log2;
    use proptest::prelude::*;

    #[test]
    fn symmetric_lambda() {
        let s = BallPairSpec::new(10, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(lambda_fn(&s), 1.5);
        let near = BallPairSpec::new(10, 1.0, 1.0, 4.0 - 1e-9).unwrap();
        assert!(lambda_fn(&near) > 0.0 && lambda_fn(&near) < 1e-8);
        assert!(BallPairSpec::new(10, 1.0, 1.0, 4.0).is_err());
        assert!(BallPairSpec::new(10, 4.0, 1.0, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn lambda_is_chord_radius(r1 in 0.1f64..5.0, r2 in 0.1f64..5.0, t in 0.01f64..0.99) {
            let (a, b) = (r1.sqrt(), r2.sqrt());
            let (lo, hi) = ((a - b).powi(2), (a + b).powi(2));
            let d = lo + t * (hi - lo);
            let s = BallPairSpec::new(3, r1, r2, d).unwrap();
            let c1 = (r1 + d - r2) / (2.0 * (r1 * d).sqrt());
            let via_angle = 2.0 * r1 * (1.0 - c1 * c1);
            prop_assert!((lambda_fn(&s) - via_angle).abs() < 1e-11 * (1.0 + via_angle));
            prop_assert!(lambda_fn(&s) > 0.0);
        }
    }

    /// Solid cap by slicing: `int_{r cos t}^{r} V_{m-1}(sqrt(r^2 - x^2)) dx`.
    fn solid_cap_oracle(m: usize, r: f64, t: f64) -> f64 {
        let f = |x: f64| log_ball_volume(m - 1, (r * r - x * x).max(0.0).sqrt()).log2_value;
        integrate_log2(f, r * t.cos(), r, 1e-12).unwrap()
    }

    #[test]
    fn solid_cap_matches_slicing() {
        for &m in &[3, 12, 50] {
            for &t in &[0.4, 1.2, 2.0] {
                let r = (m as f64).sqrt();
                let got = log_solid_cap_volume(m, r, t).unwrap();
                let want = solid_cap_oracle(m, r, t);
                assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "m={m} t={t}");
            }
        }
    }

    #[test]
    fn congruent_caps() {
        let s = BallPairSpec::new(50, 1.0, 1.0, 1.0).unwrap();
        let b = log_ball_intersection_upper(&s).unwrap();
        let one = solid_cap_oracle(50, 50f64.sqrt(), b.theta1);
        assert!((b.exact.log2_value - (one + 1.0)).abs() < 1e-9 * one.abs());
    }

    #[test]
    fn exponent_converges_from_below() {
        let mut prev = f64::NEG_INFINITY;
        for &m in &[100, 1000, 10_000] {
            let s = BallPairSpec::new(m, 1.0, 1.5, 0.8).unwrap();
            let b = log_ball_intersection_upper(&s).unwrap();
            let gap = b.exact.per_dimension(m) - b.bound.per_dimension(m);
            assert!(gap < 0.0 && gap > prev, "m={m}: {gap}");
            prev = gap;
        }
        assert!(prev > -0.01);
    }

    #[test]
    fn tangency_vanishes() {
        let s = BallPairSpec::new(200, 1.0, 1.0, 4.0 - 1e-6).unwrap();
        let b = log_ball_intersection_upper(&s).unwrap();
        assert!(b.exact.log2_value < -1000.0);
        assert!(b.bound.log2_value < -1000.0);
    }
}
