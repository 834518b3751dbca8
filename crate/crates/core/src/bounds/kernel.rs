//! The bound kernel `h_theta(omega)` and the per-letter information
//! tension bound built from it.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::fmt;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::geometry::sin2_minus_cos2;

/// An angle in `[0, pi/2]`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const RIGHT: Angle = Angle(FRAC_PI_2);

    pub fn new(radians: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&radians) {
            return Err(Error::domain(format!("angle must lie in [0, pi/2], got {radians}")));
        }
        Ok(Self(radians))
    }

    pub fn from_degrees(degrees: f64) -> Result<Self> {
        Self::new(degrees.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// `h_theta(omega) = 1/2 log2( 4 s^2 (P + N - N s^2) sin^2 theta / ((P + N)(sin^2 theta - cos^2 omega)) )`
/// with `s = sin(omega / 2)`.
pub fn h_theta(params: &ChannelParams, theta: Angle, omega: Angle) -> Result<f64> {
    let (p, n) = (params.power(), params.noise());
    let (t, w) = (theta.radians(), omega.radians());
    let q = sin2_minus_cos2(t, w);
    if !(q > 0.0) {
        return Err(Error::domain(format!("sin^2 theta - cos^2 omega > 0 violated for theta = {t}, omega = {w}")));
    }
    let s2 = (0.5 * w).sin().powi(2);
    let sin2_t = t.sin().powi(2);
    let ln_ratio = (4.0 * s2 * (p + n - n * s2)).ln() + sin2_t.ln() - (p + n).ln() - q.ln();
    Ok(0.5 * ln_ratio / LN_2)
}

/// `h_theta(omega) - log2 sin theta`.
pub fn info_tension_rhs(params: &ChannelParams, theta: Angle, omega: Angle) -> Result<f64> {
    Ok(h_theta(params, theta, omega)? - theta.radians().sin().log2())
}

/// `h_theta(pi/2) = 1/2 log2((2P + N) / (P + N))` for every theta.
pub fn h_at_right_angle(params: &ChannelParams) -> f64 {
    let (p, n) = (params.power(), params.noise());
    0.5 * ((2.0 * p + n) / (p + n)).log2()
}

/// `d h_theta / d omega` at `omega = pi/2`: `P / ((2P + N) ln 2)`.
pub fn h_derivative_at_right_angle(params: &ChannelParams) -> f64 {
    let (p, n) = (params.power(), params.noise());
    p / ((2.0 * p + n) * LN_2)
}

/// `h_theta(pi/2) - h_theta(pi/2 - delta)`, rearranged as
/// `1/2 log2[(1 - sin^2 delta / sin^2 theta) / ((1 - sin delta)(1 + N sin delta / (2P + N)))]`
/// so that it stays accurate when `delta` is far below `theta`.
pub fn h_drop_from_right_angle(params: &ChannelParams, theta: Angle, delta: f64) -> Result<f64> {
    let t = theta.radians();
    if !(delta > 0.0 && delta < t) {
        return Err(Error::domain(format!("0 < delta < theta violated: delta = {delta}, theta = {t}")));
    }
    let (p, n) = (params.power(), params.noise());
    let sd = delta.sin();
    let ratio = sd / t.sin();
    let ln = (-ratio * ratio).ln_1p() - (-sd).ln_1p() - (n * sd / (2.0 * p + n)).ln_1p();
    Ok(0.5 * ln / LN_2)
}
