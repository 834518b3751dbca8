//! The cut-set bound, the composite upper bound, its gap certificate and
//! the compress-and-forward achievable rate.

use std::f64::consts::{FRAC_PI_2, LN_2};

use super::kernel::{h_derivative_at_right_angle, h_drop_from_right_angle, h_theta, Angle};
use super::search::grid_golden_min;
use crate::channel::{capacity_full_cooperation, capacity_no_relay, ChannelParams, LinkCapacity, Rate};
use crate::error::{Error, Result};

const OMEGA_GRID: usize = 257;
const THETA_GRID: usize = 512;
const X_TOL_FLOOR: f64 = 1e-13;

/// `min{C(inf), C(0) + C0}`.
pub fn cutset_bound(params: &ChannelParams, c0: LinkCapacity) -> Rate {
    let c_inf = capacity_full_cooperation(params).bits();
    Rate::from_bits(c_inf.min(capacity_no_relay(params).bits() + c0.bits()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaSearchResult {
    pub omega_star: Angle,
    pub value: f64,
    pub bracket_width: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be finite and > 0, got {tol}")));
    }
    Ok(())
}

/// Minimizes `h_theta` over `omega` in `(pi/2 - theta, pi/2]`.
pub fn minimize_over_omega(params: &ChannelParams, theta: Angle, tol: f64) -> Result<OmegaSearchResult> {
    check_tol(tol)?;
    let t = theta.radians();
    if t <= 0.0 {
        return Err(Error::domain("theta = 0 leaves no admissible omega"));
    }
    let eta = (tol * 1e-3).max(1e-9);
    let lo = if t == FRAC_PI_2 { eta } else { (FRAC_PI_2 - t + eta).min(FRAC_PI_2) };
    let f = |w: f64| h_theta(params, theta, Angle::new(w)?);
    let r = grid_golden_min(f, lo, FRAC_PI_2, OMEGA_GRID, (tol * 1e-3).max(X_TOL_FLOOR))?;
    Ok(OmegaSearchResult { omega_star: Angle::new(r.x)?, value: r.value, bracket_width: r.bracket_width })
}

/// The composite bound together with its maximizing `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewBound {
    pub rate: Rate,
    pub theta_star: Angle,
    pub inner: OmegaSearchResult,
}

/// `C(0) + sup_theta min{C0 + log2 sin theta, min_omega h_theta(omega)}` over
/// `theta` in `[asin 2^-C0, pi/2]`.
pub fn new_upper_bound_detailed(params: &ChannelParams, c0: LinkCapacity, tol: f64) -> Result<NewBound> {
    check_tol(tol)?;
    if !c0.is_finite() {
        return Err(Error::invalid("the composite bound needs a finite link capacity"));
    }
    let theta0 = (-c0.bits()).exp2().asin();
    let objective = |t: f64| -> Result<f64> {
        let inner = minimize_over_omega(params, Angle::new(t)?, tol)?;
        Ok(-(c0.bits() + t.sin().log2()).min(inner.value))
    };
    let r = grid_golden_min(objective, theta0, FRAC_PI_2, THETA_GRID, (tol * 1e-3).max(X_TOL_FLOOR))?;
    let theta_star = Angle::new(r.x)?;
    let c_zero = capacity_no_relay(params).bits();
    Ok(NewBound {
        rate: Rate::from_bits(c_zero + (-r.value).max(0.0)),
        theta_star,
        inner: minimize_over_omega(params, theta_star, tol)?,
    })
}

pub fn new_upper_bound(params: &ChannelParams, c0: LinkCapacity, tol: f64) -> Result<Rate> {
    Ok(new_upper_bound_detailed(params, c0, tol)?.rate)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCertificate {
    /// `asin 2^-C0`.
    pub theta0: f64,
    pub delta1: f64,
    /// `P / ((2P + N) ln 2)`.
    pub derivative_at_pi_half: f64,
    /// `P delta1 / (2 (2P + N) ln 2)`.
    pub gap_lower_bound: f64,
    /// `C(inf) - gap_lower_bound`.
    pub certified_bound: f64,
}

/// Finds the largest step `delta1` (up to bisection precision) for which the
/// backward difference quotient of `h_theta0` at `pi/2` is within half of
/// the derivative, and the gap below `C(inf)` it certifies.
pub fn gap_certificate(params: &ChannelParams, c0: LinkCapacity) -> Result<GapCertificate> {
    if !c0.is_finite() {
        return Err(Error::invalid("a gap certificate needs a finite link capacity"));
    }
    let theta0 = (-c0.bits()).exp2().asin();
    let theta = Angle::new(theta0)?;
    let deriv = h_derivative_at_right_angle(params);
    let accepts = |delta: f64| -> Result<bool> {
        let drop = h_drop_from_right_angle(params, theta, delta)?;
        Ok((drop / delta - deriv).abs() <= deriv / 2.0)
    };

    if theta0 == 0.0 {
        return Err(Error::numerical(format!("asin 2^-C0 underflows at C0 = {c0}")));
    }
    let mut good = theta0 / 2.0;
    loop {
        if good == 0.0 {
            return Err(Error::numerical(format!("no admissible step above the f64 floor at C0 = {c0}")));
        }
        if accepts(good)? {
            break;
        }
        good /= 2.0;
    }
    let mut bad = (2.0 * good).min(theta0 * (1.0 - 1e-12));
    if accepts(bad)? {
        good = bad;
    } else {
        while bad - good > good * 1e-12 {
            let mid = 0.5 * (good + bad);
            if accepts(mid)? {
                good = mid;
            } else {
                bad = mid;
            }
        }
    }
    let (p, n) = (params.power(), params.noise());
    let gap = p * good / (2.0 * (2.0 * p + n) * LN_2);
    Ok(GapCertificate {
        theta0,
        delta1: good,
        derivative_at_pi_half: deriv,
        gap_lower_bound: gap,
        certified_bound: capacity_full_cooperation(params).bits() - gap,
    })
}

/// Quantization noise variance of compress-and-forward at link capacity `c0`.
pub fn cf_quantization_noise(params: &ChannelParams, c0: LinkCapacity) -> f64 {
    let (p, n) = (params.power(), params.noise());
    n * (2.0 * p + n) / ((p + n) * (2.0 * c0.bits() * LN_2).exp_m1())
}

/// `1/2 log2(1 + P/N + P/(N + sigma^2))` with Wyner-Ziv quantization noise.
pub fn cf_rate(params: &ChannelParams, c0: LinkCapacity) -> Rate {
    if c0.bits() == 0.0 {
        return capacity_no_relay(params);
    }
    if !c0.is_finite() {
        return capacity_full_cooperation(params);
    }
    let (p, n) = (params.power(), params.noise());
    let sigma2 = cf_quantization_noise(params, c0);
    Rate::from_bits(0.5 * (p / n + p / (n + sigma2)).ln_1p() / LN_2)
}
