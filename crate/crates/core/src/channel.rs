//! Channel parameterization and the reference capacities.
//!
//! The relay and the destination observe `Z = X + W1` and `Y = X + W2`
//! with independent `W1, W2 ~ N(0, N)` and a source power constraint `P`.
//! The relay talks to the destination over a noiseless pipe of `C0` bits
//! per channel use.

use std::fmt;

use crate::error::{Error, Result};

/// Source power and per-link noise variance, both linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    power: f64,
    noise: f64,
}

impl ChannelParams {
    pub fn new(power: f64, noise: f64) -> Result<Self> {
        if !(power.is_finite() && power > 0.0) {
            return Err(Error::invalid(format!("power must be finite and > 0, got {power}")));
        }
        if !(noise.is_finite() && noise > 0.0) {
            return Err(Error::invalid(format!("noise must be finite and > 0, got {noise}")));
        }
        Ok(Self { power, noise })
    }

    /// Unit noise variance with `P = snr`.
    pub fn from_snr(snr: f64) -> Result<Self> {
        Self::new(snr, 1.0)
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    pub fn snr(&self) -> f64 {
        self.power / self.noise
    }
}

/// Capacity of the relay-destination bit pipe. `+inf` is a valid value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LinkCapacity(f64);

impl LinkCapacity {
    pub const ZERO: LinkCapacity = LinkCapacity(0.0);
    pub const INFINITE: LinkCapacity = LinkCapacity(f64::INFINITY);

    pub fn new(bits: f64) -> Result<Self> {
        if bits.is_nan() || bits < 0.0 {
            return Err(Error::invalid(format!("link capacity must be >= 0, got {bits}")));
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl fmt::Display for LinkCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rate in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rate(f64);

impl Rate {
    pub(crate) fn from_bits(bits: f64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `C(0) = 1/2 log2(1 + P/N)`: the direct link alone.
pub fn capacity_no_relay(params: &ChannelParams) -> Rate {
    Rate(0.5 * params.snr().ln_1p() / std::f64::consts::LN_2)
}

/// `C(inf) = 1/2 log2(1 + 2P/N)`: the destination sees both outputs.
pub fn capacity_full_cooperation(params: &ChannelParams) -> Rate {
    Rate(0.5 * (2.0 * params.snr()).ln_1p() / std::f64::consts::LN_2)
}

/// The link capacity at which the cut-set bound first reaches `C(inf)`.
pub fn cutset_c0_threshold(params: &ChannelParams) -> Rate {
    Rate(capacity_full_cooperation(params).0 - capacity_no_relay(params).0)
}
