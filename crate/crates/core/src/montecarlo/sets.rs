//! Test sets on the sphere and their radial extrusions into a shell.

use std::f64::consts::{FRAC_PI_2, PI};

use super::sampling::{angle_between, dot, normalized};
use crate::error::{Error, Result};
use crate::geometry::measure::ln_add;
use crate::geometry::{ln_cap_fraction, ln_prob_interval, log_radial_factor, ShellSpec};

const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum SetShape {
    /// `{z : angle(pole, z) <= angle}`.
    Cap { pole: Vec<f64>, angle: f64 },
    /// `{z : |angle(pole, z) - center| <= half_width}`.
    Band { pole: Vec<f64>, center: f64, half_width: f64 },
    /// Union of two disjoint caps.
    TwoCapUnion { pole1: Vec<f64>, angle1: f64, pole2: Vec<f64>, angle2: f64 },
}

/// A set on the unit sphere `S^{m-1}` with its effective angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SetSpec {
    pub m: usize,
    pub shape: SetShape,
    pub effective_theta: f64,
}

/// The inner products `<pole, z>` admitted by one slab of a set.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Slab<'a> {
    pub pole: &'a [f64],
    pub lo: f64,
    pub hi: f64,
}

fn unit_pole(m: usize, pole: &[f64]) -> Result<Vec<f64>> {
    if pole.len() != m {
        return Err(Error::invalid(format!("pole has length {}, expected {m}", pole.len())));
    }
    normalized(pole)
}

fn check_dimension(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::domain(format!("sets need dimension m >= 3, got {m}")));
    }
    Ok(())
}

/// Smallest `x` in `[lo, hi]` with `f(x) >= target`, for nondecreasing `f`,
/// to a relative width of `ANGLE_TOL`.
fn bisect<F: Fn(f64) -> Result<f64>>(f: F, target: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..2000 {
        if hi - lo <= ANGLE_TOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The cap angle whose normalized measure has natural log `ln_frac`.
pub fn effective_angle(m: usize, ln_frac: f64) -> Result<f64> {
    if ln_frac > 0.0 || ln_frac.is_nan() {
        return Err(Error::domain(format!("log fraction must be <= 0, got {ln_frac}")));
    }
    bisect(|t| ln_cap_fraction(m, t), ln_frac, 0.0, PI)
}

impl SetShape {
    pub(crate) fn slabs(&self) -> Vec<Slab<'_>> {
        match self {
            SetShape::Cap { pole, angle } => vec![Slab { pole, lo: angle.cos(), hi: f64::INFINITY }],
            SetShape::Band { pole, center, half_width } => {
                let offset = FRAC_PI_2 - center;
                let lo = (offset - half_width).max(-FRAC_PI_2).sin();
                let hi = (offset + half_width).min(FRAC_PI_2).sin();
                vec![Slab { pole, lo, hi }]
            }
            SetShape::TwoCapUnion { pole1, angle1, pole2, angle2 } => vec![
                Slab { pole: pole1, lo: angle1.cos(), hi: f64::INFINITY },
                Slab { pole: pole2, lo: angle2.cos(), hi: f64::INFINITY },
            ],
        }
    }
}

impl SetSpec {
    fn build(m: usize, shape: SetShape) -> Result<Self> {
        let mut spec = Self { m, shape, effective_theta: 0.0 };
        spec.effective_theta = effective_angle(m, spec.ln_fraction()?)?;
        Ok(spec)
    }

    pub fn cap(m: usize, pole: &[f64], angle: f64) -> Result<Self> {
        check_dimension(m)?;
        if !(angle > 0.0 && angle <= PI) {
            return Err(Error::domain(format!("cap angle must lie in (0, pi], got {angle}")));
        }
        Self::build(m, SetShape::Cap { pole: unit_pole(m, pole)?, angle })
    }

    pub fn band(m: usize, pole: &[f64], center: f64, half_width: f64) -> Result<Self> {
        check_dimension(m)?;
        if !((0.0..=PI).contains(&center) && half_width > 0.0 && half_width <= PI) {
            return Err(Error::domain(format!(
                "band needs center in [0, pi] and half-width in (0, pi], got {center}, {half_width}"
            )));
        }
        Self::build(m, SetShape::Band { pole: unit_pole(m, pole)?, center, half_width })
    }

    pub fn two_cap_union(m: usize, pole1: &[f64], angle1: f64, pole2: &[f64], angle2: f64) -> Result<Self> {
        check_dimension(m)?;
        for a in [angle1, angle2] {
            if !(a > 0.0 && a < PI) {
                return Err(Error::domain(format!("cap angle must lie in (0, pi), got {a}")));
            }
        }
        let (p1, p2) = (unit_pole(m, pole1)?, unit_pole(m, pole2)?);
        if angle1 + angle2 > angle_between(&p1, &p2) {
            return Err(Error::UnsupportedSet(
                "two-cap union needs disjoint caps: angle1 + angle2 <= angle(pole1, pole2)".into(),
            ));
        }
        Self::build(m, SetShape::TwoCapUnion { pole1: p1, angle1, pole2: p2, angle2 })
    }

    /// An equatorial band around `pole` with effective angle `theta`.
    pub fn band_with_effective_angle(m: usize, pole: &[f64], theta: f64) -> Result<Self> {
        check_dimension(m)?;
        let target = ln_cap_fraction(m, theta)?;
        let w = bisect(|w| ln_prob_interval(m, -w.sin(), w.sin()), target, 0.0, FRAC_PI_2)?;
        Self::band(m, pole, FRAC_PI_2, w)
    }

    /// Two equal caps at antipodal poles with combined effective angle `theta`.
    pub fn two_caps_with_effective_angle(m: usize, pole: &[f64], theta: f64) -> Result<Self> {
        check_dimension(m)?;
        let target = ln_cap_fraction(m, theta)? - std::f64::consts::LN_2;
        let a = bisect(|a| ln_cap_fraction(m, a), target, 0.0, theta)?;
        let p = unit_pole(m, pole)?;
        let anti: Vec<f64> = p.iter().map(|x| -x).collect();
        Self::two_cap_union(m, &p, a, &anti, a)
    }

    /// Natural log of the normalized measure of the set.
    pub fn ln_fraction(&self) -> Result<f64> {
        match &self.shape {
            SetShape::Cap { angle, .. } => ln_cap_fraction(self.m, *angle),
            SetShape::Band { .. } => {
                let s = self.shape.slabs()[0];
                ln_prob_interval(self.m, s.lo, s.hi)
            }
            SetShape::TwoCapUnion { angle1, angle2, .. } => {
                Ok(ln_add(ln_cap_fraction(self.m, *angle1)?, ln_cap_fraction(self.m, *angle2)?))
            }
        }
    }

    /// Whether the unit vector `z` lies in the set.
    pub fn contains(&self, z: &[f64]) -> bool {
        self.shape.slabs().iter().any(|s| {
            let t = dot(s.pole, z);
            t >= s.lo && t <= s.hi
        })
    }

    /// Smallest angle from the unit vector `y` to the set.
    pub fn min_angle_to(&self, y: &[f64]) -> Result<f64> {
        let cap_dist = |pole: &[f64], angle: f64| (angle_between(pole, y) - angle).max(0.0);
        Ok(match &self.shape {
            SetShape::Cap { pole, angle } => cap_dist(pole, *angle),
            SetShape::Band { pole, center, half_width } => {
                ((angle_between(pole, y) - center).abs() - half_width).max(0.0)
            }
            SetShape::TwoCapUnion { pole1, angle1, pole2, angle2 } => {
                cap_dist(pole1, *angle1).min(cap_dist(pole2, *angle2))
            }
        })
    }
}

/// How the radius of `Y` is drawn on the shell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RadialLaw {
    #[default]
    Uniform,
    /// Density proportional to `r^{m-1}`, i.e. uniform in volume.
    Volume,
}

/// A direction set extruded over the radial band `[r_lo, r_hi]` of a shell.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellSet {
    pub shell: ShellSpec,
    pub directions: SetSpec,
    pub r_lo: f64,
    pub r_hi: f64,
    pub effective_theta: f64,
}

impl ShellSet {
    pub fn new(shell: ShellSpec, directions: SetSpec, r_lo: f64, r_hi: f64) -> Result<Self> {
        if directions.m != shell.m {
            return Err(Error::invalid("direction set and shell have different dimensions"));
        }
        let (lo, hi) = (shell.r_lower(), shell.r_upper());
        if !(r_lo >= lo * (1.0 - 1e-12) && r_hi <= hi * (1.0 + 1e-12) && r_lo < r_hi) {
            return Err(Error::UnsupportedSet(format!(
                "radial band [{r_lo}, {r_hi}] must be a nonempty part of the shell [{lo}, {hi}]"
            )));
        }
        let mut set = Self { shell, directions, r_lo, r_hi, effective_theta: 0.0 };
        set.effective_theta = effective_angle(shell.m, set.ln_fraction()?)?;
        Ok(set)
    }

    /// The direction set extruded over the whole shell.
    pub fn full(shell: ShellSpec, directions: SetSpec) -> Result<Self> {
        Self::new(shell, directions, shell.r_lower(), shell.r_upper())
    }

    /// The direction set extruded over the innermost `fraction` of the
    /// shell's radial extent.
    pub fn inner(shell: ShellSpec, directions: SetSpec, fraction: f64) -> Result<Self> {
        let (lo, hi) = (shell.r_lower(), shell.r_upper());
        Self::new(shell, directions, lo, lo + fraction * (hi - lo))
    }

    /// `log2 int_{r_lo}^{r_hi} (r / R_L)^{m-1} dr`.
    pub fn log_radial(&self) -> f64 {
        log_radial_factor(self.shell.m, self.r_lo, self.r_hi, self.shell.r_lower())
    }

    /// Natural log of the set's share of the shell volume.
    pub fn ln_fraction(&self) -> Result<f64> {
        let base = self.shell.r_lower();
        let full = log_radial_factor(self.shell.m, base, self.shell.r_upper(), base);
        Ok(self.directions.ln_fraction()? + (self.log_radial() - full) * std::f64::consts::LN_2)
    }
}
