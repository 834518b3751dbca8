//! Uniform points on spheres and spherical caps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::ln_cap_fraction;

const TABLE_NODES: usize = 4096;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// The unit vector along `v`.
pub fn normalized(v: &[f64]) -> Result<Vec<f64>> {
    let n = norm(v);
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::invalid("cannot normalize a zero or non-finite vector"));
    }
    Ok(v.iter().map(|x| x / n).collect())
}

/// Angle between two unit vectors.
pub(crate) fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

/// `e_k` in `R^m`.
pub fn basis_vector(m: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; m];
    v[k] = 1.0;
    v
}

fn gaussian_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    (0..m).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// A uniform point on the radius-`radius` sphere in `R^m`.
pub fn sample_uniform_sphere<R: Rng + ?Sized>(m: usize, radius: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let g = gaussian_vector(m, rng);
        let n = norm(&g);
        if n > 0.0 {
            return g.into_iter().map(|x| radius * x / n).collect();
        }
    }
}

/// A uniform unit vector orthogonal to the unit vector `pole`.
pub(crate) fn sample_orthogonal_unit<R: Rng + ?Sized>(pole: &[f64], rng: &mut R) -> Vec<f64> {
    loop {
        let mut g = gaussian_vector(pole.len(), rng);
        let a = dot(&g, pole);
        g.iter_mut().zip(pole).for_each(|(x, p)| *x -= a * p);
        let n = norm(&g);
        if n > 1e-12 {
            return g.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Inverse CDF of the polar angle of a uniform point in `Cap(pole, angle)`,
/// whose density is proportional to `sin^{m-2}`.
///
/// The log-CDF is tabulated on Chebyshev-Lobatto nodes and the angle is
/// recovered by monotone cubic interpolation in the log-CDF.
#[derive(Debug, Clone)]
pub struct CapSampler {
    m: usize,
    angle: f64,
    ln_cdf: Vec<f64>,
    rho: Vec<f64>,
    slope: Vec<f64>,
}

impl CapSampler {
    pub fn new(m: usize, angle: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!("cap sampling needs m >= 2, got {m}")));
        }
        if !(angle > 0.0 && angle <= std::f64::consts::PI) {
            return Err(Error::domain(format!("cap angle must lie in (0, pi], got {angle}")));
        }
        let ln_total = ln_cap_fraction(m, angle)?;
        let mut ln_cdf = Vec::with_capacity(TABLE_NODES);
        let mut rho = Vec::with_capacity(TABLE_NODES);
        for k in 0..TABLE_NODES {
            let node = if k == TABLE_NODES - 1 {
                angle
            } else {
                0.5 * angle * (1.0 - (k as f64 * std::f64::consts::PI / (TABLE_NODES - 1) as f64).cos())
            };
            let f = if k == TABLE_NODES - 1 { 0.0 } else { ln_cap_fraction(m, node)? - ln_total };
            if f.is_finite() && ln_cdf.last().is_none_or(|&prev| f > prev) {
                ln_cdf.push(f.min(0.0));
                rho.push(node);
            }
        }
        if ln_cdf.len() < 2 {
            return Err(Error::numerical("cap sampler table is degenerate"));
        }
        let slope = fritsch_carlson(&ln_cdf, &rho);
        Ok(Self { m, angle, ln_cdf, rho, slope })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The polar angle whose normalized log-CDF equals `t <= 0`.
    pub fn quantile_ln(&self, t: f64) -> f64 {
        let xs = &self.ln_cdf;
        if t <= xs[0] {
            // Below the table the CDF behaves like rho^{m-1}.
            return self.rho[0] * ((t - xs[0]) / (self.m as f64 - 1.0)).exp();
        }
        if t >= 0.0 {
            return self.angle;
        }
        let i = xs.partition_point(|&x| x <= t).clamp(1, xs.len() - 1) - 1;
        let h = xs[i + 1] - xs[i];
        let s = (t - xs[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        let v = h00 * self.rho[i] + h10 * h * self.slope[i] + h01 * self.rho[i + 1] + h11 * h * self.slope[i + 1];
        v.clamp(self.rho[i], self.rho[i + 1])
    }

    /// A polar angle drawn from the cap law.
    pub fn sample_polar<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        // gen() is in [0, 1); 1 - u is in (0, 1].
        self.quantile_ln((1.0 - u).ln())
    }

    /// A uniform point in `Cap(pole, angle)` on the radius-`radius` sphere;
    /// `pole` must be a unit vector in `R^m`.
    pub fn sample_point<R: Rng + ?Sized>(&self, radius: f64, pole: &[f64], rng: &mut R) -> Vec<f64> {
        let rho = self.sample_polar(rng);
        let u = sample_orthogonal_unit(pole, rng);
        let (s, c) = rho.sin_cos();
        pole.iter().zip(&u).map(|(p, q)| radius * (c * p + s * q)).collect()
    }
}

fn hermite_basis(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0, s3 - 2.0 * s2 + s, -2.0 * s3 + 3.0 * s2, s3 - s2)
}

/// Monotone cubic tangents for strictly increasing `xs` and nondecreasing `ys`.
fn fritsch_carlson(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let secant: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
    let mut m = vec![0.0; n];
    m[0] = secant[0];
    m[n - 1] = secant[n - 2];
    for i in 1..n - 1 {
        m[i] = if secant[i - 1] * secant[i] <= 0.0 { 0.0 } else { 0.5 * (secant[i - 1] + secant[i]) };
    }
    for i in 0..n - 1 {
        if secant[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / secant[i];
        let b = m[i + 1] / secant[i];
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            m[i] = tau * a * secant[i];
            m[i + 1] = tau * b * secant[i];
        }
    }
    m
}

/// A uniform point in `Cap(pole, angle)` on the radius-`radius` sphere.
/// Builds a fresh table; reuse a [`CapSampler`] for repeated draws.
pub fn sample_uniform_cap<R: Rng + ?Sized>(
    m: usize,
    radius: f64,
    pole: &[f64],
    angle: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if pole.len() != m {
        return Err(Error::invalid(format!("pole has length {}, expected {m}", pole.len())));
    }
    let pole = normalized(pole)?;
    Ok(CapSampler::new(m, angle)?.sample_point(radius, &pole, rng))
}
