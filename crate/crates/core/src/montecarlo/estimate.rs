//! Estimators of `mu(A ∩ Cap(y, alpha))` as a fraction of the sphere.

use rand::Rng;

use super::sampling::{dot, CapSampler};
use super::sets::SetSpec;
use crate::error::Result;
use crate::geometry::measure::ln_add;
use crate::geometry::special::ln_beta;
use crate::geometry::{ln_cap_fraction, ln_prob_interval};

/// Below this value of `width * d / (1 - mid^2)` the slice probability is
/// taken as density times width.
const NARROW: f64 = 1e-6;

/// `ln P(t in [mid - width/2, mid + width/2])` for one coordinate of a
/// uniform point on `S^{d-1}`, when the interval is too narrow to resolve
/// as a difference of tails.
fn ln_prob_narrow(d: usize, mid: f64, width: f64) -> f64 {
    let k = (d as f64 - 3.0) / 2.0;
    let one_minus = (1.0 - mid) * (1.0 + mid);
    k * one_minus.ln() - ln_beta((d as f64 - 1.0) / 2.0, 0.5) + width.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Estimator {
    /// Draws only the polar angle inside the cap and integrates the set's
    /// conditional probability over the remaining sphere exactly.
    #[default]
    Conditional,
    /// Draws full points inside the cap and counts those in the set.
    HitOrMiss,
}

/// Natural-log estimate of a normalized measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEstimate {
    pub ln_value: f64,
    /// Standard error of the estimate divided by the estimate.
    pub rel_std_error: f64,
    pub samples: usize,
}

/// `ln P(z in set | polar angle rho from y)` for `z` uniform on that slice.
fn ln_slice_probability(set: &SetSpec, geometry: &[(f64, f64)], rho: f64) -> Result<f64> {
    let (s, c) = rho.sin_cos();
    let mut total = f64::NEG_INFINITY;
    for (slab, &(a, q)) in set.shape.slabs().iter().zip(geometry) {
        let scale = q * s;
        let ln_p = if scale < 1e-300 {
            let t = a * c;
            if t >= slab.lo && t <= slab.hi {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        } else {
            let width = (slab.hi - slab.lo) / scale;
            let mid = (0.5 * (slab.lo + slab.hi) - a * c) / scale;
            let room = (1.0 - mid) * (1.0 + mid);
            if room > 0.0 && width * (set.m as f64) < NARROW * room && mid.abs() + width < 1.0 {
                ln_prob_narrow(set.m - 1, mid, width)
            } else {
                ln_prob_interval(set.m - 1, (slab.lo - a * c) / scale, (slab.hi - a * c) / scale)?
            }
        };
        total = ln_add(total, ln_p);
    }
    Ok(total)
}

fn log_mean_exp(values: &[f64]) -> (f64, f64) {
    let mx = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return (f64::NEG_INFINITY, 0.0);
    }
    let n = values.len() as f64;
    let w: Vec<f64> = values.iter().map(|v| (v - mx).exp()).collect();
    let mean = w.iter().sum::<f64>() / n;
    let var = w.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mx + mean.ln(), (var / n).sqrt() / mean)
}

/// Estimates `ln mu(set ∩ Cap(y, sampler.angle()))` for a unit vector `y`.
pub fn estimate_intersection<R: Rng + ?Sized>(
    set: &SetSpec,
    y: &[f64],
    sampler: &CapSampler,
    samples: usize,
    estimator: Estimator,
    rng: &mut R,
) -> Result<LogEstimate> {
    let ln_cap = ln_cap_fraction(set.m, sampler.angle())?;
    match estimator {
        Estimator::Conditional => {
            let geometry: Vec<(f64, f64)> = set
                .shape
                .slabs()
                .iter()
                .map(|s| {
                    let a = dot(s.pole, y).clamp(-1.0, 1.0);
                    (a, (1.0 - a * a).max(0.0).sqrt())
                })
                .collect();
            let values = (0..samples)
                .map(|_| ln_slice_probability(set, &geometry, sampler.sample_polar(rng)))
                .collect::<Result<Vec<f64>>>()?;
            let (ln_mean, rel) = log_mean_exp(&values);
            Ok(LogEstimate { ln_value: ln_cap + ln_mean, rel_std_error: rel, samples })
        }
        Estimator::HitOrMiss => {
            let hits = (0..samples).filter(|_| set.contains(&sampler.sample_point(1.0, y, rng))).count();
            let f = hits as f64 / samples as f64;
            let rel = if hits == 0 { f64::INFINITY } else { ((1.0 - f) / (f * samples as f64)).sqrt() };
            Ok(LogEstimate { ln_value: ln_cap + f.ln(), rel_std_error: rel, samples })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::rng::stream_rng;
    use crate::montecarlo::sampling::{basis_vector, normalized};

    /// `y` at angle `gamma` from `e_0`.
    fn tilted(m: usize, gamma: f64) -> Vec<f64> {
        let mut y = basis_vector(m, 0);
        y[0] = gamma.cos();
        y[1] = gamma.sin();
        normalized(&y).unwrap()
    }

    #[test]
    fn narrow_interval_matches_tail_difference() {
        for &(d, mid, width) in &[(299usize, 0.3, 1e-7), (50, -0.6, 1e-6), (1000, 0.01, 1e-7)] {
            let exact = ln_prob_interval(d, mid - width / 2.0, mid + width / 2.0).unwrap();
            let approx = ln_prob_narrow(d, mid, width);
            assert!((exact - approx).abs() < 1e-7, "d={d}: {exact} vs {approx}");
        }
    }

    #[test]
    fn contained_subcap_is_recovered() {
        // Cap(e0, 0.5) sits inside Cap(y, 0.9) when angle(y, e0) = 0.3.
        let m = 20;
        let set = SetSpec::cap(m, &basis_vector(m, 0), 0.5).unwrap();
        let exact = ln_cap_fraction(m, 0.5).unwrap();
        let y = tilted(m, 0.3);
        let sampler = CapSampler::new(m, 0.9).unwrap();
        for est in [Estimator::Conditional, Estimator::HitOrMiss] {
            let mut rng = stream_rng(11, 0);
            let e = estimate_intersection(&set, &y, &sampler, 100_000, est, &mut rng).unwrap();
            let err = (e.ln_value - exact).exp() - 1.0;
            assert!(err.abs() < 3.0 * e.rel_std_error + 1e-9, "{est:?}: {err} vs {}", e.rel_std_error);
        }
    }

    #[test]
    fn estimators_agree_on_partial_overlap() {
        let m = 12;
        let set = SetSpec::band(m, &basis_vector(m, 0), 1.4, 0.3).unwrap();
        let y = tilted(m, 0.8);
        let sampler = CapSampler::new(m, 1.0).unwrap();
        let mut rng = stream_rng(12, 0);
        let a = estimate_intersection(&set, &y, &sampler, 200_000, Estimator::Conditional, &mut rng).unwrap();
        let b = estimate_intersection(&set, &y, &sampler, 200_000, Estimator::HitOrMiss, &mut rng).unwrap();
        let diff = (a.ln_value - b.ln_value).exp() - 1.0;
        let se = (a.rel_std_error.powi(2) + b.rel_std_error.powi(2)).sqrt();
        assert!(diff.abs() < 4.0 * se, "{diff} vs {se}");
        assert!(a.rel_std_error < b.rel_std_error);
    }

    #[test]
    fn pole_aligned_y_uses_indicator() {
        let m = 10;
        let set = SetSpec::cap(m, &basis_vector(m, 0), 0.4).unwrap();
        let sampler = CapSampler::new(m, 0.7).unwrap();
        let mut rng = stream_rng(13, 0);
        let e = estimate_intersection(&set, &basis_vector(m, 0), &sampler, 50_000, Estimator::Conditional, &mut rng)
            .unwrap();
        let exact = ln_cap_fraction(m, 0.4).unwrap();
        assert!(((e.ln_value - exact).exp() - 1.0).abs() < 3.0 * e.rel_std_error);
    }
}
