use rayon::prelude::*;

use super::upper::{cf_rate, cutset_bound, new_upper_bound};
use crate::channel::{capacity_full_cooperation, ChannelParams, LinkCapacity, Rate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    CutSet,
    NewBound,
    CompressForward,
    FullCoop,
}

impl BoundFamily {
    pub fn label(self) -> &'static str {
        match self {
            BoundFamily::CutSet => "cutset",
            BoundFamily::NewBound => "new_bound",
            BoundFamily::CompressForward => "cf_rate",
            BoundFamily::FullCoop => "c_infinity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub c0: LinkCapacity,
    pub rate: Rate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub family: BoundFamily,
    pub points: Vec<BoundPoint>,
}

/// Evenly spaced grid of `steps` link capacities on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<LinkCapacity>> {
    if steps == 0 {
        return Err(Error::invalid("grid needs at least one step"));
    }
    if steps == 1 {
        return Ok(vec![LinkCapacity::new(lo)?]);
    }
    if !(hi > lo) {
        return Err(Error::invalid(format!("grid needs hi > lo, got [{lo}, {hi}]")));
    }
    (0..steps)
        .map(|i| {
            let x = if i == steps - 1 { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 };
            LinkCapacity::new(x)
        })
        .collect()
}

/// Cut-set, composite and compress-and-forward curves over `grid`, computed
/// in parallel and returned in grid order. A failure is reported for the
/// first failing grid point.
pub fn sweep(params: &ChannelParams, grid: &[LinkCapacity], tol: f64) -> Result<Vec<BoundCurve>> {
    if grid.is_empty() {
        return Err(Error::invalid("empty link-capacity grid"));
    }
    if let Some(bad) = grid.iter().find(|c| !c.is_finite()) {
        return Err(Error::invalid(format!("grid values must be finite, got {bad}")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("grid must be strictly increasing"));
    }
    let rows: Vec<Result<[Rate; 3]>> = grid
        .par_iter()
        .map(|&c0| {
            let nb =
                new_upper_bound(params, c0, tol).map_err(|e| Error::AtPoint { c0: c0.bits(), source: Box::new(e) })?;
            Ok([cutset_bound(params, c0), nb, cf_rate(params, c0)])
        })
        .collect();
    let rows: Vec<[Rate; 3]> = rows.into_iter().collect::<Result<_>>()?;
    let families = [BoundFamily::CutSet, BoundFamily::NewBound, BoundFamily::CompressForward];
    Ok(families
        .iter()
        .enumerate()
        .map(|(k, &family)| BoundCurve {
            family,
            points: grid.iter().zip(&rows).map(|(&c0, r)| BoundPoint { c0, rate: r[k] }).collect(),
        })
        .collect())
}

/// The constant `C(inf)` curve on `grid`.
pub fn full_cooperation_curve(params: &ChannelParams, grid: &[LinkCapacity]) -> BoundCurve {
    let rate = capacity_full_cooperation(params);
    BoundCurve { family: BoundFamily::FullCoop, points: grid.iter().map(|&c0| BoundPoint { c0, rate }).collect() }
}
