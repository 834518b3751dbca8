//! Deterministic one-dimensional searches: a uniform grid scan followed by
//! golden-section refinement around the best grid cell.

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_GOLDEN_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SearchResult {
    pub x: f64,
    pub value: f64,
    pub bracket_width: f64,
}

/// Minimizes `f` over `[lo, hi]`. Ties on the grid go to the smallest `x`.
/// Refinement stops once the bracket is narrower than `x_tol`.
pub(crate) fn grid_golden_min<F, E>(f: F, lo: f64, hi: f64, points: usize, x_tol: f64) -> Result<SearchResult, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    if hi <= lo || points < 2 {
        let x = hi.max(lo);
        return Ok(SearchResult { x, value: f(x)?, bracket_width: 0.0 });
    }
    let step = (hi - lo) / (points - 1) as f64;
    let at = |i: usize| if i == points - 1 { hi } else { lo + step * i as f64 };
    let mut best_i = 0;
    let mut best = f(lo)?;
    for i in 1..points {
        let v = f(at(i))?;
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let mut best_x = at(best_i);
    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(points - 1));

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iter = 0;
    while b - a > x_tol && iter < MAX_GOLDEN_ITER {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        iter += 1;
    }
    for (x, v) in [(c, fc), (d, fd)] {
        if v < best || (v == best && x < best_x) {
            best = v;
            best_x = x;
        }
    }
    Ok(SearchResult { x: best_x, value: best, bracket_width: b - a })
}
