use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    SurfaceArea,
    Volume,
}

/// An area or volume stored as its base-2 logarithm. `-inf` stands for a
/// zero measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMeasure {
    pub log2_value: f64,
    pub kind: MeasureKind,
}

impl LogMeasure {
    pub fn area(log2_value: f64) -> Self {
        Self { log2_value, kind: MeasureKind::SurfaceArea }
    }

    pub fn volume(log2_value: f64) -> Self {
        Self { log2_value, kind: MeasureKind::Volume }
    }

    pub fn zero(kind: MeasureKind) -> Self {
        Self { log2_value: f64::NEG_INFINITY, kind }
    }

    /// The measure itself; overflows to `inf` past roughly 2^1024.
    pub fn value(&self) -> f64 {
        self.log2_value.exp2()
    }

    /// `(2/m) log2` of the measure, the per-two-dimensions exponent.
    pub fn per_dimension(&self, m: usize) -> f64 {
        2.0 * self.log2_value / m as f64
    }

    pub fn is_zero(&self) -> bool {
        self.log2_value == f64::NEG_INFINITY
    }

    /// Product of measures.
    pub fn times(self, log2_factor: f64) -> Self {
        Self { log2_value: self.log2_value + log2_factor, kind: self.kind }
    }
}

/// `log2(2^a + 2^b)`.
pub fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + ((lo - hi) * LN_2).exp().ln_1p() / LN_2
}

/// `ln(e^a + e^b)`.
pub fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^a - e^b)` for `a >= b`; `-inf` when the difference vanishes.
pub fn ln_sub(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    if b >= a {
        return f64::NEG_INFINITY;
    }
    a + (-(b - a).exp_m1()).ln()
}

/// `ln(e^x - 1)` for `x > 0`, without overflow for large `x`.
pub fn ln_expm1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn log2_add_matches_direct(x in -60f64..60.0, y in -60f64..60.0) {
            let direct = (x.exp2() + y.exp2()).log2();
            prop_assert!((log2_add(x, y) - direct).abs() < 1e-12);
            prop_assert_eq!(log2_add(x, y), log2_add(y, x));
            prop_assert_eq!(log2_add(x, f64::NEG_INFINITY), x);
        }

        #[test]
        fn ln_sub_inverts_ln_add(x in -30f64..30.0, y in -30f64..30.0) {
            let s = ln_add(x, y);
            prop_assume!(s > x.max(y));
            prop_assert!((ln_sub(s, y) - x).abs() < 1e-12 * (1.0 + x.abs() + (y - x).exp()));
        }
    }

    #[test]
    fn expm1_tail() {
        assert!((ln_expm1(1e-3) - (1e-3f64).exp_m1().ln()).abs() < 1e-15);
        assert!((ln_expm1(800.0) - 800.0).abs() < 1e-15);
        assert!((ln_expm1(31.0) - (31f64.exp() - 1.0).ln()).abs() < 1e-12);
    }
}
