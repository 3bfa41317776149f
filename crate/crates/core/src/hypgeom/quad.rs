//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The interval with the largest local error estimate is bisected until the
//! summed estimate meets `max(abs_tol, rel_tol * |I|)`. The local estimate is
//! the plain difference between the 15-point Kronrod and the embedded 7-point
//! Gauss result, which overestimates the Kronrod error for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Tolerances and work limit for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 0.0,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(domain(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(domain(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        if self.max_subdivisions < 1 {
            return Err(domain("max_subdivisions must be >= 1"));
        }
        Ok(())
    }
}

/// Value, summed local error estimate and the number of intervals used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_value = WGK[7] * fc.abs();
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        kronrod += w * (f1 + f2);
        abs_value += w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_value * half.abs(),
    }
}

/// Integrates `f` over `[a, b]` (finite, `a <= b`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain(format!("integration limits must be finite, got [{a}, {b}]")));
    }
    if b < a {
        return Err(domain(format!("integration limits reversed: [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 1,
        });
    }

    let first = kronrod15(&f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_value = first.abs_value;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        if !value.is_finite() {
            return Err(Error::Convergence {
                estimate: value,
                error_bound: f64::INFINITY,
                subdivisions: heap.len(),
            });
        }
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        // Below this the estimate is dominated by rounding in the rule itself.
        let roundoff = 64.0 * f64::EPSILON * abs_value;
        if error <= target || error <= roundoff {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                subdivisions: heap.len(),
            });
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::Convergence {
                estimate: value,
                error_bound: error,
                subdivisions: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in binary64
            return Err(Error::Convergence {
                estimate: value,
                error_bound: error,
                subdivisions: heap.len() + 1,
            });
        }
        let left = kronrod15(&f, worst.a, mid);
        let right = kronrod15(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);

        // re-sum occasionally to keep the running totals free of drift
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
            abs_value = heap.iter().map(|s| s.abs_value).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, &spec).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0) + 3.0;
        assert!((r.value - exact).abs() < 1e-13);
        assert_eq!(r.subdivisions, 1);
    }

    #[test]
    fn exponential_growth_is_resolved() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x| (5.0 * x).exp(), 0.0, 20.0, &spec).unwrap();
        let exact = ((100.0f64).exp() - 1.0) / 5.0;
        assert!(((r.value - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate(|x| x, 3.0, 3.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn subdivision_limit_reports_best_estimate() {
        let spec = QuadratureSpec::new(1e-14, 0.0, 2).unwrap();
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &spec).unwrap_err();
        match err {
            Error::Convergence {
                estimate,
                error_bound,
                subdivisions,
            } => {
                assert!(estimate.is_finite());
                assert!(error_bound > 0.0);
                assert_eq!(subdivisions, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(QuadratureSpec::new(0.0, 0.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, -1.0, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, 0.0, 0).is_err());
        assert!(integrate(|x| x, 1.0, 0.0, &QuadratureSpec::default()).is_err());
    }
}
