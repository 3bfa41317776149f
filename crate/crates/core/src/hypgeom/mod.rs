//! Hyperbolic special functions, sphere and ball constants, and the numerical
//! primitives (quadrature, monotone inversion) the other modules build on.

pub mod quad;
pub mod root;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
pub use quad::{integrate, QuadResult, QuadratureSpec};
pub use root::{monotone_invert, Domain, RootFindSpec, RootResult};

/// Dimension `n >= 3` and pinching `kappa` in `(0, 1]`: sectional curvature
/// lies in `[-1, -kappa^2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PinchedClass {
    pub n: usize,
    pub kappa: f64,
}

impl PinchedClass {
    pub fn new(n: usize, kappa: f64) -> Result<Self> {
        let class = Self { n, kappa };
        class.validate()?;
        Ok(class)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(domain(format!("dimension n must be >= 3, got {}", self.n)));
        }
        check_kappa(self.kappa)
    }

    /// `kappa * (n - 2)`, the exponent scale in the width asymptotics.
    pub fn decay_scale(&self) -> f64 {
        self.kappa * (self.n as f64 - 2.0)
    }

    /// Same dimension with `kappa = 1`.
    pub fn unpinched(&self) -> Self {
        Self { n: self.n, kappa: 1.0 }
    }
}

pub(crate) fn check_kappa(kappa: f64) -> Result<()> {
    if kappa > 0.0 && kappa <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("kappa must lie in (0, 1], got {kappa}")))
    }
}

/// Surface measure of the unit sphere `S^m` in `R^{m+1}`.
pub fn sphere_volume(m: usize) -> f64 {
    // vol(S^m) = 2π/(m-1) · vol(S^{m-2})
    let (mut k, mut vol) = if m.is_multiple_of(2) { (0, 2.0) } else { (1, 2.0 * PI) };
    while k < m {
        k += 2;
        vol *= 2.0 * PI / (k as f64 - 1.0);
    }
    vol
}

/// Volume of the unit ball in `R^m`, `m >= 1`.
pub fn euclidean_ball_volume(m: usize) -> Result<f64> {
    if m < 1 {
        return Err(domain("euclidean ball dimension must be >= 1"));
    }
    Ok(sphere_volume(m - 1) / m as f64)
}

/// Volume of the geodesic ball of radius `r` in the `m`-dimensional space
/// form of curvature `-kappa^2`:
/// `vol(S^{m-1}) ∫_0^r (sinh(kappa t)/kappa)^{m-1} dt`.
pub fn hyperbolic_ball_volume(m: usize, kappa: f64, r: f64, quad: &QuadratureSpec) -> Result<f64> {
    if m < 1 {
        return Err(domain("ball dimension must be >= 1"));
    }
    check_kappa(kappa)?;
    if !(r >= 0.0) {
        return Err(domain(format!("radius must be >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    if r.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let power = (m - 1) as i32;
    let integrand = |t: f64| ((kappa * t).sinh() / kappa).powi(power);
    let res = integrate(integrand, 0.0, r, quad)?;
    Ok(sphere_volume(m - 1) * res.value)
}

/// `r(a) = log coth(a/2)`, evaluated as `log1p(2 / expm1(a))`.
///
/// Satisfies `sinh(a) sinh(r(a)) = 1`; `r` is an involution on `(0, ∞)`.
pub fn dist_function_r(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain(format!("arc length must be > 0, got {a}")));
    }
    Ok((2.0 / a.exp_m1()).ln_1p())
}

/// `cosh(x)^{-p}` without overflow for large `|x|`.
pub fn sech_pow(x: f64, p: f64) -> f64 {
    let x = x.abs();
    let e = (-x).exp();
    (2.0 * e / (1.0 + e * e)).powf(p)
}

/// `∫_0^upper cosh(kappa t)^{-p} dt`; `upper` may be infinite.
pub fn sech_pow_integral(p: f64, kappa: f64, upper: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_kappa(kappa)?;
    if !(p > 0.0) {
        return Err(domain(format!("exponent must be > 0, got {p}")));
    }
    if !(upper >= 0.0) {
        return Err(domain(format!("upper limit must be >= 0, got {upper}")));
    }
    // Beyond kappa t = 40 the integrand is below 2^p e^{-40 p}.
    let cut = upper.min(SECH_TAIL_CUT / kappa);
    let mut total = 0.0;
    // split at kappa t = 1, 4, 10 so each panel sees a moderate dynamic range
    let mut lo = 0.0;
    for knot in [1.0, 4.0, 10.0, SECH_TAIL_CUT] {
        let hi = (knot / kappa).min(cut);
        if hi > lo {
            total += integrate(|t| sech_pow(kappa * t, p), lo, hi, quad)?.value;
            lo = hi;
        }
    }
    if upper > cut {
        total += exponential_tail(p, kappa, cut, upper);
    }
    Ok(total)
}

/// Cap on `kappa t` used for the infinite-depth limit.
pub const SECH_TAIL_CUT: f64 = 40.0;

// ∫_from^to (2 e^{-κt})^p dt; relative error below e^{-80} once κ·from >= 40.
fn exponential_tail(p: f64, kappa: f64, from: f64, to: f64) -> f64 {
    let a = (-p * kappa * from).exp();
    let b = if to.is_finite() { (-p * kappa * to).exp() } else { 0.0 };
    2f64.powf(p) * (a - b) / (p * kappa)
}

/// `∫_0^upper cosh(kappa t)^p dt` for finite `upper >= 0`.
pub fn cosh_pow_integral(p: f64, kappa: f64, upper: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_kappa(kappa)?;
    if !(upper >= 0.0) || !upper.is_finite() {
        return Err(domain(format!("upper limit must be finite and >= 0, got {upper}")));
    }
    integrate(|t| (kappa * t).cosh().powf(p), 0.0, upper, quad).map(|r| r.value)
}

/// Maps a quadrature failure inside a closure to a value the root finder
/// can use, remembering non-overflow failures for the caller.
pub(crate) fn value_or_record(res: Result<f64>, slot: &std::cell::RefCell<Option<Error>>) -> f64 {
    match res {
        Ok(v) => v,
        Err(Error::Convergence { estimate, .. }) if estimate.is_infinite() => f64::INFINITY,
        Err(e) => {
            slot.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_constants() {
        assert_eq!(sphere_volume(0), 2.0);
        assert!((sphere_volume(1) - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_volume(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_volume(5) - PI.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn ball_constants() {
        assert_eq!(euclidean_ball_volume(1).unwrap(), 2.0);
        assert!((euclidean_ball_volume(2).unwrap() - PI).abs() < 1e-15);
        assert!((euclidean_ball_volume(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!(euclidean_ball_volume(0).is_err());
    }

    #[test]
    fn r_function_domain() {
        assert!(dist_function_r(0.0).is_err());
        assert!(dist_function_r(-1.0).is_err());
        assert!(dist_function_r(f64::NAN).is_err());
        assert!(dist_function_r(1e-300).unwrap() > 690.0);
        assert!(dist_function_r(800.0).unwrap() >= 0.0);
    }

    #[test]
    fn pinched_class_validation() {
        assert!(PinchedClass::new(2, 1.0).is_err());
        assert!(PinchedClass::new(3, 0.0).is_err());
        assert!(PinchedClass::new(3, 1.5).is_err());
        assert!(PinchedClass::new(3, 1.0).is_ok());
    }

    #[test]
    fn ball_volume_zero_radius_and_errors() {
        let q = QuadratureSpec::default();
        assert_eq!(hyperbolic_ball_volume(2, 1.0, 0.0, &q).unwrap(), 0.0);
        assert!(hyperbolic_ball_volume(2, 1.0, -1.0, &q).is_err());
        assert!(hyperbolic_ball_volume(2, 0.0, 1.0, &q).is_err());
        // one-dimensional "ball" is an interval of length 2r
        assert!((hyperbolic_ball_volume(1, 0.3, 1.5, &q).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sech_integral_known_values() {
        let q = QuadratureSpec::default();
        // ∫ sech^2 = tanh
        let v = sech_pow_integral(2.0, 1.0, 1.0, &q).unwrap();
        assert!((v - 1f64.tanh()).abs() < 1e-14);
        let v = sech_pow_integral(2.0, 1.0, f64::INFINITY, &q).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // ∫_0^∞ sech^3 = π/4
        let v = sech_pow_integral(3.0, 1.0, f64::INFINITY, &q).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-14);
        let v = sech_pow_integral(3.0, 0.5, f64::INFINITY, &q).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-13);
    }
}
