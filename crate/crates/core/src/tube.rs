//! The width function of a totally geodesic hypersurface, its explicit lower
//! bound, tube-volume estimates and the ideal-triangle identities behind the
//! embedded-ball radius.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hypgeom::{
    cosh_pow_integral, dist_function_r, hyperbolic_ball_volume, monotone_invert, sphere_volume,
    value_or_record, Domain, PinchedClass, QuadratureSpec, RootFindSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WidthResult {
    pub width: f64,
    /// `|V_{n-1,kappa}(r(2 width)) - A|`
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeVolumeBounds {
    pub lower: f64,
    pub upper: f64,
}

fn check_area(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("hypersurface volume must be finite and > 0, got {a}")))
    }
}

/// Half-width `w` of the certified tubular neighbourhood of a totally
/// geodesic hypersurface of volume `area`, defined by
/// `V_{n-1,kappa}(r(2w)) = area`.
///
/// Since `r` is an involution, `w = r(rho) / 2` where `rho` solves
/// `V_{n-1,kappa}(rho) = area`; inverting the ball volume directly keeps the
/// root finder on a well-scaled variable even when `w` is astronomically
/// small.
pub fn width(
    class: &PinchedClass,
    area: f64,
    quad: &QuadratureSpec,
    root: &RootFindSpec,
) -> Result<WidthResult> {
    class.validate()?;
    check_area(area)?;
    let m = class.n - 1;
    let failure = RefCell::new(None);
    let volume = |rho: f64| value_or_record(hyperbolic_ball_volume(m, class.kappa, rho, quad), &failure);
    let solved = monotone_invert(volume, area, Domain::positive(), root);
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let solved = match solved {
        Ok(s) => s,
        Err(Error::Range { .. }) => {
            return Err(Error::Bracket(format!(
                "ball volume never reached {area:e}; this indicates a bug"
            )))
        }
        Err(e) => return Err(e),
    };
    let w = 0.5 * dist_function_r(solved.x)?;
    let back = hyperbolic_ball_volume(m, class.kappa, dist_function_r(2.0 * w)?, quad)?;
    Ok(WidthResult {
        width: w,
        residual: (back - area).abs(),
        iterations: solved.iterations,
    })
}

/// Explicit lower bound for the width:
/// `y = arcoth(z) = ½ log(1 + 2/(z - 1))` with
/// `z = [((n-2) 4^{n-2} / vol(S^{n-2})) kappa^{n-1} x + 2^{(n-2)/2}]^{1/(kappa(n-2))}`.
pub fn width_closed_form_lower(class: &PinchedClass, x: f64) -> Result<f64> {
    class.validate()?;
    check_area(x)?;
    let n = class.n as f64;
    let kappa = class.kappa;
    let coeff = (n - 2.0) * 4f64.powf(n - 2.0) / sphere_volume(class.n - 2) * kappa.powf(n - 1.0);
    let base = coeff * x + 2f64.powf((n - 2.0) / 2.0);
    let ln_z = base.ln() / class.decay_scale();
    // 2/(z-1) = 2 e^{-ln z} / (1 - e^{-ln z})
    let inv_z = (-ln_z).exp();
    let denom = -(-ln_z).exp_m1();
    if !(denom > 0.0) {
        return Err(domain(format!(
            "closed-form width bound undefined at x = {x:e} (z - 1 <= 0)"
        )));
    }
    Ok(0.5 * (2.0 * inv_z / denom).ln_1p())
}

/// Lower and upper estimates of the volume of the width tube:
/// `2A ∫_0^{w_{n,kappa}(A)} cosh^{n-1}(kappa t) dt` and the same with `kappa = 1`.
pub fn tube_volume_bounds(
    class: &PinchedClass,
    area: f64,
    quad: &QuadratureSpec,
    root: &RootFindSpec,
) -> Result<TubeVolumeBounds> {
    let p = class.n as f64 - 1.0;
    let w = width(class, area, quad, root)?.width;
    let lower = 2.0 * area * cosh_pow_integral(p, class.kappa, w, quad)?;
    let unpinched = class.unpinched();
    let w1 = width(&unpinched, area, quad, root)?.width;
    let upper = 2.0 * area * cosh_pow_integral(p, 1.0, w1, quad)?;
    Ok(TubeVolumeBounds { lower, upper })
}

/// `A (e^{(n-1) kappa w} - 1) / (kappa (n-1) 2^{n-2})`, the exponential
/// minorant of the tube-volume lower estimate.
pub fn tube_volume_lower_lemma(
    class: &PinchedClass,
    area: f64,
    quad: &QuadratureSpec,
    root: &RootFindSpec,
) -> Result<f64> {
    let w = width(class, area, quad, root)?.width;
    let n1 = class.n as f64 - 1.0;
    Ok(area * (n1 * class.kappa * w).exp_m1() / (class.kappa * n1 * 2f64.powf(n1 - 1.0)))
}

/// Finite leg `r` of the right-angled ideal triangle with angle `phi` at its
/// finite non-right vertex: `sinh(r) = cot(phi)`.
pub fn ideal_triangle_leg(phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
        return Err(domain(format!("angle must lie in (0, π/2), got {phi}")));
    }
    Ok((1.0 / phi.tan()).asinh())
}

/// Certified minimal distance between disjoint totally geodesic
/// hypersurfaces of volumes `a1` and `a2`: `w(a1) + w(a2)`.
pub fn disjointness_gap(
    class: &PinchedClass,
    a1: f64,
    a2: f64,
    quad: &QuadratureSpec,
    root: &RootFindSpec,
) -> Result<f64> {
    Ok(width(class, a1, quad, root)?.width + width(class, a2, quad, root)?.width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn defaults() -> (QuadratureSpec, RootFindSpec) {
        (QuadratureSpec::default(), RootFindSpec::default())
    }

    #[test]
    fn rejects_nonpositive_area() {
        let (q, r) = defaults();
        let c = PinchedClass::new(3, 1.0).unwrap();
        assert!(width(&c, 0.0, &q, &r).is_err());
        assert!(width(&c, -1.0, &q, &r).is_err());
        assert!(width(&c, f64::NAN, &q, &r).is_err());
        assert!(width_closed_form_lower(&c, 0.0).is_err());
    }

    #[test]
    fn leg_angles() {
        assert!(ideal_triangle_leg(0.0).is_err());
        assert!(ideal_triangle_leg(FRAC_PI_2).is_err());
        let r = ideal_triangle_leg(FRAC_PI_4).unwrap();
        assert!((r - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-15);
        assert!(ideal_triangle_leg(1.57).unwrap() < 1e-3);
        // arcsinh(√3) = ln(√3 + 2)
        let r = ideal_triangle_leg(PI / 6.0).unwrap();
        assert!((r - 1.316_957_896_924_816_7).abs() < 1e-15);
    }

    #[test]
    fn kappa_one_bounds_coincide() {
        let (q, r) = defaults();
        let c = PinchedClass::new(4, 1.0).unwrap();
        let b = tube_volume_bounds(&c, 7.0, &q, &r).unwrap();
        assert_eq!(b.lower, b.upper);
    }

    #[test]
    fn symmetric_gap() {
        let (q, r) = defaults();
        let c = PinchedClass::new(5, 0.5).unwrap();
        let g = disjointness_gap(&c, 3.0, 3.0, &q, &r).unwrap();
        let w = width(&c, 3.0, &q, &r).unwrap().width;
        assert_eq!(g, 2.0 * w);
    }
}
