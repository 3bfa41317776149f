//! Inversion of strictly monotone scalar functions.
//!
//! A bracket is grown from an initial interval towards the ends of the
//! declared domain, then shrunk with Illinois-modified regula falsi. Every
//! iterate stays strictly inside the current bracket; a step that would not
//! falls back to bisection (geometric bisection when the bracket spans
//! several binades of one sign).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootFindSpec {
    /// Relative tolerance on the argument.
    pub tol: f64,
    pub max_iter: usize,
    /// Expansion factor applied while searching for a sign change.
    pub bracket_growth: f64,
}

impl Default for RootFindSpec {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 200,
            bracket_growth: 2.0,
        }
    }
}

impl RootFindSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(domain(format!("root tolerance must be > 0, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(domain("max_iter must be >= 1"));
        }
        if !(self.bracket_growth > 1.0) {
            return Err(domain(format!(
                "bracket_growth must be > 1, got {}",
                self.bracket_growth
            )));
        }
        Ok(())
    }
}

/// Open interval on which the inverted function is defined, plus the
/// starting bracket for the sign-change search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lower: f64,
    pub upper: f64,
    pub initial: (f64, f64),
}

impl Domain {
    pub fn new(lower: f64, upper: f64, initial: (f64, f64)) -> Result<Self> {
        let (a, b) = initial;
        if !(lower < upper) || !(a < b) || !(a > lower && b < upper) {
            return Err(domain(format!(
                "initial bracket [{a}, {b}] must lie strictly inside ({lower}, {upper})"
            )));
        }
        Ok(Self { lower, upper, initial })
    }

    pub fn real_line() -> Self {
        Self {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            initial: (-1.0, 1.0),
        }
    }

    /// `(0, ∞)` starting from `[0.5, 1]`.
    pub fn positive() -> Self {
        Self {
            lower: 0.0,
            upper: f64::INFINITY,
            initial: (0.5, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub x: f64,
    /// `|f(x) - target|`
    pub residual: f64,
    pub iterations: usize,
}

// Enough halvings to walk across the whole binary64 exponent range.
const MAX_EXPANSIONS: usize = 2200;

fn step_out(x: f64, anchor: f64, end: f64, growth: f64) -> f64 {
    if end.is_finite() {
        end + (x - end) / growth
    } else {
        // each step is `growth` times the previous one
        let step = (x - anchor).abs().max(1.0) * growth;
        if end > 0.0 {
            x + step
        } else {
            x - step
        }
    }
}

/// Finds `x` in the domain with `f(x) = target` for strictly monotone `f`.
pub fn monotone_invert<F: Fn(f64) -> f64>(
    f: F,
    target: f64,
    dom: Domain,
    spec: &RootFindSpec,
) -> Result<RootResult> {
    spec.validate()?;
    if !target.is_finite() {
        return Err(domain(format!("target must be finite, got {target}")));
    }
    let g = |x: f64| f(x) - target;

    let (mut a, mut b) = dom.initial;
    let mut ga = g(a);
    let mut gb = g(b);
    if ga.is_nan() || gb.is_nan() {
        return Err(domain("function is NaN on the initial bracket"));
    }
    if ga == 0.0 {
        return Ok(RootResult { x: a, residual: 0.0, iterations: 0 });
    }
    if gb == 0.0 {
        return Ok(RootResult { x: b, residual: 0.0, iterations: 0 });
    }
    let increasing = match (f(a), f(b)) {
        (fa, fb) if fb > fa => true,
        (fa, fb) if fb < fa => false,
        _ => return Err(Error::Bracket("function is constant on the initial bracket".into())),
    };

    // Grow until g changes sign.
    let mut expansions = 0;
    while ga.signum() == gb.signum() {
        // g > 0 with f increasing means the root lies to the left.
        let go_left = (ga > 0.0) == increasing;
        if go_left {
            let next = step_out(a, b, dom.lower, spec.bracket_growth);
            if next == a || next <= dom.lower || !next.is_finite() {
                return Err(range_error(target, f(a), f(b)));
            }
            b = a;
            gb = ga;
            a = next;
            ga = g(a);
        } else {
            let next = step_out(b, a, dom.upper, spec.bracket_growth);
            if next == b || next >= dom.upper || !next.is_finite() {
                return Err(range_error(target, f(a), f(b)));
            }
            a = b;
            ga = gb;
            b = next;
            gb = g(b);
        }
        if ga.is_nan() || gb.is_nan() {
            return Err(Error::Bracket(format!("function became NaN while expanding to [{a}, {b}]")));
        }
        if ga == 0.0 {
            return Ok(RootResult { x: a, residual: 0.0, iterations: 0 });
        }
        if gb == 0.0 {
            return Ok(RootResult { x: b, residual: 0.0, iterations: 0 });
        }
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::Bracket(format!(
                "no sign change after {MAX_EXPANSIONS} expansions, last bracket [{a}, {b}]"
            )));
        }
    }

    // Illinois iteration on the bracket [a, b].
    let resid_floor = 4.0 * f64::EPSILON * target.abs();
    let mut side = 0i8;
    let mut best = if ga.abs() < gb.abs() { (a, ga) } else { (b, gb) };
    let mut checkpoint = b - a;
    for iter in 1..=spec.max_iter {
        let width = b - a;
        // Force a bisection when the last few steps failed to halve the bracket.
        let stalled = iter % 4 == 0 && width > 0.5 * checkpoint;
        if iter % 4 == 0 {
            checkpoint = width;
        }
        let mut x = if ga.is_finite() && gb.is_finite() {
            b - gb * width / (gb - ga)
        } else {
            f64::NAN
        };
        if !(x > a && x < b) || stalled {
            x = if a > 0.0 && b > 4.0 * a {
                (a * b).sqrt()
            } else if b < 0.0 && a < 4.0 * b {
                -(a * b).sqrt()
            } else {
                a + 0.5 * width
            };
            side = 0;
        }
        let gx = g(x);
        if gx.is_nan() {
            return Err(Error::Bracket(format!("function is NaN at {x}")));
        }
        if gx.abs() < best.1.abs() {
            best = (x, gx);
        }
        if gx == 0.0 || gx.abs() <= resid_floor {
            return Ok(RootResult { x, residual: gx.abs(), iterations: iter });
        }
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
            if side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            b = x;
            gb = gx;
            if side == 1 {
                ga *= 0.5;
            }
            side = 1;
        }
        let scale = a.abs().max(b.abs());
        let adjacent = next_up(a) >= b;
        if b - a <= spec.tol * scale || adjacent {
            return Ok(RootResult {
                x: best.0,
                residual: (f(best.0) - target).abs(),
                iterations: iter,
            });
        }
    }
    Err(Error::Convergence {
        estimate: best.0,
        error_bound: b - a,
        subdivisions: spec.max_iter,
    })
}

fn range_error(target: f64, fa: f64, fb: f64) -> Error {
    Error::Range {
        target,
        low: fa.min(fb),
        high: fa.max(fb),
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_and_cube() {
        let spec = RootFindSpec::default();
        let r = monotone_invert(|x| x, 3.0, Domain::real_line(), &spec).unwrap();
        assert!((r.x - 3.0).abs() < 1e-12);
        let r = monotone_invert(|x| x * x * x, 8.0, Domain::real_line(), &spec).unwrap();
        assert!((r.x - 2.0).abs() < 1e-11);
    }

    #[test]
    fn decreasing_function_on_half_line() {
        let f = |x: f64| 2.0 * PI * (-2.0 * x).exp() / (2.0 * x).sinh();
        let target = f(0.5);
        let r = monotone_invert(f, target, Domain::positive(), &RootFindSpec::default()).unwrap();
        assert!((r.x - 0.5).abs() < 1e-12, "{}", r.x);
    }

    #[test]
    fn tiny_and_huge_roots_resolved_relatively() {
        let spec = RootFindSpec::default();
        let r = monotone_invert(|x| x.ln(), (1e-30f64).ln(), Domain::positive(), &spec).unwrap();
        assert!(((r.x - 1e-30) / 1e-30).abs() < 1e-10);
        let r = monotone_invert(|x| x.ln(), (1e30f64).ln(), Domain::positive(), &spec).unwrap();
        assert!(((r.x - 1e30) / 1e30).abs() < 1e-10);
    }

    #[test]
    fn out_of_range_target() {
        let err = monotone_invert(|x: f64| x.atan(), 2.0, Domain::real_line(), &RootFindSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::Range { .. }), "{err:?}");
        let err = monotone_invert(|x: f64| x.exp(), -1.0, Domain::real_line(), &RootFindSpec::default())
            .unwrap_err();
        assert!(matches!(err, Error::Range { .. }), "{err:?}");
    }

    #[test]
    fn finite_domain_end_is_not_crossed() {
        // sqrt on (0, 4): target 3 needs x = 9, outside the domain
        let dom = Domain::new(0.0, 4.0, (1.0, 2.0)).unwrap();
        let err = monotone_invert(|x: f64| x.sqrt(), 3.0, dom, &RootFindSpec::default()).unwrap_err();
        assert!(matches!(err, Error::Range { .. }));
        let r = monotone_invert(|x: f64| x.sqrt(), 1.9, dom, &RootFindSpec::default()).unwrap();
        assert!((r.x - 3.61).abs() < 1e-11);
    }

    #[test]
    fn bad_specs() {
        let s = RootFindSpec {
            bracket_growth: 1.0,
            ..Default::default()
        };
        assert!(s.validate().is_err());
        assert!(Domain::new(0.0, 1.0, (0.0, 0.5)).is_err());
        assert!(monotone_invert(|_| 1.0, 1.5, Domain::real_line(), &RootFindSpec::default()).is_err());
    }
}
