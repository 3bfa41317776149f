//! Library values against independently computed references.

mod support;

use std::f64::consts::PI;

use stekbound::bounds::{
    cgh_lower, cgh_upper, roll_lower, sigma_b_lower_schoen, stekdir_floor, ConstantTable, Numerics,
};
use stekbound::hypgeom::{hyperbolic_ball_volume, sech_pow_integral, PinchedClass, QuadratureSpec, RootFindSpec};
use stekbound::sturm::{
    collar_steklov_upper, dirichlet_ball_full_spectrum, dirichlet_ball_spectrum, shell_steklov_dirichlet,
    RadialDirichletProblem, ShellProblem,
};
use stekbound::tube::{
    disjointness_gap, ideal_triangle_leg, tube_volume_bounds, tube_volume_lower_lemma, width,
};
use support::oracles;

fn class(n: usize, kappa: f64) -> PinchedClass {
    PinchedClass::new(n, kappa).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn pinned_area() -> f64 {
    2.0 * PI * (-1f64).exp() / 1f64.sinh()
}

#[test]
fn gamma_oracle_self_check() {
    assert!(rel(oracles::gamma_half(1), PI.sqrt()) < 1e-15);
    assert_eq!(oracles::gamma_half(2), 1.0);
    assert_eq!(oracles::gamma_half(8), 6.0);
    assert!(rel(oracles::gamma_half(5), 0.75 * PI.sqrt()) < 1e-15);
    assert!(rel(oracles::sphere_area(3), 4.0 * PI) < 1e-15);
}

#[test]
fn ball_volume_matches_exponential_sum() {
    let q = QuadratureSpec::default();
    for m in 2..=8u32 {
        for kappa in [0.25, 0.5, 1.0] {
            for r in [0.5, 2.0, 7.0] {
                let v = hyperbolic_ball_volume(m as usize, kappa, r, &q).unwrap();
                let e = oracles::ball_volume_exponential_sum(m, kappa, r);
                assert!(rel(v, e) < 1e-9, "m {m} kappa {kappa} r {r}: {v} vs {e}");
            }
        }
    }
}

#[test]
fn sech_integrals_match_gamma_ratio() {
    let q = QuadratureSpec::default();
    for p in 1..=9u32 {
        for kappa in [0.25, 0.6, 1.0] {
            let v = sech_pow_integral(p as f64, kappa, f64::INFINITY, &q).unwrap();
            let e = oracles::sech_integral_exact(p, kappa);
            assert!(rel(v, e) < 1e-12, "p {p} kappa {kappa}: {v} vs {e}");
        }
    }
}

#[test]
fn width_n3_matches_closed_relation() {
    let (q, root) = (QuadratureSpec::default(), RootFindSpec::default());
    for kappa in [0.25, 0.5, 0.8, 1.0] {
        for area in [1e-2, 0.3, 1.0, 17.0, 1e3, 1e6, 1e8] {
            let w = width(&class(3, kappa), area, &q, &root).unwrap().width;
            let e = oracles::width_n3(kappa, area);
            assert!(rel(w, e) < 1e-9, "kappa {kappa} A {area}: {w} vs {e}");
        }
    }
}

#[test]
fn pinned_width_example() {
    let (q, root) = (QuadratureSpec::default(), RootFindSpec::default());
    // A = 2 pi e^{-2w} / sinh(2w) at w = 1/2
    let w = width(&class(3, 1.0), pinned_area(), &q, &root).unwrap();
    assert!((w.width - 0.5).abs() < 1e-9);
    let num = Numerics::default();
    assert_eq!(roll_lower(&class(3, 1.0), pinned_area(), &num).unwrap(), w.width);
    let gap = disjointness_gap(&class(3, 1.0), pinned_area(), pinned_area(), &q, &root).unwrap();
    assert!((gap - 1.0).abs() < 2e-9);
}

#[test]
fn tube_volume_at_pinned_width() {
    let (q, root) = (QuadratureSpec::default(), RootFindSpec::default());
    let a = pinned_area();
    let b = tube_volume_bounds(&class(3, 1.0), a, &q, &root).unwrap();
    // 2A ∫_0^{1/2} cosh^2 = 2A (w/2 + sinh(2w)/4)
    let e = 2.0 * a * (0.25 + 1f64.sinh() / 4.0);
    assert!(rel(b.lower, e) < 1e-9, "{} vs {e}", b.lower);
    assert!(rel(b.upper, e) < 1e-9);
    let lemma = tube_volume_lower_lemma(&class(3, 1.0), a, &q, &root).unwrap();
    let e = a * (1f64.exp() - 1.0) / 4.0;
    assert!(rel(lemma, e) < 1e-9, "{lemma} vs {e}");
    assert!(lemma <= b.lower);
}

#[test]
fn ideal_triangle_leg_identity() {
    for phi in [0.1, 0.5, 1.0, 1.5] {
        let r = ideal_triangle_leg(phi).unwrap();
        assert!(rel(r.sinh(), 1.0 / phi.tan()) < 1e-14);
        // cosh r = 1 / sin(phi) for the same triangle
        assert!(rel(r.cosh(), 1.0 / phi.sin()) < 1e-14);
    }
}

#[test]
fn cgh_upper_pinned_example() {
    let num = Numerics::default();
    let up = cgh_upper(&class(3, 1.0), pinned_area(), 1.0, &num).unwrap();
    assert!((up.value - 6.0).abs() < 1e-8);
}

#[test]
fn schoen_bound_pinned_composition() {
    // n = 4, kappa = 1, A = 10: V_3(rho) = pi (sinh 2 rho - 2 rho), solved by bisection
    let v3 = |rho: f64| PI * ((2.0 * rho).sinh() - 2.0 * rho) - 10.0;
    let rho = oracles::bisect(v3, 0.1, 10.0);
    let w = 0.5 * (1.0 / (rho / 2.0).tanh()).ln();
    let alpha = 1.0 + 1.0 / w;
    let expected = 0.01 / (alpha + 0.1);
    let item = sigma_b_lower_schoen(&class(4, 1.0), 2, 10.0, &ConstantTable::default(), &Numerics::default()).unwrap();
    assert!(rel(item.value, expected) < 1e-9, "{} vs {expected}", item.value);
}

#[test]
fn quadratic_form_solves_back() {
    let num = Numerics::default();
    let lo = cgh_lower(&class(5, 0.4), 3.0, 2.75, &num).unwrap();
    let s = lo.quadratic;
    assert!(rel(s * s + lo.alpha * s, 2.75) < 1e-12);
}

#[test]
fn stekdir_floor_known_values() {
    let q = QuadratureSpec::default();
    let f3 = stekdir_floor(&class(3, 1.0), &q).unwrap();
    assert_eq!(f3.closed, 0.5);
    assert!((f3.sharper - 1.0).abs() < 1e-13);
    // ∫_0^∞ sech^3 = [sech t tanh t + atan(sinh t)]/2 |_0^∞ = pi/4
    let f4 = stekdir_floor(&class(4, 1.0), &q).unwrap();
    assert!(rel(f4.sharper, 4.0 / PI) < 1e-13);
    assert_eq!(f4.closed, 3.0 / 8.0);
}

#[test]
fn euclidean_regime_matches_bessel_zero() {
    let j01 = oracles::j0_first_zero();
    assert!((j01 - 2.404_825_557_695_773).abs() < 1e-12);
    let s = dirichlet_ball_full_spectrum(2, 1.0, 0.1, 1, 1, 2048).unwrap();
    let e = (j01 / 0.1).powi(2);
    assert!(rel(s.lines[0].value, e) < 0.015);
    // curvature raises the value only slightly at this radius
    assert!(rel(s.lines[0].value, e) < 1e-3);
    // the pure small-curvature limit converges to the Euclidean value
    let flat = dirichlet_ball_spectrum(&RadialDirichletProblem::new(2, 1e-3, 1.0, 0).unwrap(), 1).unwrap();
    assert!(rel(flat.lines[0].value, j01 * j01) < 1e-5, "{}", flat.lines[0].value);
}

#[test]
fn ball_blocks_match_shooting() {
    for (m, kappa, radius) in [(2, 1.0, 1.0), (3, 1.0, 2.0), (4, 0.5, 3.0), (2, 1.0, 20.0)] {
        for l in 0..3u32 {
            let p = RadialDirichletProblem::new(m as usize, kappa, radius, l as usize).unwrap();
            let s = dirichlet_ball_spectrum(&p, 2).unwrap();
            for j in 1..=2 {
                let v = s.lines[j - 1].value;
                let e = oracles::radial_eigenvalue(m, kappa, radius, l, j, 4.0 * v + 10.0);
                assert!(rel(v, e) < 1e-4, "m {m} R {radius} l {l} j {j}: {v} vs {e}");
            }
        }
    }
}

#[test]
fn collar_bound_factor_matches_shooting() {
    // merged spectrum of B_{H^2}(1): lambda_1 (l=0), lambda_2 = lambda_3 (l=1), lambda_4 (l=2)
    let l1 = oracles::radial_eigenvalue(2, 1.0, 1.0, 1, 1, 40.0);
    let l2 = oracles::radial_eigenvalue(2, 1.0, 1.0, 2, 1, 60.0);
    for (k, expected) in [(1, l1), (2, l1), (3, l2)] {
        let c = collar_steklov_upper(3, k, 0.1, 2048).unwrap();
        assert!(rel(c.ball_eigenvalue, expected) < 1e-4, "k {k}: {} vs {expected}", c.ball_eigenvalue);
        assert!(rel(c.value, 0.5 * 1f64.cosh() * expected * 0.1) < 1e-4);
    }
}

#[test]
fn large_ball_values() {
    let vals: Vec<f64> = [5.0, 10.0, 20.0]
        .iter()
        .map(|&r| dirichlet_ball_full_spectrum(2, 1.0, r, 1, 1, 2048).unwrap().lines[0].value)
        .collect();
    assert!(vals[0] > vals[1] && vals[1] > vals[2]);
    let e = oracles::radial_eigenvalue(2, 1.0, 20.0, 0, 1, 1.0);
    assert!(rel(vals[2], e) < 1e-4, "{} vs {e}", vals[2]);
    // still well above the bottom of the spectrum 1/4 at R = 20
    assert!(vals[2] > 0.26);
}

#[test]
fn collar_values_match_shooting() {
    for (n, kappa, delta) in [(3, 1.0, 1.0), (4, 0.5, 2.0), (5, 0.8, 3.0)] {
        let mu = vec![0.0, 0.7, 2.0, 6.0];
        let p = ShellProblem::new(class(n as usize, kappa), delta, mu.clone()).unwrap();
        let s = shell_steklov_dirichlet(&p).unwrap();
        for (entry, &m) in s.entries.iter().zip(&mu) {
            let e = oracles::collar_sigma_shooting(n, kappa, delta, m, 20_000);
            assert!(rel(entry.sigma, e) < 1e-5, "n {n} mu {m}: {} vs {e}", entry.sigma);
            // the Richardson estimate tracks the true error
            let err = (entry.sigma - e).abs();
            assert!(err <= 2.0 * entry.error_estimate + 1e-12, "{err} vs {}", entry.error_estimate);
            assert!(err >= 0.5 * entry.error_estimate || err < 1e-10, "{err} vs {}", entry.error_estimate);
        }
    }
}
