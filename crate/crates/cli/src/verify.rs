//! Built-in invariant suites, runnable from the `verify` subcommand.

use std::f64::consts::PI;
use std::io::Write;

use stekbound::bounds::{
    assemble_report, cgh_lower, cgh_upper, glued_family_upper, sigma1_lower_volume, stekdir_floor, ConstantTable,
    ManifoldDescriptor, Numerics, ReportOptions, Target,
};
use stekbound::hypgeom::{
    dist_function_r, euclidean_ball_volume, hyperbolic_ball_volume, monotone_invert, sech_pow_integral,
    sphere_volume, Domain, PinchedClass, QuadratureSpec, RootFindSpec,
};
use stekbound::sturm::{
    dirichlet_ball_full_spectrum, shell_steklov_dirichlet_with, Fault, ShellProblem,
};
use stekbound::tube::{tube_volume_bounds, tube_volume_lower_lemma, width, width_closed_form_lower};

use crate::Suite;

type Check = Result<(), String>;

#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Vec<(String, Check)>,
}

impl Outcome {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.1.is_ok())
    }

    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.1.is_err()).count()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn e2s(e: stekbound::Error) -> String {
    e.to_string()
}

fn class(n: usize, kappa: f64) -> PinchedClass {
    PinchedClass::new(n, kappa).expect("valid class")
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

struct Case {
    name: &'static str,
    run: Box<dyn Fn(Fault) -> Check>,
}

fn case(name: &'static str, run: impl Fn(Fault) -> Check + 'static) -> Case {
    Case {
        name,
        run: Box::new(run),
    }
}

fn hypgeom_cases() -> Vec<Case> {
    let q = QuadratureSpec::default();
    vec![
        case("sphere_volumes", |_| {
            for (m, exact) in [(1, 2.0 * PI), (2, 4.0 * PI), (3, 2.0 * PI * PI)] {
                ensure(rel(sphere_volume(m), exact) < 1e-14, || format!("vol(S^{m}) = {}", sphere_volume(m)))?;
            }
            Ok(())
        }),
        case("euclidean_ball_volumes", |_| {
            let v2 = euclidean_ball_volume(2).map_err(e2s)?;
            let v3 = euclidean_ball_volume(3).map_err(e2s)?;
            ensure(rel(v2, PI) < 1e-14 && rel(v3, 4.0 * PI / 3.0) < 1e-14, || format!("{v2}, {v3}"))
        }),
        case("ball_volume_closed_forms", move |_| {
            for kappa in [0.5, 1.0] {
                for r in [0.1, 1.0, 5.0] {
                    let kr = kappa * r;
                    let v2 = hyperbolic_ball_volume(2, kappa, r, &q).map_err(e2s)?;
                    let e2 = 2.0 * PI * (kr.cosh() - 1.0) / (kappa * kappa);
                    let v3 = hyperbolic_ball_volume(3, kappa, r, &q).map_err(e2s)?;
                    let e3 = PI * ((2.0 * kr).sinh() - 2.0 * kr) / kappa.powi(3);
                    ensure(rel(v2, e2) < 1e-10 && rel(v3, e3) < 1e-10, || {
                        format!("kappa {kappa}, r {r}: {v2} vs {e2}, {v3} vs {e3}")
                    })?;
                }
            }
            Ok(())
        }),
        case("small_balls_are_euclidean", move |_| {
            for m in 2..=6 {
                let r = 1e-4;
                let v = hyperbolic_ball_volume(m, 1.0, r, &q).map_err(e2s)?;
                let e = euclidean_ball_volume(m).map_err(e2s)? * r.powi(m as i32);
                ensure(rel(v, e) < 1e-6, || format!("m = {m}: {v} vs {e}"))?;
            }
            Ok(())
        }),
        case("distance_function_is_involution", |_| {
            for a in log_grid(1e-6, 30.0, 40) {
                let back = dist_function_r(dist_function_r(a).map_err(e2s)?).map_err(e2s)?;
                ensure(rel(back, a) < 1e-12, || format!("r(r({a})) = {back}"))?;
            }
            Ok(())
        }),
        case("sech_power_integrals", move |_| {
            for kappa in [0.25, 0.5, 1.0] {
                let s2 = sech_pow_integral(2.0, kappa, f64::INFINITY, &q).map_err(e2s)?;
                let s1 = sech_pow_integral(1.0, kappa, f64::INFINITY, &q).map_err(e2s)?;
                ensure(rel(s2, 1.0 / kappa) < 1e-12 && rel(s1, PI / (2.0 * kappa)) < 1e-12, || {
                    format!("kappa {kappa}: {s2}, {s1}")
                })?;
            }
            Ok(())
        }),
        case("monotone_inversion_round_trip", move |_| {
            let root = RootFindSpec::default();
            for target in log_grid(1e-3, 1e6, 10) {
                let f = |r: f64| hyperbolic_ball_volume(2, 1.0, r, &q).unwrap_or(f64::NAN);
                let x = monotone_invert(f, target, Domain::positive(), &root).map_err(e2s)?.x;
                ensure(rel(f(x), target) < 1e-10, || format!("target {target}: {}", f(x)))?;
            }
            Ok(())
        }),
    ]
}

fn tube_cases() -> Vec<Case> {
    let q = QuadratureSpec::default();
    let root = RootFindSpec::default();
    let grid = || {
        let mut out = Vec::new();
        for n in [3, 5] {
            for kappa in [0.5, 1.0] {
                for a in log_grid(1e-2, 1e8, 10) {
                    out.push((class(n, kappa), a));
                }
            }
        }
        out
    };
    vec![
        case("width_round_trip", move |_| {
            for (c, a) in grid() {
                let w = width(&c, a, &q, &root).map_err(e2s)?.width;
                let back = hyperbolic_ball_volume(c.n - 1, c.kappa, dist_function_r(2.0 * w).map_err(e2s)?, &q)
                    .map_err(e2s)?;
                ensure(rel(back, a) < 1e-9, || format!("{c:?}, A = {a}: {back}"))?;
            }
            Ok(())
        }),
        case("pinned_width", move |_| {
            let a = 2.0 * PI * (-1f64).exp() / 1f64.sinh();
            let w = width(&class(3, 1.0), a, &q, &root).map_err(e2s)?.width;
            ensure((w - 0.5).abs() < 1e-9, || format!("width = {w}"))
        }),
        case("closed_form_below_width", move |_| {
            for (c, a) in grid() {
                let w = width(&c, a, &q, &root).map_err(e2s)?.width;
                let lo = width_closed_form_lower(&c, a).map_err(e2s)?;
                ensure(lo <= w, || format!("{c:?}, A = {a}: {lo} > {w}"))?;
            }
            Ok(())
        }),
        case("width_monotone", move |_| {
            let areas = log_grid(1e-2, 1e6, 12);
            for kappa in [0.5, 1.0] {
                let ws: Vec<f64> = areas
                    .iter()
                    .map(|&a| width(&class(4, kappa), a, &q, &root).map(|w| w.width))
                    .collect::<Result<_, _>>()
                    .map_err(e2s)?;
                ensure(ws.windows(2).all(|p| p[1] < p[0]), || format!("not decreasing in A: {ws:?}"))?;
            }
            for a in [0.1, 10.0, 1e4] {
                let lo = width(&class(4, 0.5), a, &q, &root).map_err(e2s)?.width;
                let hi = width(&class(4, 1.0), a, &q, &root).map_err(e2s)?.width;
                ensure(lo < hi, || format!("not increasing in kappa at A = {a}"))?;
            }
            Ok(())
        }),
        case("tube_volume_sandwich", move |_| {
            for (c, a) in grid() {
                let b = tube_volume_bounds(&c, a, &q, &root).map_err(e2s)?;
                let lemma = tube_volume_lower_lemma(&c, a, &q, &root).map_err(e2s)?;
                ensure(lemma <= b.lower * (1.0 + 1e-12) && b.lower <= b.upper * (1.0 + 1e-12), || {
                    format!("{c:?}, A = {a}: {lemma}, {}, {}", b.lower, b.upper)
                })?;
            }
            Ok(())
        }),
    ]
}

fn shell(n: usize, kappa: f64, delta: f64, mu: Vec<f64>, grid: usize, fault: Fault) -> Result<Vec<f64>, String> {
    let mut p = ShellProblem::new(class(n, kappa), delta, mu).map_err(e2s)?;
    p.grid_points = grid;
    let s = shell_steklov_dirichlet_with(&p, fault).map_err(e2s)?;
    Ok(s.entries.iter().map(|e| e.sigma).collect())
}

fn sturm_cases() -> Vec<Case> {
    const J01: f64 = 2.404_825_557_695_773;
    vec![
        case("ball_euclidean_regime", |_| {
            let s = dirichlet_ball_full_spectrum(2, 1.0, 0.1, 1, 1, 2048).map_err(e2s)?;
            let v = s.lines[0].value;
            let e = (J01 / 0.1).powi(2);
            ensure(rel(v, e) < 0.015, || format!("{v} vs {e}"))
        }),
        case("ball_decreasing_in_radius", |_| {
            let vals: Vec<f64> = [1.0, 5.0, 10.0]
                .iter()
                .map(|&r| dirichlet_ball_full_spectrum(2, 1.0, r, 1, 1, 2048).map(|s| s.lines[0].value))
                .collect::<Result<_, _>>()
                .map_err(e2s)?;
            ensure(vals.windows(2).all(|w| w[1] < w[0]), || format!("{vals:?}"))
        }),
        case("ball_multiplicities", |_| {
            let s = dirichlet_ball_full_spectrum(3, 1.0, 1.0, 4, 4, 1024).map_err(e2s)?;
            let d = s.distinct();
            ensure(d.len() >= 2 && d[0].1 == 1 && d[1].1 == 3, || format!("{d:?}"))
        }),
        case("shell_tanh_closed_form", |fault| {
            let s = shell(3, 1.0, 1.0, vec![0.0], 2048, fault)?;
            let e = 1.0 / 1f64.tanh();
            ensure(rel(s[0], e) < 1e-6, || format!("{} vs {e}", s[0]))
        }),
        case("shell_increasing_in_mu", |fault| {
            for (n, kappa) in [(3, 1.0), (4, 0.5)] {
                let s = shell(n, kappa, 2.0, vec![0.0, 1.0, 2.0, 5.0], 1024, fault)?;
                ensure(s.windows(2).all(|w| w[1] > w[0]), || format!("n = {n}: {s:?}"))?;
            }
            Ok(())
        }),
        case("shell_above_floor", |fault| {
            for n in [3, 4, 5] {
                for kappa in [0.5, 1.0] {
                    let floor = kappa * (n as f64 - 1.0) / 2f64.powi(n as i32 - 1);
                    for delta in [0.5, 2.0, 10.0] {
                        let s = shell(n, kappa, delta, vec![0.0, 0.5, 3.0], 512, fault)?;
                        ensure(s.iter().all(|&v| v >= floor), || format!("n {n}, kappa {kappa}, delta {delta}: {s:?}"))?;
                    }
                }
            }
            Ok(())
        }),
        case("shell_second_order", |fault| {
            let v: Vec<f64> = [256, 512, 1024]
                .iter()
                .map(|&g| shell(4, 0.5, 2.0, vec![0.0, 2.0], g, fault).map(|s| s[1]))
                .collect::<Result<_, _>>()?;
            let order = ((v[0] - v[1]) / (v[1] - v[2])).log2();
            ensure((1.8..=2.2).contains(&order), || format!("observed order {order}"))
        }),
    ]
}

fn bounds_cases() -> Vec<Case> {
    let num = Numerics::default();
    vec![
        case("cgh_consistency", move |_| {
            for n in [3, 4] {
                for a in log_grid(0.5, 1e4, 6) {
                    for lambda in [0.0, 1e-3, 0.3, 2.0, 50.0] {
                        let c = class(n, 0.7);
                        let lo = cgh_lower(&c, a, lambda, &num).map_err(e2s)?;
                        let up = cgh_upper(&c, a, lambda, &num).map_err(e2s)?;
                        ensure(lo.simple <= lo.quadratic && lo.quadratic <= up.value, || {
                            format!("n {n}, A {a}, lambda {lambda}: {lo:?} vs {}", up.value)
                        })?;
                        let s = lo.quadratic;
                        let back = s * s + lo.alpha * s;
                        ensure(lambda == 0.0 || rel(back, lambda) < 1e-12, || format!("solve-back {back} vs {lambda}"))?;
                    }
                }
            }
            Ok(())
        }),
        case("floor_matches_deep_collar", move |fault| {
            for n in [3, 4, 5] {
                for kappa in [0.5, 1.0] {
                    let f = stekdir_floor(&class(n, kappa), &num.quad).map_err(e2s)?;
                    let s = shell(n, kappa, 40.0, vec![0.0], 2048, fault)?;
                    ensure(f.sharper >= f.closed, || format!("{f:?}"))?;
                    ensure((f.sharper - s[0]).abs() < 1e-5, || format!("n {n}, kappa {kappa}: {} vs {}", f.sharper, s[0]))?;
                }
            }
            Ok(())
        }),
        case("volume_bound_arithmetic", |_| {
            let d = ManifoldDescriptor::new(3, 1.0, vec![2.0, 1.5], 10.0);
            let (sharp, coarse) = sigma1_lower_volume(&d, &ConstantTable::default()).map_err(e2s)?;
            ensure(rel(sharp.value, 7.8125e-5) < 1e-14 && coarse.value <= sharp.value, || {
                format!("{} {}", sharp.value, coarse.value)
            })
        }),
        case("glued_family_rate", move |_| {
            let d = ManifoldDescriptor::new(3, 1.0, vec![3.0, 2.0], 40.0);
            for j in [64, 128] {
                let a = glued_family_upper(&d, j, &num).map_err(e2s)?;
                let b = glued_family_upper(&d, 2 * j, &num).map_err(e2s)?;
                for r in [a.per_copy / b.per_copy, a.volume_form / b.volume_form] {
                    ensure((1.99..=2.01).contains(&r), || format!("j = {j}: ratio {r}"))?;
                }
                ensure(a.per_copy <= a.volume_form, || format!("{a:?}"))?;
            }
            Ok(())
        }),
        case("report_deterministic_and_consistent", |_| {
            let mut d = ManifoldDescriptor::new(4, 0.8, vec![12.0, 30.0], 400.0);
            d.laplace_eigs = Some(vec![0.0, 0.2, 0.9, 2.5]);
            let t = ConstantTable::default();
            let opts = ReportOptions::default();
            let a = assemble_report(&d, &t, &opts).map_err(e2s)?;
            let b = assemble_report(&d, &t, &opts).map_err(e2s)?;
            ensure(a == b, || "two runs differ".into())?;
            for k in 1..=4 {
                let get = |name: &str| {
                    a.items
                        .iter()
                        .find(|i| i.name == name && i.target == Target::Sigma(k))
                        .map(|i| i.value)
                };
                ensure(get("cgh_lower") <= get("cgh_upper"), || format!("k = {k}"))?;
            }
            Ok(())
        }),
    ]
}

fn cases(suite: Suite) -> Vec<(&'static str, Vec<Case>)> {
    match suite {
        Suite::Hypgeom => vec![("hypgeom", hypgeom_cases())],
        Suite::Tube => vec![("tube", tube_cases())],
        Suite::Sturm => vec![("sturm", sturm_cases())],
        Suite::Bounds => vec![("bounds", bounds_cases())],
        Suite::All => vec![
            ("hypgeom", hypgeom_cases()),
            ("tube", tube_cases()),
            ("sturm", sturm_cases()),
            ("bounds", bounds_cases()),
        ],
    }
}

/// Runs the selected suites, printing one line per property.
pub fn run_suite(suite: Suite, fault: Fault, out: &mut dyn Write) -> Outcome {
    let mut outcome = Outcome::default();
    for (suite_name, list) in cases(suite) {
        for c in list {
            let name = format!("{suite_name}/{}", c.name);
            let result = (c.run)(fault);
            let _ = match &result {
                Ok(()) => writeln!(out, "[PASS] {name}"),
                Err(msg) => writeln!(out, "[FAIL] {name}: {msg}"),
            };
            outcome.results.push((name, result));
        }
    }
    let total = outcome.results.len();
    let _ = writeln!(out, "{} passed, {} failed", total - outcome.failures(), outcome.failures());
    outcome
}
