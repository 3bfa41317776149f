//! Reference computations that share no code with the library: power
//! series, exact Gamma ratios, and RK4 shooting.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `J_0(x)` from its power series (accurate for `x` up to ~20).
pub fn bessel_j0(x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Plain bisection on a sign change.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// First positive zero of `J_0`.
pub fn j0_first_zero() -> f64 {
    bisect(bessel_j0, 2.0, 3.0)
}

/// `Gamma(k/2)` for a positive integer `k`.
pub fn gamma_half(k: u32) -> f64 {
    let (mut g, mut x) = if k.is_multiple_of(2) { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while x + 0.5 < k as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// `∫_0^∞ sech^p(kappa t) dt = sqrt(pi) Gamma(p/2) / (2 Gamma((p+1)/2)) / kappa`.
pub fn sech_integral_exact(p: u32, kappa: f64) -> f64 {
    PI.sqrt() * gamma_half(p) / (2.0 * gamma_half(p + 1)) / kappa
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `vol(S^{m-1})` from the Gamma function.
pub fn sphere_area(m: u32) -> f64 {
    2.0 * PI.powf(m as f64 / 2.0) / gamma_half(m)
}

/// Geodesic ball volume in `H^m(-kappa^2)` by expanding
/// `sinh^{m-1}` into exponentials and integrating each term exactly.
/// Loses digits to cancellation for `kappa r << 1`.
pub fn ball_volume_exponential_sum(m: u32, kappa: f64, r: f64) -> f64 {
    let e = m - 1;
    let mut sum = 0.0;
    for j in 0..=e {
        let c = binom(e, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
        let rate = (e as f64 - 2.0 * j as f64) * kappa;
        let integral = if rate == 0.0 { r } else { (rate * r).exp_m1() / rate };
        sum += c * integral;
    }
    sphere_area(m) * sum / (2.0 * kappa).powi(e as i32)
}

/// Width for `n = 3` in closed form: `V_2(rho) = 2 pi (cosh(kappa rho) - 1)/kappa^2`,
/// `w = log coth(rho/2) / 2`, in forms free of cancellation.
pub fn width_n3(kappa: f64, area: f64) -> f64 {
    // acosh(1 + x) = log1p(x + sqrt(x (2 + x))), exact for small x
    let x = area * kappa * kappa / (2.0 * PI);
    let rho = (x + (x * (2.0 + x)).sqrt()).ln_1p() / kappa;
    // log coth(rho/2) = log1p(2 / (e^rho - 1)), exact for large rho
    0.5 * (2.0 / rho.exp_m1()).ln_1p()
}

fn rk4<const N: usize>(f: &impl Fn(f64, [f64; N]) -> [f64; N], t: f64, y: [f64; N], h: f64) -> [f64; N] {
    let add = |a: [f64; N], b: [f64; N], s: f64| {
        let mut o = a;
        for i in 0..N {
            o[i] += s * b[i];
        }
        o
    };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, add(y, k1, h / 2.0));
    let k3 = f(t + h / 2.0, add(y, k2, h / 2.0));
    let k4 = f(t + h, add(y, k3, h));
    let mut o = y;
    for i in 0..N {
        o[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    o
}

/// Number of sign changes in `(0, R)` of the regular solution of the
/// radial equation for degree `l`, integrated in `s = ln r` so that the
/// singular point sits at `s = -∞`. Equals the number of eigenvalues of the
/// block below `lambda`.
pub fn radial_nodes(m: u32, kappa: f64, radius: f64, l: u32, lambda: f64, steps: usize) -> usize {
    let lf = l as f64;
    let cent = lf * (lf + m as f64 - 2.0) * kappa * kappa;
    // With r = e^s the equation becomes u'' - u' + P u' - Q u + lambda r^2 u = 0,
    // P = (m-1) x coth x, Q = cent r^2 / sinh^2 x, x = kappa r. Substituting
    // u = e^{ls} v makes v -> const the regular solution at s = -inf.
    let coef = |s: f64| {
        let r = s.exp();
        let x = kappa * r;
        let xcoth = if x < 1e-4 { 1.0 + x * x / 3.0 } else { x / x.tanh() };
        let p = (m as f64 - 1.0) * xcoth;
        let q = if x < 1e-4 {
            lf * (lf + m as f64 - 2.0) * (1.0 - x * x / 3.0)
        } else {
            cent * r * r / (x.sinh() * x.sinh())
        };
        (p, q, r * r)
    };
    let rhs = |s: f64, y: [f64; 2]| {
        let (p, q, r2) = coef(s);
        let (v, dv) = (y[0], y[1]);
        let ddv = -(2.0 * lf - 1.0 + p) * dv - (lf * lf - lf + lf * p - q + lambda * r2) * v;
        [dv, ddv]
    };
    let s0 = (radius * 1e-7).ln();
    let s1 = radius.ln();
    let h = (s1 - s0) / steps as f64;
    let mut y = [1.0, 0.0];
    let mut nodes = 0;
    let mut s = s0;
    for _ in 0..steps {
        let next = rk4(&rhs, s, y, h);
        if (next[0] < 0.0) != (y[0] < 0.0) {
            nodes += 1;
        }
        y = next;
        s += h;
    }
    nodes
}

/// The `j`-th (1-based) Dirichlet eigenvalue of block `l` by bisection on
/// the node count.
pub fn radial_eigenvalue(m: u32, kappa: f64, radius: f64, l: u32, j: usize, hi: f64) -> f64 {
    let steps = 20_000;
    let (mut a, mut b) = (0.0, hi);
    assert!(radial_nodes(m, kappa, radius, l, b, steps) >= j, "upper guess too small");
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if radial_nodes(m, kappa, radius, l, mid, steps) >= j {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}

/// Steklov value of the collar ODE `(cosh^{n-1}(kt) T')' = mu cosh^{n-3}(kt) T`
/// with `T(delta) = 0`, by integrating backwards from `delta` with RK4.
pub fn collar_sigma_shooting(n: u32, kappa: f64, delta: f64, mu: f64, steps: usize) -> f64 {
    let e = n as f64 - 1.0;
    // state (T, F) with F = cosh^{n-1} T'
    let rhs = |t: f64, y: [f64; 2]| {
        let c = (kappa * t).cosh();
        [y[1] / c.powf(e), mu * c.powf(e - 2.0) * y[0]]
    };
    let h = -delta / steps as f64;
    let mut y = [0.0, -1.0];
    let mut t = delta;
    for _ in 0..steps {
        y = rk4(&rhs, t, y, h);
        t += h;
    }
    // outward normal at t = 0 is -d/dt; cosh(0) = 1
    -y[1] / y[0]
}
