use serde::{Deserialize, Serialize};

use super::tridiag::SymTridiagonal;
use super::{richardson_line, Spectrum, DEFAULT_GRID_POINTS};
use crate::error::{domain, Error, Result};

/// Radial Dirichlet problem on the geodesic ball of radius `radius` in the
/// `m`-dimensional space form of curvature `-kappa^2`, restricted to
/// spherical harmonics of degree `angular_index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialDirichletProblem {
    pub m: usize,
    pub kappa: f64,
    pub radius: f64,
    pub angular_index: usize,
    pub grid_points: usize,
}

impl RadialDirichletProblem {
    pub fn new(m: usize, kappa: f64, radius: f64, angular_index: usize) -> Result<Self> {
        let p = Self {
            m,
            kappa,
            radius,
            angular_index,
            grid_points: DEFAULT_GRID_POINTS,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(domain(format!("ball dimension must be >= 2, got {}", self.m)));
        }
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(domain(format!("kappa must be finite and > 0, got {}", self.kappa)));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(domain(format!("radius must be finite and > 0, got {}", self.radius)));
        }
        if self.grid_points < 16 {
            return Err(domain(format!("grid_points must be >= 16, got {}", self.grid_points)));
        }
        Ok(())
    }

    // Shifted grid r_i = (i - 1/2) h, i = 1..=n, with r_{n+1} = R.
    fn step(&self, n: usize) -> f64 {
        self.radius / (n as f64 + 0.5)
    }

    /// `M^{-1/2} K M^{-1/2}` for `-(p u')' + V p u = lambda p u`, with
    /// `p = (sinh(kappa r)/kappa)^{m-1}` and `V = l(l+m-2) kappa^2 / sinh^2(kappa r)`.
    ///
    /// The flux through `r = 0` carries the factor `p(0) = 0`, which gives the
    /// regularity condition for every `l`.
    fn operator(&self, n: usize) -> SymTridiagonal {
        let h = self.step(n);
        let k = self.kappa;
        let e = (self.m - 1) as f64;
        // log p, normalized by log p(R) so large balls do not overflow
        let log_p = |r: f64| e * ((k * r).sinh() / k).ln();
        let log_ref = log_p(self.radius);
        let p = |r: f64| if r <= 0.0 { 0.0 } else { (log_p(r) - log_ref).exp() };
        let l = self.angular_index as f64;
        let centrifugal = l * (l + self.m as f64 - 2.0) * k * k;
        let h2 = h * h;

        let nodes: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) * h).collect();
        let weight: Vec<f64> = nodes.iter().map(|&r| p(r)).collect();
        let flux: Vec<f64> = (0..=n).map(|i| p(i as f64 * h)).collect();

        let diag = (0..n)
            .map(|i| {
                let s = (k * nodes[i]).sinh();
                (flux[i] + flux[i + 1]) / (h2 * weight[i]) + centrifugal / (s * s)
            })
            .collect();
        let off = (0..n - 1)
            .map(|i| -flux[i + 1] / (h2 * (weight[i] * weight[i + 1]).sqrt()))
            .collect();
        SymTridiagonal::new(diag, off)
    }
}

fn check_resolution(k_max: usize, points: usize) -> Result<()> {
    if k_max == 0 {
        return Err(domain("k_max must be >= 1"));
    }
    // need several grid points per half-wavelength on the coarse grid
    if 8 * k_max > points {
        return Err(Error::Resolution(format!(
            "{points} coarse grid points cannot resolve {k_max} eigenvalues; use at least {} grid points",
            16 * k_max
        )));
    }
    Ok(())
}

/// Lowest `k_max` eigenvalues of a single angular block.
pub fn dirichlet_ball_spectrum(p: &RadialDirichletProblem, k_max: usize) -> Result<Spectrum> {
    p.validate()?;
    let fine_n = p.grid_points;
    let coarse_n = fine_n / 2;
    check_resolution(k_max, coarse_n)?;
    let fine = p.operator(fine_n).lowest(k_max);
    let coarse = p.operator(coarse_n).lowest(k_max);
    let (hf, hc) = (p.step(fine_n), p.step(coarse_n));
    let lines = fine
        .iter()
        .zip(&coarse)
        .map(|(&f, &c)| {
            let mut line = richardson_line(f, c, hf, hc);
            line.angular_index = Some(p.angular_index);
            line
        })
        .collect();
    Ok(Spectrum { lines })
}

/// Dimension of degree-`l` spherical harmonics on `S^{m-1}`.
pub fn spherical_harmonic_dim(m: usize, l: usize) -> usize {
    match (m, l) {
        (0 | 1, _) => 0,
        (_, 0) => 1,
        (2, _) => 2,
        _ => {
            // (2l+m-2)(l+m-3)! / (l!(m-2)!) = C(l+m-3, l) (2l+m-2) / (m-2)
            let mut binom: u128 = 1;
            for i in 0..l {
                binom = binom * (m as u128 - 2 + i as u128) / (i as u128 + 1);
            }
            (binom * (2 * l + m - 2) as u128 / (m as u128 - 2)) as usize
        }
    }
}

fn merged(m: usize, kappa: f64, radius: f64, k_max: usize, l_max: usize, grid_points: usize) -> Result<(Spectrum, f64)> {
    let mut lines = Vec::new();
    let mut top_block_ground = f64::NAN;
    for l in 0..=l_max {
        let problem = RadialDirichletProblem {
            m,
            kappa,
            radius,
            angular_index: l,
            grid_points,
        };
        let block = dirichlet_ball_spectrum(&problem, k_max)?;
        if l == l_max {
            top_block_ground = block.lines[0].value;
        }
        let mult = spherical_harmonic_dim(m, l);
        for line in block.lines {
            lines.extend(std::iter::repeat_n(line, mult));
        }
    }
    lines.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.angular_index.cmp(&b.angular_index))
    });
    lines.truncate(k_max);
    Ok((Spectrum { lines }, top_block_ground))
}

/// The `k_max` smallest Dirichlet eigenvalues of the ball, merging angular
/// blocks `l = 0..=l_max` with spherical-harmonic multiplicities.
pub fn dirichlet_ball_full_spectrum(
    m: usize,
    kappa: f64,
    radius: f64,
    k_max: usize,
    l_max: usize,
    grid_points: usize,
) -> Result<Spectrum> {
    let (spectrum, top) = merged(m, kappa, radius, k_max, l_max, grid_points)?;
    let last = spectrum.lines.last().map(|l| l.value).unwrap_or(f64::NAN);
    if top > last {
        return Ok(spectrum);
    }
    // Find the smallest sufficient cutoff to put in the message.
    let mut needed = l_max + 1;
    while needed <= l_max + 256 {
        let (s, t) = merged(m, kappa, radius, k_max, needed, grid_points)?;
        if t > s.lines.last().map(|l| l.value).unwrap_or(f64::NAN) {
            break;
        }
        needed += 1;
    }
    Err(Error::Resolution(format!(
        "l_max = {l_max} is too small: the l = {l_max} block reaches the {k_max} lowest eigenvalues; use l_max >= {needed}"
    )))
}

/// Test-function upper bound on `sigma_k` for a manifold containing a thin
/// collar of length `epsilon` around an orthogonal arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollarUpper {
    pub value: f64,
    /// `lambda_{k+1}` of the unit ball in `H^{n-1}`.
    pub ball_eigenvalue: f64,
    pub ball_error_estimate: f64,
}

/// `(cosh 1 / 2) lambda_{k+1}^D(B_{H^{n-1}}(1)) epsilon`.
pub fn collar_steklov_upper(n: usize, k: usize, epsilon: f64, grid_points: usize) -> Result<CollarUpper> {
    if n < 3 {
        return Err(domain(format!("dimension must be >= 3, got {n}")));
    }
    if k < 1 {
        return Err(domain("k must be >= 1"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(domain(format!("epsilon must be finite and > 0, got {epsilon}")));
    }
    let spectrum = dirichlet_ball_full_spectrum(n - 1, 1.0, 1.0, k + 1, k + 1, grid_points)?;
    let line = spectrum.kth(k + 1).expect("spectrum holds k+1 values");
    Ok(CollarUpper {
        value: 0.5 * 1f64.cosh() * line.value * epsilon,
        ball_eigenvalue: line.value,
        ball_error_estimate: line.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(spherical_harmonic_dim(2, 0), 1);
        assert_eq!(spherical_harmonic_dim(2, 5), 2);
        assert_eq!(spherical_harmonic_dim(3, 1), 3);
        assert_eq!(spherical_harmonic_dim(3, 2), 5);
        assert_eq!(spherical_harmonic_dim(4, 2), 9);
        // S^4: l=1 -> 5, l=2 -> 14
        assert_eq!(spherical_harmonic_dim(5, 1), 5);
        assert_eq!(spherical_harmonic_dim(5, 2), 14);
    }

    #[test]
    fn validation() {
        assert!(RadialDirichletProblem::new(1, 1.0, 1.0, 0).is_err());
        assert!(RadialDirichletProblem::new(2, 1.0, 0.0, 0).is_err());
        let mut p = RadialDirichletProblem::new(2, 1.0, 1.0, 0).unwrap();
        p.grid_points = 8;
        assert!(p.validate().is_err());
        p.grid_points = 64;
        assert!(matches!(dirichlet_ball_spectrum(&p, 10), Err(Error::Resolution(_))));
        assert!(dirichlet_ball_spectrum(&p, 0).is_err());
    }

    #[test]
    fn ground_state_is_radial() {
        let s = dirichlet_ball_full_spectrum(3, 1.0, 1.0, 5, 3, 512).unwrap();
        assert_eq!(s.lines[0].angular_index, Some(0));
        // next three come from the l = 1 block
        for line in &s.lines[1..4] {
            assert_eq!(line.angular_index, Some(1));
        }
        let d = s.distinct();
        assert_eq!(d[1].1, 3);
    }

    #[test]
    fn insufficient_l_max_names_the_fix() {
        let err = dirichlet_ball_full_spectrum(2, 1.0, 1.0, 1, 0, 256).unwrap_err();
        match err {
            Error::Resolution(msg) => assert!(msg.contains("l_max >= 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let err = dirichlet_ball_full_spectrum(2, 1.0, 1.0, 6, 1, 256).unwrap_err();
        assert!(matches!(err, Error::Resolution(_)));
    }

    #[test]
    fn collar_bound_is_linear() {
        let a = collar_steklov_upper(3, 1, 0.01, 256).unwrap();
        let b = collar_steklov_upper(3, 1, 0.02, 256).unwrap();
        assert_eq!(b.value, 2.0 * a.value);
        assert!(collar_steklov_upper(2, 1, 0.01, 256).is_err());
        assert!(collar_steklov_upper(3, 0, 0.01, 256).is_err());
        assert!(collar_steklov_upper(3, 1, 0.0, 256).is_err());
    }
}
