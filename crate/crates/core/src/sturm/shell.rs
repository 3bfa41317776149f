use serde::{Deserialize, Serialize};

use super::{richardson_line, Fault, SpectralLine, Spectrum, DEFAULT_GRID_POINTS};
use crate::error::{domain, Result};
use crate::hypgeom::{sech_pow_integral, PinchedClass, QuadratureSpec, SECH_TAIL_CUT};

/// Steklov–Dirichlet problem on the collar `[0, delta] x Sigma` with metric
/// `dt^2 + cosh^2(kappa t) g_Sigma`: Steklov condition on `t = 0`, Dirichlet
/// on `t = delta`. Separating variables along the Laplace eigenfunctions of
/// `Sigma` (eigenvalues `mu`) leaves one ODE per `mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellProblem {
    pub class: PinchedClass,
    /// Collar depth; `f64::INFINITY` is capped at `40 / kappa`.
    pub delta: f64,
    /// Laplace eigenvalues of the cross-section, ascending, starting at 0.
    pub cross_section_eigenvalues: Vec<f64>,
    pub grid_points: usize,
}

impl ShellProblem {
    pub fn new(class: PinchedClass, delta: f64, cross_section_eigenvalues: Vec<f64>) -> Result<Self> {
        let p = Self {
            class,
            delta,
            cross_section_eigenvalues,
            grid_points: DEFAULT_GRID_POINTS,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.class.validate()?;
        if !(self.delta > 0.0) {
            return Err(domain(format!("collar depth must be > 0, got {}", self.delta)));
        }
        let mu = &self.cross_section_eigenvalues;
        if mu.first() != Some(&0.0) {
            return Err(domain("cross-section eigenvalues must start with mu_0 = 0"));
        }
        if mu.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(domain("cross-section eigenvalues must be finite and >= 0"));
        }
        if mu.windows(2).any(|w| w[1] < w[0]) {
            return Err(domain("cross-section eigenvalues must be sorted ascending"));
        }
        if self.grid_points < 16 {
            return Err(domain(format!("grid_points must be >= 16, got {}", self.grid_points)));
        }
        Ok(())
    }

    /// Depth actually used and whether it was capped.
    pub fn effective_delta(&self) -> (f64, bool) {
        let cap = SECH_TAIL_CUT / self.class.kappa;
        if self.delta > cap {
            (cap, true)
        } else {
            (self.delta, false)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellEntry {
    pub mu: f64,
    pub sigma: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellSolution {
    pub effective_delta: f64,
    /// The requested depth exceeded the cap and was truncated.
    pub truncated: bool,
    pub entries: Vec<ShellEntry>,
    /// First Steklov–Dirichlet eigenvalue, attained at `mu = 0`.
    pub sigma1_d: f64,
}

impl ShellSolution {
    /// Distinct Steklov values as a spectrum.
    pub fn spectrum(&self) -> Spectrum {
        let lines = self
            .entries
            .iter()
            .map(|e| SpectralLine {
                value: e.sigma,
                error_estimate: e.error_estimate,
                converged: e.converged,
                angular_index: None,
            })
            .collect();
        Spectrum { lines }
    }
}

/// Discrete Dirichlet-to-Neumann value at `t = 0` for
/// `(cosh^{n-1}(kt) T')' = mu cosh^{n-3}(kt) T`, `T(delta) = 0`, `T(0) = 1`.
///
/// Uniform nodes `t_i = i h`; fluxes use `p` at the half nodes. The returned
/// value equals the minimal discrete energy, so for `mu = 0` it is exactly
/// `1 / (midpoint rule for ∫ cosh^{-(n-1)})`.
fn steklov_value(class: &PinchedClass, delta: f64, mu: f64, n: usize, fault: Fault) -> f64 {
    let h = delta / n as f64;
    let k = class.kappa;
    let e = class.n as f64 - 1.0;
    let p = |t: f64| (k * t).cosh().powf(e);
    let q = |t: f64| (k * t).cosh().powf(e - 2.0);
    let mu = match fault {
        Fault::FlipShellPotential => -mu,
        Fault::None => mu,
    };

    // Unknowns T_1..T_{n-1}; row i: -p_{i-1/2} T_{i-1} + (p_{i-1/2} + p_{i+1/2} + mu q_i h^2) T_i - p_{i+1/2} T_{i+1} = 0
    let unknowns = n - 1;
    let half: Vec<f64> = (0..n).map(|i| p((i as f64 + 0.5) * h)).collect();
    let mut diag: Vec<f64> = (1..n)
        .map(|i| half[i - 1] + half[i] + mu * q(i as f64 * h) * h * h)
        .collect();
    let mut rhs = vec![0.0; unknowns];
    rhs[0] = half[0];

    // Thomas elimination; the sub- and super-diagonal of row i are -half[i].
    for i in 1..unknowns {
        let w = half[i] / diag[i - 1];
        diag[i] -= w * half[i];
        rhs[i] += w * rhs[i - 1];
    }
    let mut t = vec![0.0; unknowns];
    t[unknowns - 1] = rhs[unknowns - 1] / diag[unknowns - 1];
    for i in (0..unknowns - 1).rev() {
        t[i] = (rhs[i] + half[i + 1] * t[i + 1]) / diag[i];
    }
    half[0] * (1.0 - t[0]) / h + mu * q(0.0) * h / 2.0
}

/// Solves the collar problem for every cross-section eigenvalue.
pub fn shell_steklov_dirichlet(p: &ShellProblem) -> Result<ShellSolution> {
    shell_steklov_dirichlet_with(p, Fault::None)
}

#[doc(hidden)]
pub fn shell_steklov_dirichlet_with(p: &ShellProblem, fault: Fault) -> Result<ShellSolution> {
    p.validate()?;
    let (delta, truncated) = p.effective_delta();
    let fine_n = p.grid_points;
    let coarse_n = fine_n / 2;
    let (hf, hc) = (delta / fine_n as f64, delta / coarse_n as f64);
    let entries: Vec<ShellEntry> = p
        .cross_section_eigenvalues
        .iter()
        .map(|&mu| {
            let fine = steklov_value(&p.class, delta, mu, fine_n, fault);
            let coarse = steklov_value(&p.class, delta, mu, coarse_n, fault);
            let line = richardson_line(fine, coarse, hf, hc);
            ShellEntry {
                mu,
                sigma: fine,
                error_estimate: line.error_estimate,
                converged: line.converged,
            }
        })
        .collect();
    let sigma1_d = entries
        .iter()
        .map(|e| e.sigma)
        .fold(f64::INFINITY, f64::min);
    Ok(ShellSolution {
        effective_delta: delta,
        truncated,
        entries,
        sigma1_d,
    })
}

/// `[∫_0^delta cosh^{-(n-1)}(kappa t) dt]^{-1}`, the exact `mu = 0` value.
pub fn shell_sigma_mu0_closed_form(class: &PinchedClass, delta: f64, quad: &QuadratureSpec) -> Result<f64> {
    class.validate()?;
    if !(delta > 0.0) {
        return Err(domain(format!("collar depth must be > 0, got {delta}")));
    }
    Ok(1.0 / sech_pow_integral(class.n as f64 - 1.0, class.kappa, delta, quad)?)
}
