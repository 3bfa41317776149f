//! Finite-difference eigenvalue solvers for the two model problems:
//! Dirichlet eigenvalues of geodesic balls in a space form, and the
//! separable Steklov–Dirichlet problem on a constant-curvature collar.
//!
//! Both are discretized with second-order, flux-conservative differences on
//! uniform grids, and every reported value carries a Richardson estimate
//! from a second grid of half the resolution.

mod ball;
mod shell;
pub mod tridiag;

use serde::{Deserialize, Serialize};

pub use ball::{
    collar_steklov_upper, dirichlet_ball_full_spectrum, dirichlet_ball_spectrum, spherical_harmonic_dim,
    CollarUpper, RadialDirichletProblem,
};
pub use shell::{
    shell_sigma_mu0_closed_form, shell_steklov_dirichlet, shell_steklov_dirichlet_with, ShellEntry,
    ShellProblem, ShellSolution,
};

/// Default fine grid; the Richardson partner uses half as many points.
pub const DEFAULT_GRID_POINTS: usize = 2048;

/// Relative tolerance for treating two eigenvalues as one.
pub const DEDUP_REL_TOL: f64 = 1e-8;

/// Coarse/fine disagreement above which a value is flagged as unconverged.
pub(crate) const RICHARDSON_WARN_REL: f64 = 1e-2;

/// Fault switches for exercising the verification harness.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Flip the sign of the cross-section term in the collar ODE.
    FlipShellPotential,
}

/// One eigenvalue with its Richardson error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub value: f64,
    pub error_estimate: f64,
    /// False when the two grids disagree by more than 1%.
    pub converged: bool,
    /// Spherical-harmonic degree of the block the value came from.
    pub angular_index: Option<usize>,
}

/// Eigenvalues in ascending order, repeated according to multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lines: Vec<SpectralLine>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<f64> {
        self.lines.iter().map(|l| l.value).collect()
    }

    pub fn error_estimates(&self) -> Vec<f64> {
        self.lines.iter().map(|l| l.error_estimate).collect()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `lambda_k` with 1-based `k`.
    pub fn kth(&self, k: usize) -> Option<&SpectralLine> {
        k.checked_sub(1).and_then(|i| self.lines.get(i))
    }

    /// Distinct values with multiplicities, merging values within
    /// [`DEDUP_REL_TOL`] of each other.
    pub fn distinct(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for line in &self.lines {
            match out.last_mut() {
                Some((v, mult)) if (line.value - *v).abs() <= DEDUP_REL_TOL * v.abs().max(line.value.abs()) => {
                    *mult += 1
                }
                _ => out.push((line.value, 1)),
            }
        }
        out
    }

    pub fn all_converged(&self) -> bool {
        self.lines.iter().all(|l| l.converged)
    }
}

pub(crate) fn richardson_line(fine: f64, coarse: f64, h_fine: f64, h_coarse: f64) -> SpectralLine {
    let ratio = h_fine * h_fine / (h_coarse * h_coarse - h_fine * h_fine);
    let diff = (fine - coarse).abs();
    SpectralLine {
        value: fine,
        error_estimate: diff * ratio,
        converged: diff <= RICHARDSON_WARN_REL * fine.abs(),
        angular_index: None,
    }
}
