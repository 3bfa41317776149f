use serde::{Deserialize, Serialize};

use super::{
    cgh_lower, cgh_upper, collar_upper_item, glued_family_upper, sigma1_lower_volume, sigma_b_lower_schoen,
    sigma_b_lower_shape, sigma_k_dim3_swy, sigma_top_dim3_swy, stekdir_floor, BoundItem, ConstantSource,
    ManifoldDescriptor, Numerics,
};
use crate::error::Result;
use crate::hypgeom::{euclidean_ball_volume, hyperbolic_ball_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Note,
    Warning,
    /// A sanity check backed by rigorous constants failed.
    Flag,
    /// An evaluator failed; the item is missing from the report.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub level: Level,
    /// Item or check the message is about.
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn new(level: Level, subject: &str, message: impl Into<String>) -> Self {
        Self {
            level,
            subject: subject.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollarRequest {
    pub k: usize,
    pub epsilon: f64,
}

/// Which optional what-if entries to evaluate, and with what numerics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub numerics: Numerics,
    pub collar: Option<CollarRequest>,
    /// Arm length `j` of the glued family.
    pub glued_j: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Sorted by `(target, kind, name)`.
    pub items: Vec<BoundItem>,
    pub diagnostics: Vec<Diagnostic>,
}

struct Collector {
    items: Vec<BoundItem>,
    diagnostics: Vec<Diagnostic>,
}

impl Collector {
    fn take<T>(&mut self, subject: &str, r: Result<T>, into: impl FnOnce(T) -> Vec<BoundItem>) {
        match r {
            Ok(v) => self.items.extend(into(v)),
            Err(e) => self.diagnostics.push(Diagnostic::new(Level::Error, subject, e.to_string())),
        }
    }
}

/// Runs every evaluator that applies to `d`. Individual failures become
/// error diagnostics; only an invalid descriptor aborts.
pub fn assemble_report(d: &ManifoldDescriptor, provider: &dyn ConstantSource, opts: &ReportOptions) -> Result<BoundReport> {
    d.validate()?;
    let class = d.class()?;
    let num = &opts.numerics;
    let area = d.max_boundary_volume();
    let b = d.components();
    let mut out = Collector {
        items: Vec::new(),
        diagnostics: Vec::new(),
    };

    if let Some(eigs) = &d.laplace_eigs {
        for (i, &lambda) in eigs.iter().enumerate() {
            let k = i + 1;
            out.take("cgh_lower", cgh_lower(&class, area, lambda, num), |c| c.items(k).to_vec());
            out.take("cgh_upper", cgh_upper(&class, area, lambda, num), |c| vec![c.item(k)]);
        }
    }

    if class.n >= 4 {
        out.take("sigma_b_lower_schoen", sigma_b_lower_schoen(&class, b, area, provider, num), |i| vec![i]);
        out.take("sigma_b_lower_shape", sigma_b_lower_shape(&class, b, area, provider), |i| vec![i]);
    }

    if class.n == 3 && d.genus.is_some() {
        let g = d.max_genus().unwrap_or(0);
        for (k, _) in d.ell_entries()? {
            if k + 3 > 2 * g {
                out.diagnostics.push(Diagnostic::new(
                    Level::Note,
                    "swy",
                    format!("ell_{k} ignored: the short-geodesic bounds cover 1 <= k <= 2g-3 = {}", 2 * g - 3),
                ));
                continue;
            }
            out.take("swy", sigma_k_dim3_swy(d, k, provider, num), |(lo, hi)| vec![lo, hi]);
        }
        out.take("swy_top", sigma_top_dim3_swy(d, provider, num), |(lo, hi)| vec![lo, hi]);
    } else if d.ell.is_some() {
        out.diagnostics.push(Diagnostic::new(
            Level::Note,
            "swy",
            "ell given without n = 3 and genus; short-geodesic bounds skipped",
        ));
    }

    out.take("sigma1_lower_volume", sigma1_lower_volume(d, provider), |(a, b)| vec![a, b]);
    out.take("stekdir_floor", stekdir_floor(&class, &num.quad), |f| f.items().to_vec());

    if let Some(req) = opts.collar {
        out.take("collar_upper", collar_upper_item(class.n, req.k, req.epsilon, num), |i| vec![i]);
    }
    if let Some(j) = opts.glued_j {
        out.take("glued_family_upper", glued_family_upper(d, j, num), |g| g.items(b, j).to_vec());
    }

    sanity_checks(d, provider, &mut out.diagnostics, num);

    let mut items = out.items;
    items.sort_by(|a, c| a.sort_key().cmp(&c.sort_key()));
    Ok(BoundReport {
        items,
        diagnostics: out.diagnostics,
    })
}

fn sanity_checks(d: &ManifoldDescriptor, provider: &dyn ConstantSource, diags: &mut Vec<Diagnostic>, num: &Numerics) {
    let n = d.n;
    let tag = |placeholder: bool| if placeholder { " (placeholder constant)" } else { "" };

    if d.collar_volume.is_none() {
        diags.push(Diagnostic::new(Level::Note, "V1", "V1 not given; using the conservative default V1 = V"));
    }

    // A closed or bounded manifold contains an embedded ball of radius mu.
    let mu = provider.margulis_mu(n);
    if let Ok(omega) = euclidean_ball_volume(n) {
        let floor = omega * mu.value.powi(n as i32);
        if d.total_volume < floor {
            diags.push(Diagnostic::new(
                Level::Warning,
                "volume_floor",
                format!(
                    "V = {} is below omega_n mu^n = {floor}{}",
                    d.total_volume,
                    tag(mu.is_placeholder())
                ),
            ));
        }
    }

    let mu_b = provider.margulis_mu(n - 1);
    match hyperbolic_ball_volume(n - 1, d.kappa, mu_b.value, &num.quad) {
        Ok(floor) => {
            for (i, &a) in d.boundary_volumes.iter().enumerate() {
                if a < floor {
                    diags.push(Diagnostic::new(
                        Level::Warning,
                        "boundary_floor",
                        format!(
                            "boundary component {i} has volume {a} below V_(n-1,kappa)(mu) = {floor}{}",
                            tag(mu_b.is_placeholder())
                        ),
                    ));
                }
            }
        }
        Err(e) => diags.push(Diagnostic::new(Level::Error, "boundary_floor", e.to_string())),
    }

    let c = provider.zeghib(n, d.kappa);
    if !c.is_placeholder() {
        let total: f64 = d.boundary_volumes.iter().sum();
        if d.total_volume < c.value * total {
            diags.push(Diagnostic::new(
                Level::Flag,
                "zeghib",
                format!(
                    "V = {} violates vol(M) >= c vol(boundary) = {}; the descriptor is inconsistent",
                    d.total_volume,
                    c.value * total
                ),
            ));
        }
    }
}
