//! Steklov eigenvalue bounds assembled from a manifold descriptor.
//!
//! Every bound is built from the certified rolling radius (the width of the
//! largest boundary component), the Colbois–Girouard–Hassannezhad comparison
//! between Steklov and boundary Laplace eigenvalues, and — where a proof only
//! establishes existence — constants supplied by a [`ConstantSource`].
//! Constants that have not been supplied are placeholders equal to 1 and
//! every item says which ones it used.

mod descriptor;
mod item;
mod provider;
mod report;

pub use descriptor::ManifoldDescriptor;
pub use item::{BoundItem, ItemRigor, Kind, Target};
pub use provider::{Constant, ConstantSource, ConstantTable, Rigor};
pub use report::{assemble_report, BoundReport, CollarRequest, Diagnostic, Level, ReportOptions};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hypgeom::{sech_pow_integral, PinchedClass, QuadratureSpec, RootFindSpec};
use crate::sturm::{collar_steklov_upper, DEFAULT_GRID_POINTS};
use crate::tube::width;

/// Numerical settings shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Numerics {
    pub quad: QuadratureSpec,
    pub root: RootFindSpec,
    pub grid_points: usize,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            quad: QuadratureSpec::default(),
            root: RootFindSpec::default(),
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Laplace eigenvalue must be finite and >= 0, got {lambda}")))
    }
}

/// Certified lower bound for the rolling radius: the width of a boundary
/// component of volume `area`.
pub fn roll_lower(class: &PinchedClass, area: f64, num: &Numerics) -> Result<f64> {
    Ok(width(class, area, &num.quad, &num.root)?.width)
}

/// `alpha = 1 + 1/roll`.
pub fn cgh_alpha(roll: f64) -> f64 {
    1.0 + 1.0 / roll
}

/// `beta = 1/roll + n`.
pub fn cgh_beta(roll: f64, n: usize) -> f64 {
    1.0 / roll + n as f64
}

/// `lambda / (alpha + sqrt(lambda))`.
pub fn cgh_lower_simple(alpha: f64, lambda: f64) -> f64 {
    lambda / (alpha + lambda.sqrt())
}

/// Positive root of `s^2 + alpha s = lambda`, in cancellation-free form.
pub fn cgh_lower_quadratic(alpha: f64, lambda: f64) -> f64 {
    2.0 * lambda / (alpha + (alpha * alpha + 4.0 * lambda).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CghLower {
    pub roll: f64,
    pub alpha: f64,
    pub simple: f64,
    pub quadratic: f64,
}

impl CghLower {
    pub fn items(&self, k: usize) -> [BoundItem; 2] {
        let simple = BoundItem::explicit(
            "cgh_lower",
            Kind::Lower,
            Target::Sigma(k),
            self.simple,
            "sigma_k >= lambda_k / (alpha + sqrt(lambda_k)), alpha = 1 + 1/roll, roll >= width(A)",
        );
        let quadratic = BoundItem::explicit(
            "cgh_lower_quadratic",
            Kind::Lower,
            Target::Sigma(k),
            self.quadratic,
            "sigma_k >= 2 lambda_k / (alpha + sqrt(alpha^2 + 4 lambda_k)), from lambda_k <= sigma_k^2 + alpha sigma_k",
        );
        [simple, quadratic].map(|i| i.with("roll_lower", self.roll).with("alpha", self.alpha))
    }
}

/// Steklov lower bounds from a boundary Laplace eigenvalue.
pub fn cgh_lower(class: &PinchedClass, area: f64, lambda: f64, num: &Numerics) -> Result<CghLower> {
    check_lambda(lambda)?;
    let roll = roll_lower(class, area, num)?;
    let alpha = cgh_alpha(roll);
    Ok(CghLower {
        roll,
        alpha,
        simple: cgh_lower_simple(alpha, lambda),
        quadratic: cgh_lower_quadratic(alpha, lambda),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CghUpper {
    pub roll: f64,
    pub beta: f64,
    pub value: f64,
}

impl CghUpper {
    pub fn item(&self, k: usize) -> BoundItem {
        BoundItem::explicit(
            "cgh_upper",
            Kind::Upper,
            Target::Sigma(k),
            self.value,
            "sigma_k <= beta + sqrt(lambda_k), beta = 1/roll + n, roll >= width(A)",
        )
        .with("roll_lower", self.roll)
        .with("beta", self.beta)
    }
}

/// Steklov upper bound `beta + sqrt(lambda)`.
pub fn cgh_upper(class: &PinchedClass, area: f64, lambda: f64, num: &Numerics) -> Result<CghUpper> {
    check_lambda(lambda)?;
    let roll = roll_lower(class, area, num)?;
    let beta = cgh_beta(roll, class.n);
    Ok(CghUpper {
        roll,
        beta,
        value: beta + lambda.sqrt(),
    })
}

/// Lower bound on `sigma_b` (`b` boundary components, `n >= 4`) from
/// Schoen's estimate `lambda_1(Sigma) >= c / vol(Sigma)^2` on each
/// component, fed through [`cgh_lower`]. Decays like `A^{-2-1/(kappa(n-2))}`.
pub fn sigma_b_lower_schoen(
    class: &PinchedClass,
    b: usize,
    area: f64,
    provider: &dyn ConstantSource,
    num: &Numerics,
) -> Result<BoundItem> {
    class.validate()?;
    if class.n < 4 {
        return Err(Error::Scope(
            "the Schoen-type sigma_b bound needs n >= 4; for n = 3 supply genus and ell for the surface bounds".into(),
        ));
    }
    if b == 0 {
        return Err(domain("at least one boundary component is required"));
    }
    let c = provider.schoen(class.n - 1, class.kappa);
    let lambda = c.value / (area * area);
    let cgh = cgh_lower(class, area, lambda, num)?;
    Ok(BoundItem::explicit(
        "sigma_b_lower_schoen",
        Kind::Lower,
        Target::Sigma(b),
        cgh.simple,
        "sigma_b >= lambda_b/(alpha + sqrt(lambda_b)) with lambda_b = min_j lambda_1(Sigma_j) >= c/A^2",
    )
    .depends_on("schoen", c)
    .assuming("n >= 4; each boundary component is a closed manifold of the same pinching class")
    .with("lambda_lower", lambda)
    .with("roll_lower", cgh.roll)
    .with("alpha", cgh.alpha))
}

/// `C / A^{2 + 1/(kappa(n-2))}`, the shape of the Schoen-type bound with
/// its overall constant taken from the provider.
pub fn sigma_b_lower_shape(class: &PinchedClass, b: usize, area: f64, provider: &dyn ConstantSource) -> Result<BoundItem> {
    class.validate()?;
    if class.n < 4 {
        return Err(Error::Scope("the sigma_b shape bound needs n >= 4".into()));
    }
    if !(area > 0.0 && area.is_finite()) {
        return Err(domain(format!("boundary volume must be finite and > 0, got {area}")));
    }
    let c = provider.c_sigma_b(class.n, class.kappa);
    let exponent = 2.0 + 1.0 / class.decay_scale();
    let value = (c.value.ln() - exponent * area.ln()).exp();
    Ok(BoundItem::explicit(
        "sigma_b_lower_shape",
        Kind::Lower,
        Target::Sigma(b),
        value,
        "sigma_b >= C / A^{2 + 1/(kappa(n-2))}",
    )
    .depends_on("c_sigma_b", c)
    .assuming("n >= 4")
    .with("exponent", exponent))
}

fn swy_setup(d: &ManifoldDescriptor) -> Result<(PinchedClass, usize, f64)> {
    d.validate()?;
    let class = d.class()?;
    if class.n != 3 {
        return Err(Error::Scope(format!("the surface-boundary bounds need n = 3, got n = {}", class.n)));
    }
    let g = d
        .max_genus()
        .ok_or_else(|| Error::Input("the surface-boundary bounds need the boundary genus".into()))?;
    Ok((class, g, d.max_boundary_volume()))
}

/// Bounds on `sigma_k`, `1 <= k <= 2g - 3`, for 3-manifolds from the
/// short-geodesic estimates `c kappa^3 ell_k <= lambda_k <= c ell_k` on the
/// boundary surface (`g` the largest boundary genus).
pub fn sigma_k_dim3_swy(
    d: &ManifoldDescriptor,
    k: usize,
    provider: &dyn ConstantSource,
    num: &Numerics,
) -> Result<(BoundItem, BoundItem)> {
    let (class, g, area) = swy_setup(d)?;
    if k < 1 || k + 3 > 2 * g {
        return Err(Error::Scope(format!(
            "k = {k} outside 1..=2g-3 = 1..={} for genus {g}",
            (2 * g).saturating_sub(3)
        )));
    }
    let ell = d
        .ell_entries()?
        .into_iter()
        .find(|e| e.0 == k)
        .map(|e| e.1)
        .ok_or_else(|| Error::Input(format!("ell_{k} is missing from the descriptor")))?;
    let kappa = class.kappa;
    let cl = provider.swy_lower(g, kappa);
    let cu = provider.swy_upper(g);
    let lam_lo = cl.value * kappa.powi(3) * ell;
    let lam_hi = cu.value * ell;
    let lower = cgh_lower(&class, area, lam_lo, num)?;
    let upper = cgh_upper(&class, area, lam_hi, num)?;
    let assumptions = "n = 3; boundary surfaces of genus <= g; ell_k is the shortest multicurve cutting the boundary into k+1 pieces";
    let lo = BoundItem::explicit(
        "swy_lower",
        Kind::Lower,
        Target::Sigma(k),
        lower.simple,
        "sigma_k >= lambda/(alpha + sqrt(lambda)) with lambda_k >= c(g) kappa^3 ell_k",
    )
    .depends_on("swy_lower", cl)
    .assuming(assumptions)
    .with("ell", ell)
    .with("genus", g as f64)
    .with("lambda_lower", lam_lo)
    .with("alpha", lower.alpha);
    let hi = BoundItem::explicit(
        "swy_upper",
        Kind::Upper,
        Target::Sigma(k),
        upper.value,
        "sigma_k <= beta + sqrt(lambda) with lambda_k <= c(g) ell_k",
    )
    .depends_on("swy_upper", cu)
    .assuming(assumptions)
    .with("ell", ell)
    .with("genus", g as f64)
    .with("lambda_upper", lam_hi)
    .with("beta", upper.beta);
    Ok((lo, hi))
}

/// Bounds on `sigma_{2g-2}` for 3-manifolds from
/// `c kappa^2 <= lambda_{2g-2} <= c` on the boundary surface.
pub fn sigma_top_dim3_swy(
    d: &ManifoldDescriptor,
    provider: &dyn ConstantSource,
    num: &Numerics,
) -> Result<(BoundItem, BoundItem)> {
    let (class, g, area) = swy_setup(d)?;
    let k = 2 * g - 2;
    let cl = provider.swy_top_lower(g);
    let cu = provider.swy_top_upper(g);
    let lam_lo = cl.value * class.kappa * class.kappa;
    let lam_hi = cu.value;
    let lower = cgh_lower(&class, area, lam_lo, num)?;
    let upper = cgh_upper(&class, area, lam_hi, num)?;
    let assumptions = "n = 3; boundary surfaces of genus <= g";
    let lo = BoundItem::explicit(
        "swy_top_lower",
        Kind::Lower,
        Target::Sigma(k),
        lower.simple,
        "sigma_{2g-2} >= lambda/(alpha + sqrt(lambda)) with lambda_{2g-2} >= c(g) kappa^2",
    )
    .depends_on("swy_top_lower", cl)
    .assuming(assumptions)
    .with("genus", g as f64)
    .with("alpha", lower.alpha);
    let hi = BoundItem::explicit(
        "swy_top_upper",
        Kind::Upper,
        Target::Sigma(k),
        upper.value,
        "sigma_{2g-2} <= beta + sqrt(lambda) with lambda_{2g-2} <= c(g)",
    )
    .depends_on("swy_top_upper", cu)
    .assuming(assumptions)
    .with("genus", g as f64)
    .with("beta", upper.beta);
    Ok((lo, hi))
}

/// Volume-type lower bounds on `sigma_1`:
/// `c / (b A^{2n/(kappa(n-2))} V V1)` and the weaker `c / (b A^{...} V^2)`.
pub fn sigma1_lower_volume(d: &ManifoldDescriptor, provider: &dyn ConstantSource) -> Result<(BoundItem, BoundItem)> {
    d.validate()?;
    let class = d.class()?;
    let c = provider.c_sigma1(class.n, class.kappa);
    let b = d.components() as f64;
    let area = d.max_boundary_volume();
    let v = d.total_volume;
    let v1 = d.effective_collar_volume();
    let exponent = 2.0 * class.n as f64 / class.decay_scale();
    let common = c.value.ln() - b.ln() - exponent * area.ln();
    let mut assumptions = String::from("boundary totally geodesic");
    if d.collar_volume.is_none() {
        assumptions.push_str("; V1 absent, conservative default V1 = V");
    }
    let sharp = BoundItem::explicit(
        "sigma1_lower_volume",
        Kind::Lower,
        Target::Sigma(1),
        (common - v.ln() - v1.ln()).exp(),
        "sigma_1 >= c / (b A^{2n/(kappa(n-2))} V V1)",
    )
    .depends_on("c_sigma1", c)
    .assuming(&assumptions)
    .with("V1", v1)
    .with("exponent", exponent);
    let coarse = BoundItem::explicit(
        "sigma1_lower_volume_sq",
        Kind::Lower,
        Target::Sigma(1),
        (common - 2.0 * v.ln()).exp(),
        "sigma_1 >= c / (b A^{2n/(kappa(n-2))} V^2)",
    )
    .depends_on("c_sigma1", c)
    .assuming("boundary totally geodesic")
    .with("exponent", exponent);
    Ok((sharp, coarse))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StekDirFloor {
    /// `kappa (n-1) / 2^{n-1}`.
    pub closed: f64,
    /// `[∫_0^∞ sech^{n-1}(kappa t) dt]^{-1}`.
    pub sharper: f64,
}

impl StekDirFloor {
    pub fn items(&self) -> [BoundItem; 2] {
        let assumptions = "collar [0, delta) x Sigma with metric dt^2 + cosh^2(kappa t) g_Sigma, any depth delta";
        [
            BoundItem::explicit(
                "stekdir_floor",
                Kind::Lower,
                Target::SteklovDirichlet,
                self.closed,
                "sigma_1^D >= kappa (n-1) / 2^{n-1}",
            )
            .assuming(assumptions),
            BoundItem::explicit(
                "stekdir_floor_integral",
                Kind::Lower,
                Target::SteklovDirichlet,
                self.sharper,
                "sigma_1^D >= 1 / ∫_0^∞ cosh^{-(n-1)}(kappa t) dt",
            )
            .assuming(assumptions),
        ]
    }
}

/// Depth-independent floor for the first Steklov–Dirichlet eigenvalue of
/// a pinched collar.
pub fn stekdir_floor(class: &PinchedClass, quad: &QuadratureSpec) -> Result<StekDirFloor> {
    class.validate()?;
    let n1 = class.n as f64 - 1.0;
    let closed = class.kappa * n1 / 2f64.powf(n1);
    let sharper = 1.0 / sech_pow_integral(n1, class.kappa, f64::INFINITY, quad)?;
    Ok(StekDirFloor { closed, sharper })
}

/// Test-function upper bounds for the glued family `M_j`: a copy of `M`
/// with `b` arms, each a chain of `j` doubled blocks, attached along the
/// boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GluedFamilyUpper {
    /// `V / (j w^2 A)`.
    pub per_copy: f64,
    /// `(2b + 1) V^2 / (w^2 A vol(M_j))`.
    pub volume_form: f64,
    /// Copies of `M` in `M_j`: `1 + 2bj`.
    pub copies: usize,
    /// `vol(M_j) = copies * V`.
    pub volume: f64,
    /// Certified distance between the core and the far boundary: `2 j w`.
    pub separation: f64,
    pub width: f64,
}

impl GluedFamilyUpper {
    pub fn items(&self, b: usize, j: usize) -> [BoundItem; 2] {
        let assumptions = format!(
            "what-if: evaluated on the glued manifold M_{j} built from {} copies of M (b = {b}), not on M itself",
            self.copies
        );
        let tag = |item: BoundItem| {
            item.assuming(&assumptions)
                .with("j", j as f64)
                .with("copies", self.copies as f64)
                .with("volume", self.volume)
                .with("separation", self.separation)
                .with("width", self.width)
        };
        [
            tag(BoundItem::explicit(
                "glued_family_upper",
                Kind::Upper,
                Target::Sigma(b - 1),
                self.per_copy,
                "sigma_{b-1}(M_j) <= V / (j w^2 A), test functions constant on the core and linear along each arm",
            )),
            tag(BoundItem::explicit(
                "glued_family_upper_volume",
                Kind::Upper,
                Target::Sigma(b - 1),
                self.volume_form,
                "sigma_{b-1}(M_j) <= (2b+1) V^2 / (w^2 A vol(M_j)), using vol(M_j) = (1 + 2bj) V <= (2b+1) j V",
            )),
        ]
    }
}

pub fn glued_family_upper(d: &ManifoldDescriptor, j: usize, num: &Numerics) -> Result<GluedFamilyUpper> {
    d.validate()?;
    let b = d.components();
    if b < 2 {
        return Err(Error::Scope("the glued family needs b >= 2 boundary components".into()));
    }
    if j < 1 {
        return Err(domain("j must be >= 1"));
    }
    let class = d.class()?;
    let area = d.max_boundary_volume();
    let v = d.total_volume;
    let w = roll_lower(&class, area, num)?;
    let copies = 1 + 2 * b * j;
    let volume = copies as f64 * v;
    let denom = w * w * area;
    Ok(GluedFamilyUpper {
        per_copy: v / (j as f64 * denom),
        volume_form: (2 * b + 1) as f64 * v * v / (denom * volume),
        copies,
        volume,
        separation: 2.0 * j as f64 * w,
        width: w,
    })
}

/// Test-function upper bound on `sigma_k` for a manifold containing an
/// orthogonal arc of length `epsilon` with an embedded collar of radius 1.
pub fn collar_upper_item(n: usize, k: usize, epsilon: f64, num: &Numerics) -> Result<BoundItem> {
    let c = collar_steklov_upper(n, k, epsilon, num.grid_points)?;
    Ok(BoundItem::explicit(
        "collar_upper",
        Kind::Upper,
        Target::Sigma(k),
        c.value,
        "sigma_k <= (cosh 1 / 2) lambda_{k+1}^D(B_{H^{n-1}}(1)) epsilon",
    )
    .assuming("what-if: M contains a geodesic arc of length epsilon orthogonal to the boundary at both ends with a unit-radius collar")
    .with("epsilon", epsilon)
    .with("ball_eigenvalue", c.ball_eigenvalue)
    .with("ball_error_estimate", c.ball_error_estimate))
}
