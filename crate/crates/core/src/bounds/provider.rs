use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    Rigorous,
    Placeholder,
}

/// A constant together with whether its value is proven or merely assumed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constant {
    pub value: f64,
    pub rigor: Rigor,
}

impl Constant {
    pub const PLACEHOLDER: Constant = Constant {
        value: 1.0,
        rigor: Rigor::Placeholder,
    };

    pub fn rigorous(value: f64) -> Self {
        Self {
            value,
            rigor: Rigor::Rigorous,
        }
    }

    pub fn is_placeholder(&self) -> bool {
        self.rigor == Rigor::Placeholder
    }
}

/// Source of the non-explicit constants the bounds depend on: Schoen's
/// Laplace gap constant, the Margulis constants, the Schoen–Wolpert–Yau
/// surface constants and the overall constants of the volume-type `sigma_1`
/// bounds.
pub trait ConstantSource {
    /// `lambda_1(Sigma) >= schoen / vol(Sigma)^2` for closed pinched `(n-1)`-manifolds.
    fn schoen(&self, n: usize, kappa: f64) -> Constant;
    fn margulis_mu(&self, n: usize) -> Constant;
    fn eta(&self, n: usize) -> Constant;
    /// Lower SWY constant: `lambda_k >= c(g) kappa^3 ell_k`.
    fn swy_lower(&self, genus: usize, kappa: f64) -> Constant;
    /// Upper SWY constant: `lambda_k <= c(g) ell_k`.
    fn swy_upper(&self, genus: usize) -> Constant;
    /// `lambda_{2g-2} >= c(g) kappa^2`.
    fn swy_top_lower(&self, genus: usize) -> Constant;
    /// `lambda_{2g-2} <= c(g)`.
    fn swy_top_upper(&self, genus: usize) -> Constant;
    /// Constant of `sigma_b >= C / A^{2 + 1/(kappa(n-2))}`.
    fn c_sigma_b(&self, n: usize, kappa: f64) -> Constant;
    /// Constant of the volume-type `sigma_1` lower bound.
    fn c_sigma1(&self, n: usize, kappa: f64) -> Constant;
    /// `vol(M) >= c vol(boundary)`.
    fn zeghib(&self, n: usize, kappa: f64) -> Constant;
}

/// Table of constants read from a provider file; absent entries are
/// placeholders equal to 1. Values do not vary with the arguments.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schoen: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margulis_mu: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swy_lower: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swy_upper: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swy_top_lower: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swy_top_upper: Option<Constant>,
    #[serde(default, alias = "c_thm12", skip_serializing_if = "Option::is_none")]
    pub c_sigma_b: Option<Constant>,
    #[serde(default, alias = "c_thm13", skip_serializing_if = "Option::is_none")]
    pub c_sigma1: Option<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeghib: Option<Constant>,
}

fn or_placeholder(c: Option<Constant>) -> Constant {
    c.unwrap_or(Constant::PLACEHOLDER)
}

impl ConstantTable {
    pub fn validate(&self) -> Result<()> {
        for (name, c) in self.entries() {
            if !(c.value.is_finite() && c.value > 0.0) {
                return Err(Error::Input(format!("constant {name} must be finite and > 0, got {}", c.value)));
            }
        }
        let mu = or_placeholder(self.margulis_mu).value;
        let eta = or_placeholder(self.eta).value;
        // The default placeholders (1, 1) violate eta < mu/2, so only check
        // when at least one of the pair was supplied.
        if (self.margulis_mu.is_some() || self.eta.is_some()) && !(eta < mu / 2.0) {
            return Err(Error::Input(format!("eta = {eta} must be < margulis_mu / 2 = {}", mu / 2.0)));
        }
        Ok(())
    }

    /// Supplied entries keyed by name.
    pub fn entries(&self) -> BTreeMap<&'static str, Constant> {
        [
            ("schoen", self.schoen),
            ("margulis_mu", self.margulis_mu),
            ("eta", self.eta),
            ("swy_lower", self.swy_lower),
            ("swy_upper", self.swy_upper),
            ("swy_top_lower", self.swy_top_lower),
            ("swy_top_upper", self.swy_top_upper),
            ("c_sigma_b", self.c_sigma_b),
            ("c_sigma1", self.c_sigma1),
            ("zeghib", self.zeghib),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|c| (k, c)))
        .collect()
    }
}

impl ConstantSource for ConstantTable {
    fn schoen(&self, _n: usize, _kappa: f64) -> Constant {
        or_placeholder(self.schoen)
    }
    fn margulis_mu(&self, _n: usize) -> Constant {
        or_placeholder(self.margulis_mu)
    }
    fn eta(&self, _n: usize) -> Constant {
        or_placeholder(self.eta)
    }
    fn swy_lower(&self, _genus: usize, _kappa: f64) -> Constant {
        or_placeholder(self.swy_lower)
    }
    fn swy_upper(&self, _genus: usize) -> Constant {
        or_placeholder(self.swy_upper)
    }
    fn swy_top_lower(&self, _genus: usize) -> Constant {
        or_placeholder(self.swy_top_lower)
    }
    fn swy_top_upper(&self, _genus: usize) -> Constant {
        or_placeholder(self.swy_top_upper)
    }
    fn c_sigma_b(&self, _n: usize, _kappa: f64) -> Constant {
        or_placeholder(self.c_sigma_b)
    }
    fn c_sigma1(&self, _n: usize, _kappa: f64) -> Constant {
        or_placeholder(self.c_sigma1)
    }
    fn zeghib(&self, _n: usize, _kappa: f64) -> Constant {
        or_placeholder(self.zeghib)
    }
}
