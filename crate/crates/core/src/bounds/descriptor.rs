use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypgeom::PinchedClass;

/// Invariants of a compact manifold with totally geodesic boundary, as
/// supplied by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDescriptor {
    pub n: usize,
    pub kappa: f64,
    /// `(n-1)`-volume of each boundary component.
    pub boundary_volumes: Vec<f64>,
    /// `n`-volume of the manifold.
    #[serde(rename = "V")]
    pub total_volume: f64,
    /// Volume of the boundary-adjacent thin part together with the width
    /// tube of the boundary; defaults to `V`.
    #[serde(rename = "V1", default, skip_serializing_if = "Option::is_none")]
    pub collar_volume: Option<f64>,
    /// Genus of each boundary surface (`n = 3` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<Vec<usize>>,
    /// `k -> ell_k(boundary)`, the minimal length of a multicurve of simple
    /// closed geodesics cutting the boundary into `k + 1` pieces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<BTreeMap<String, f64>>,
    /// Laplace eigenvalues of the boundary; entry `i` is `lambda_{i+1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laplace_eigs: Option<Vec<f64>>,
}

impl ManifoldDescriptor {
    /// Minimal descriptor with only the mandatory fields.
    pub fn new(n: usize, kappa: f64, boundary_volumes: Vec<f64>, total_volume: f64) -> Self {
        Self {
            n,
            kappa,
            boundary_volumes,
            total_volume,
            collar_volume: None,
            genus: None,
            ell: None,
            laplace_eigs: None,
        }
    }

    pub fn class(&self) -> Result<PinchedClass> {
        PinchedClass::new(self.n, self.kappa)
    }

    /// Number of boundary components `b`.
    pub fn components(&self) -> usize {
        self.boundary_volumes.len()
    }

    /// `A`, the largest boundary-component volume.
    pub fn max_boundary_volume(&self) -> f64 {
        self.boundary_volumes.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `V1`, falling back to `V` when absent.
    pub fn effective_collar_volume(&self) -> f64 {
        self.collar_volume.unwrap_or(self.total_volume)
    }

    /// Largest boundary genus.
    pub fn max_genus(&self) -> Option<usize> {
        self.genus.as_ref().and_then(|g| g.iter().copied().max())
    }

    /// `ell_k` parsed from the string-keyed map, ascending in `k`.
    pub fn ell_entries(&self) -> Result<Vec<(usize, f64)>> {
        let Some(map) = &self.ell else {
            return Ok(Vec::new());
        };
        let mut out = Vec::with_capacity(map.len());
        for (key, &len) in map {
            let k: usize = key
                .parse()
                .map_err(|_| Error::Input(format!("ell key {key:?} is not a non-negative integer")))?;
            out.push((k, len));
        }
        out.sort_by_key(|e| e.0);
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        self.class().map_err(|e| Error::Input(e.to_string()))?;
        if self.boundary_volumes.is_empty() {
            return Err(Error::Input("boundary_volumes must list at least one component".into()));
        }
        if self.boundary_volumes.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Input("boundary volumes must be finite and > 0".into()));
        }
        if !(self.total_volume.is_finite() && self.total_volume > 0.0) {
            return Err(Error::Input(format!("V must be finite and > 0, got {}", self.total_volume)));
        }
        if let Some(v1) = self.collar_volume {
            if !(v1.is_finite() && v1 > 0.0) {
                return Err(Error::Input(format!("V1 must be finite and > 0, got {v1}")));
            }
            if v1 > self.total_volume {
                return Err(Error::Input(format!("V1 = {v1} exceeds V = {}", self.total_volume)));
            }
        }
        if let Some(genus) = &self.genus {
            if self.n != 3 {
                return Err(Error::Input("genus data applies only to n = 3".into()));
            }
            if genus.len() != self.components() {
                return Err(Error::Input(format!(
                    "genus lists {} entries for {} boundary components",
                    genus.len(),
                    self.components()
                )));
            }
            if genus.iter().any(|&g| g < 2) {
                return Err(Error::Input("boundary genus must be >= 2".into()));
            }
        }
        for (k, len) in self.ell_entries()? {
            if k == 0 {
                return Err(Error::Input("ell keys start at k = 1".into()));
            }
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::Input(format!("ell_{k} must be finite and > 0")));
            }
        }
        if let Some(eigs) = &self.laplace_eigs {
            if eigs.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(Error::Input("laplace_eigs must be finite and >= 0".into()));
            }
            if eigs.windows(2).any(|w| w[1] < w[0]) {
                return Err(Error::Input("laplace_eigs must be ascending".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_accessors() {
        let d = ManifoldDescriptor::new(4, 0.5, vec![2.0, 7.0, 3.0], 50.0);
        d.validate().unwrap();
        assert_eq!(d.components(), 3);
        assert_eq!(d.max_boundary_volume(), 7.0);
        assert_eq!(d.effective_collar_volume(), 50.0);
    }

    #[test]
    fn rejects_inconsistent_data() {
        let mut d = ManifoldDescriptor::new(3, 1.0, vec![2.0], 10.0);
        d.collar_volume = Some(11.0);
        assert!(d.validate().is_err());
        d.collar_volume = None;
        d.genus = Some(vec![2, 3]);
        assert!(d.validate().is_err());
        d.genus = Some(vec![1]);
        assert!(d.validate().is_err());
        d.genus = Some(vec![2]);
        d.ell = Some([("one".to_string(), 0.1)].into_iter().collect());
        assert!(d.validate().is_err());
        d.ell = None;
        d.laplace_eigs = Some(vec![1.0, 0.5]);
        assert!(d.validate().is_err());
        let empty = ManifoldDescriptor::new(3, 1.0, vec![], 10.0);
        assert!(empty.validate().is_err());
    }
}
