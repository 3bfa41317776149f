use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::provider::Constant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lower,
    Upper,
}

/// The eigenvalue a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// `sigma_k`, the `k`-th nonzero Steklov eigenvalue.
    Sigma(usize),
    /// First Steklov–Dirichlet eigenvalue of a collar.
    SteklovDirichlet,
}

impl Ord for Target {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Target::Sigma(a), Target::Sigma(b)) => a.cmp(b),
            (Target::Sigma(_), Target::SteklovDirichlet) => Ordering::Less,
            (Target::SteklovDirichlet, Target::Sigma(_)) => Ordering::Greater,
            (Target::SteklovDirichlet, Target::SteklovDirichlet) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Target {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Sigma(k) => write!(f, "sigma_{k}"),
            Target::SteklovDirichlet => f.write_str("sigma_D"),
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "sigma_D" {
            return Ok(Target::SteklovDirichlet);
        }
        s.strip_prefix("sigma_")
            .and_then(|k| k.parse().ok())
            .map(Target::Sigma)
            .ok_or_else(|| format!("unknown target {s:?}"))
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Target {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemRigor {
    /// Depends only on descriptor data and computed quantities.
    Explicit,
    /// Depends on at least one constant from the provider.
    ConstantDependent,
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundItem {
    pub name: String,
    pub kind: Kind,
    pub target: Target,
    pub value: f64,
    pub rigor: ItemRigor,
    /// Provider constants the value depends on.
    pub constants: Vec<String>,
    /// Subset of `constants` whose values are placeholders.
    pub placeholders: Vec<String>,
    pub assumptions: String,
    /// The inequality the value instantiates.
    pub basis: String,
    /// Intermediate quantities worth reporting (roll radius, alpha, ...).
    pub auxiliary: BTreeMap<String, f64>,
}

impl BoundItem {
    pub(crate) fn explicit(name: &str, kind: Kind, target: Target, value: f64, basis: &str) -> Self {
        Self {
            name: name.to_string(),
            kind,
            target,
            value,
            rigor: ItemRigor::Explicit,
            constants: Vec::new(),
            placeholders: Vec::new(),
            assumptions: String::new(),
            basis: basis.to_string(),
            auxiliary: BTreeMap::new(),
        }
    }

    pub(crate) fn depends_on(mut self, name: &str, c: Constant) -> Self {
        self.rigor = ItemRigor::ConstantDependent;
        self.constants.push(name.to_string());
        if c.is_placeholder() {
            self.placeholders.push(name.to_string());
        }
        self
    }

    pub(crate) fn assuming(mut self, text: &str) -> Self {
        self.assumptions = text.to_string();
        self
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.auxiliary.insert(key.to_string(), value);
        self
    }

    /// Report ordering key.
    pub fn sort_key(&self) -> (Target, Kind, &str) {
        (self.target, self.kind, self.name.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_order_and_text() {
        let mut t = vec![Target::SteklovDirichlet, Target::Sigma(3), Target::Sigma(1)];
        t.sort();
        assert_eq!(t, vec![Target::Sigma(1), Target::Sigma(3), Target::SteklovDirichlet]);
        for x in t {
            assert_eq!(x.to_string().parse::<Target>().unwrap(), x);
        }
        assert!("sigma_x".parse::<Target>().is_err());
    }

    #[test]
    fn placeholder_bookkeeping() {
        let item = BoundItem::explicit("x", Kind::Lower, Target::Sigma(1), 1.0, "")
            .depends_on("a", Constant::PLACEHOLDER)
            .depends_on("b", Constant::rigorous(2.0));
        assert_eq!(item.rigor, ItemRigor::ConstantDependent);
        assert_eq!(item.constants, vec!["a", "b"]);
        assert_eq!(item.placeholders, vec!["a"]);
    }
}
