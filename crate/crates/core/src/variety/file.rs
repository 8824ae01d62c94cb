//! Variety files (TOML).
//!
//! ```toml
//! M = 1
//! N = 2
//! generators = ["y1^2 - x1^2 - 1"]
//! d = 2                                   # optional
//! v_polys = ["sqrt(1/2)*(y1 - x1)", ...]  # optional
//!
//! [[families]]
//! name = "cm"
//! finite = ["1"]
//! [[families.cosets]]
//! base = "sqrt(1/2)*(y1 - x1)"
//! vars = ["x1"]
//! label = "v1"
//! ```

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::polyring::{parse_exact, Exact, ExactPoly, Layout};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarietyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_polys: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySpec>,
}

/// A family `finite ∪ ⋃ base·M[c_v x_v]` in text form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    #[serde(default)]
    pub finite: Vec<String>,
    #[serde(default)]
    pub cosets: Vec<CosetSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetSpec {
    pub base: String,
    /// Variable names of the free monomial factor.
    #[serde(default)]
    pub vars: Vec<String>,
    /// Constant scale per variable (defaults to 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl VarietyFile {
    pub fn from_toml(s: &str) -> Result<Self> {
        let f: VarietyFile = toml::from_str(s).map_err(|e| Error::Input(format!("variety file: {e}")))?;
        if f.m == 0 || f.m > f.n {
            return Err(Error::Input(format!("need 1 <= M <= N, got M = {}, N = {}", f.m, f.n)));
        }
        Ok(f)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("variety file serializes")
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.m, self.n - self.m)
    }

    pub fn parse(&self, s: &str) -> Result<ExactPoly> {
        parse_exact(s, self.layout())
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let gens = self
            .generators
            .iter()
            .map(|s| self.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let mut all = gens.clone();
        if let Some(v) = self.v_polys()? {
            all.extend(v);
        }
        check_radicands(&all)?;
        Ok(Presentation::new(self.layout(), gens, self.d))
    }

    pub fn v_polys(&self) -> Result<Option<Vec<ExactPoly>>> {
        self.v_polys
            .as_ref()
            .map(|v| v.iter().map(|s| self.parse(s)).collect())
            .transpose()
    }

    pub fn family(&self, name: &str) -> Option<&FamilySpec> {
        self.families.iter().find(|f| f.name == name)
    }
}

/// All coefficients must share one square-root radicand.
pub fn check_radicands(polys: &[ExactPoly]) -> Result<()> {
    let coeffs: Vec<&Exact> = polys.iter().flat_map(|p| p.terms().iter().map(|t| &t.coeff)).collect();
    Exact::common_radicand(coeffs)
        .map(|_| ())
        .ok_or_else(|| Error::Unsupported("coefficients involve square roots of different radicands".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_validation() {
        let src = "M = 1\nN = 2\ngenerators = [\"y1^2 - x1^2 - 1\"]\n";
        let f = VarietyFile::from_toml(src).unwrap();
        assert_eq!(VarietyFile::from_toml(&f.to_toml()).unwrap(), f);
        assert!(f.presentation().unwrap().validate_noether().valid);
        assert!(VarietyFile::from_toml("M = 3\nN = 2\ngenerators = []\n").is_err());
        assert!(VarietyFile::from_toml("M = 1\nN = 2\n").is_err());
    }

    #[test]
    fn mixed_radicands_rejected() {
        let src = "M = 1\nN = 2\ngenerators = [\"y1^2 - x1^2 - 1\"]\nv_polys = [\"sqrt(2)*y1\", \"sqrt(3)*y1\"]\n";
        let f = VarietyFile::from_toml(src).unwrap();
        assert!(matches!(f.presentation(), Err(Error::Unsupported(_))));
    }
}
