//! The monomial, cm and bb graded bases, the torus quadrature behind the bb
//! inner product, and exact coset algebra for cores and compliance.

mod bb;
mod cm;
mod family;
mod quadrature;

use serde::{Deserialize, Serialize};

use crate::polyring::{Coeff, ExactPoly, Polynomial};
use crate::variety::Variety;

pub use bb::{bb_basis, bb_structured, orthonormalize};
pub use cm::{cm_basis, cm_generators, verify_cm_products, CmGenerators, CmReport, ProductCheck};
pub use family::{
    bb_family, check_compliant, cm_family, family_difference, find_core, monomial_family, scaled_monomial_family,
    BasisFamily, ComplianceVerdict, CoreDescriptor, CoreResult, Coset,
};
pub use quadrature::{
    default_nodes, gram_matrix, inner_product, torus_quadrature, torus_quadrature_with_offset, QuadratureSpec,
    GRID_OFFSET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Monomial,
    Cm,
    Bb,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::Monomial => "monomial",
            BasisKind::Cm => "cm",
            BasisKind::Bb => "bb",
        }
    }
}

/// Basis elements grouped by degree: `slices[j]` holds the degree-`j` part.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis<C: Coeff> {
    pub kind: BasisKind,
    pub slices: Vec<Vec<Polynomial<C>>>,
}

/// Text export: one list of polynomial strings per degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisExport {
    pub kind: BasisKind,
    pub degrees: Vec<Vec<String>>,
}

impl<C: Coeff> GradedBasis<C> {
    /// Top degree held.
    pub fn max_degree(&self) -> usize {
        self.slices.len().saturating_sub(1)
    }

    /// Elements of degree at most `k`, low degrees first.
    pub fn upto(&self, k: usize) -> Vec<&Polynomial<C>> {
        self.slices.iter().take(k + 1).flatten().collect()
    }

    pub fn len_upto(&self, k: usize) -> usize {
        self.slices.iter().take(k + 1).map(Vec::len).sum()
    }

    /// Sum of element degrees up to `k`.
    pub fn degree_sum(&self, k: usize) -> u64 {
        self.slices
            .iter()
            .take(k + 1)
            .enumerate()
            .map(|(j, s)| (j * s.len()) as u64)
            .sum()
    }

    pub fn to_float(&self) -> GradedBasis<num_complex::Complex64> {
        GradedBasis {
            kind: self.kind,
            slices: self
                .slices
                .iter()
                .map(|s| s.iter().map(|p| p.to_float()).collect())
                .collect(),
        }
    }

    pub fn export(&self) -> BasisExport {
        BasisExport {
            kind: self.kind,
            degrees: self
                .slices
                .iter()
                .map(|s| s.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    fn from_elements(kind: BasisKind, k: usize, elems: Vec<Polynomial<C>>) -> Self {
        let mut slices: Vec<Vec<Polynomial<C>>> = vec![Vec::new(); k + 1];
        for e in elems {
            let d = e.degree().unwrap_or(0) as usize;
            if d <= k {
                slices[d].push(e);
            }
        }
        for s in &mut slices {
            // stable: ties keep construction order
            s.sort_by(|a, b| a.leading_term().unwrap().mono.cmp(&b.leading_term().unwrap().mono));
        }
        GradedBasis { kind, slices }
    }
}

/// Standard monomials of degree at most `k`.
pub fn monomial_graded(var: &Variety, k: usize) -> GradedBasis<crate::polyring::Exact> {
    let l = var.layout();
    let elems: Vec<ExactPoly> = var
        .monomial_basis(k as u32)
        .into_iter()
        .map(|m| Polynomial::monomial(l, m, crate::polyring::Exact::from_i64(1)))
        .collect();
    GradedBasis::from_elements(BasisKind::Monomial, k, elems)
}

/// Float view of the standard monomials.
pub fn monomial_graded_float(var: &Variety, k: usize) -> GradedBasis<num_complex::Complex64> {
    monomial_graded(var, k).to_float()
}
