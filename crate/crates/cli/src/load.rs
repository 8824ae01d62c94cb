//! Variety files, bundled data and basis/family selection.

use std::path::Path;

use transdiam_core::bases::{
    bb_basis, bb_family, cm_basis, cm_family, cm_generators, default_nodes, monomial_family, monomial_graded,
    torus_quadrature, BasisFamily, CmGenerators, GradedBasis, QuadratureSpec,
};
use transdiam_core::variety::{Variety, VarietyFile};
use transdiam_core::vdm::{parse_points, Sampler};
use transdiam_core::{Complex64, Error, Result};

use crate::BasisArg;

pub const BUNDLED: [(&str, &str); 4] = [
    ("hyperbola.var", include_str!("../data/hyperbola.var")),
    ("cone2d.var", include_str!("../data/cone2d.var")),
    ("nondistinct.var", include_str!("../data/nondistinct.var")),
    ("cross-terms.var", include_str!("../data/cross-terms.var")),
];

/// Reads a variety file; names of bundled files work from any directory.
pub fn variety_file(spec: Option<&str>) -> Result<VarietyFile> {
    let spec = spec.ok_or_else(|| Error::Input("--variety is required".into()))?;
    let path = Path::new(spec);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {spec}: {e}")))?
    } else {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or(spec);
        BUNDLED
            .iter()
            .find(|(n, _)| *n == name || n.trim_end_matches(".var") == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::Input(format!("no such variety file: {spec}")))?
    };
    VarietyFile::from_toml(&text)
}

pub fn bundled(name: &str) -> VarietyFile {
    variety_file(Some(name)).expect("bundled file parses")
}

pub fn variety(file: &VarietyFile) -> Result<Variety> {
    Variety::try_from(file.presentation()?)
}

pub fn max_degree(var: &Variety) -> usize {
    var.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(1) as usize
}

pub fn quadrature(var: &Variety, n: Option<u64>, k: usize) -> Result<QuadratureSpec> {
    let n = n.map_or_else(|| default_nodes(k, max_degree(var)), |n| n as usize);
    torus_quadrature(var, n)
}

/// User-supplied sheet polynomials when present, else the automatic ones.
pub fn generators(file: &VarietyFile, var: &Variety) -> Result<CmGenerators> {
    match file.v_polys()? {
        Some(v) => CmGenerators::from_user(var, v),
        None => cm_generators(var),
    }
}

/// Float view of the requested basis up to degree `k`.
pub fn basis(
    kind: BasisArg,
    file: &VarietyFile,
    var: &Variety,
    k: usize,
    quad: impl FnOnce() -> Result<QuadratureSpec>,
) -> Result<GradedBasis<Complex64>> {
    Ok(match kind {
        BasisArg::Monomial => monomial_graded(var, k).to_float(),
        BasisArg::Cm => cm_basis(var, &generators(file, var)?, k)?.to_float(),
        BasisArg::Bb => bb_basis(var, k, &quad()?)?,
    })
}

/// `monomial`, `cm`, `bb` or `family:NAME`.
pub fn family(spec: &str, file: &VarietyFile, var: &Variety, n: Option<u64>) -> Result<BasisFamily> {
    if let Some(name) = spec.strip_prefix("family:") {
        let f = file
            .family(name)
            .ok_or_else(|| Error::Input(format!("no family named {name}")))?;
        return BasisFamily::from_spec(f, var.layout());
    }
    match spec {
        "monomial" => Ok(monomial_family(var)),
        "cm" => Ok(cm_family(var, &generators(file, var)?)),
        "bb" => bb_family(var, &quadrature(var, n, 1)?),
        _ => Err(Error::Input(format!(
            "unknown family {spec}; use monomial, cm, bb or family:NAME"
        ))),
    }
}

pub fn sampler(spec: &str, n: usize) -> Result<Sampler> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
        return Ok(Sampler::Points {
            points: parse_points(&text)?,
        });
    }
    match spec {
        "torus" => Ok(Sampler::Torus { n }),
        "segment" => Ok(Sampler::Segment { n }),
        _ => Err(Error::Input(format!(
            "unknown sampler {spec}; use torus, segment or file:PATH"
        ))),
    }
}
