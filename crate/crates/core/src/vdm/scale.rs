//! Change of basis between two graded bases and the determinant bounds it
//! implies.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::GradedBasis;
use crate::error::{Error, Result};
use crate::numeric::solve_exactish;
use crate::polyring::{Coeff, Monomial, Polynomial};

use super::log_abs_vdm;

const FLOAT_ZERO: f64 = 1e-10;

/// `lower <= value <= upper` at one point tuple, in logs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichTriple {
    pub lower: f64,
    /// `log|VDM[B_k]|`.
    pub value: f64,
    pub upper: f64,
    /// `log|VDM[C_k]|`.
    pub other: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleBoundReport {
    pub k: usize,
    pub n_k: usize,
    /// Smallest nonzero `|a_ij|` in `c_i = sum_j a_ij b_j`.
    pub raw_min: f64,
    pub raw_max: f64,
    /// `1 / max_i sum_j |a_ij|`.
    pub m: f64,
    /// Largest row sum of `|.|` in the inverse change of basis.
    pub mx: f64,
    /// `log|det A|`, constant over tuples.
    pub log_det_change: f64,
    pub triples: Vec<SandwichTriple>,
    pub holds: bool,
}

/// Coordinates of each `to` element in the `from` elements.
fn coordinates<C: Coeff>(from: &[&Polynomial<C>], to: &[&Polynomial<C>]) -> Option<Vec<Vec<C>>> {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in from.iter().chain(to) {
        for t in p.terms() {
            let n = index.len();
            index.entry(t.mono.clone()).or_insert(n);
        }
    }
    let column = |p: &Polynomial<C>| {
        let mut v = vec![C::zero(); index.len()];
        for t in p.terms() {
            v[index[&t.mono]] = t.coeff.clone();
        }
        v
    };
    let fa: Vec<Vec<C>> = from.iter().map(|p| column(p)).collect();
    let tb: Vec<Vec<C>> = to.iter().map(|p| column(p)).collect();
    let a: Vec<Vec<C>> = (0..index.len())
        .map(|r| fa.iter().map(|c| c[r].clone()).collect())
        .collect();
    let b: Vec<Vec<C>> = (0..index.len())
        .map(|r| tb.iter().map(|c| c[r].clone()).collect())
        .collect();
    let x = solve_exactish(&a, &b, FLOAT_ZERO)?;
    // x[j][i]: coefficient of from_j in to_i
    Some(
        (0..to.len())
            .map(|i| x.iter().map(|row| row[i].clone()).collect())
            .collect(),
    )
}

fn row_sums<C: Coeff>(t: &[Vec<C>]) -> f64 {
    t.iter()
        .map(|r| r.iter().map(Coeff::magnitude).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Writes `C_k` in `B_k`, extracts the coefficient moduli and checks
/// `m^N |VDM[C_k]| <= |VDM[B_k]| <= Mx^N |VDM[C_k]|` at each tuple.
pub fn row_scale_bound<C: Coeff>(
    b: &GradedBasis<C>,
    c: &GradedBasis<C>,
    k: usize,
    tuples: &[Vec<Vec<Complex64>>],
) -> Result<ScaleBoundReport> {
    let be = b.upto(k);
    let ce = c.upto(k);
    if be.len() != ce.len() {
        return Err(Error::NotSpanning(format!(
            "{} elements against {}",
            be.len(),
            ce.len()
        )));
    }
    let n = be.len();
    let t = coordinates(&be, &ce)
        .ok_or_else(|| Error::NotSpanning("second basis is not in the span of the first".into()))?;
    let inv = coordinates(&ce, &be)
        .ok_or_else(|| Error::NotSpanning("first basis is not in the span of the second".into()))?;
    let mags: Vec<f64> = t
        .iter()
        .flatten()
        .map(Coeff::magnitude)
        .filter(|&v| v > FLOAT_ZERO)
        .collect();
    let raw_min = mags.iter().copied().fold(f64::INFINITY, f64::min);
    let raw_max = mags.iter().copied().fold(0.0, f64::max);
    let m = 1.0 / row_sums(&t);
    let mx = row_sums(&inv);
    let tm = crate::numeric::Mat::from_fn(n, n, |i, j| t[i][j].to_complex());
    let log_det_change = crate::numeric::log_abs_det(&tm);
    let bf = b.to_float();
    let cf = c.to_float();
    let mut triples = Vec::new();
    for pts in tuples {
        let value = log_abs_vdm(&bf.upto(k), pts)?;
        let other = log_abs_vdm(&cf.upto(k), pts)?;
        let lower = n as f64 * m.ln() + other;
        let upper = n as f64 * mx.ln() + other;
        let eps = 1e-9 * (1.0 + value.abs().min(1e300));
        let holds =
            value == f64::NEG_INFINITY && other == f64::NEG_INFINITY || (lower <= value + eps && value <= upper + eps);
        triples.push(SandwichTriple {
            lower,
            value,
            upper,
            other,
            holds,
        });
    }
    Ok(ScaleBoundReport {
        k,
        n_k: n,
        raw_min,
        raw_max,
        m,
        mx,
        log_det_change,
        holds: triples.iter().all(|t| t.holds),
        triples,
    })
}
