//! Vandermonde determinants, Fekete-point search and transfinite-diameter
//! estimates.

mod fekete;
mod sampler;
mod scale;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bases::{BasisKind, GradedBasis};
use crate::error::{Error, Result};
use crate::numeric::{log_abs_det, Mat};
use crate::polyring::{Coeff, FloatPoly};

pub use fekete::{evaluation_matrix, fekete_maximize, FeketeOptions, FeketeResult};
pub use sampler::{parse_points, random_points, Sampler};
pub use scale::{row_scale_bound, SandwichTriple, ScaleBoundReport};

/// `(e_i(z_j))`; square when the counts agree.
pub fn vdm_matrix(basis: &[&FloatPoly], points: &[Vec<Complex64>]) -> Result<Mat> {
    if basis.len() != points.len() {
        return Err(Error::Input(format!(
            "{} basis elements but {} points",
            basis.len(),
            points.len()
        )));
    }
    Ok(evaluation_matrix(basis, points))
}

/// `log|det|` of the Vandermonde matrix; `-inf` when singular.
pub fn log_abs_vdm(basis: &[&FloatPoly], points: &[Vec<Complex64>]) -> Result<f64> {
    Ok(log_abs_det(&vdm_matrix(basis, points)?))
}

/// Best Vandermonde value at degree `k` with both normalisations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterEstimate {
    pub k: usize,
    pub n_k: usize,
    pub l_k: u64,
    pub log_vdm: f64,
    /// `log_vdm / l_k`.
    pub est_lk: f64,
    /// `log_vdm / (k N_k)`.
    pub est_knk: f64,
    /// Largest `est_lk` seen up to this `k`.
    pub best_est_lk: f64,
    pub points: Vec<Vec<Complex64>>,
}

/// Fekete estimates for `k = 1..=k_max`; degree `k` uses seed `seed + k`.
pub fn diameter_sequence<C: Coeff>(
    basis: &GradedBasis<C>,
    candidates: &[Vec<Complex64>],
    k_max: usize,
    opts: &FeketeOptions,
) -> Result<Vec<DiameterEstimate>> {
    if k_max > basis.max_degree() {
        return Err(Error::Input(format!(
            "basis only reaches degree {}",
            basis.max_degree()
        )));
    }
    let fb = basis.to_float();
    let mut out: Vec<DiameterEstimate> = Vec::new();
    for k in 1..=k_max {
        let elems = fb.upto(k);
        let o = FeketeOptions {
            seed: opts.seed.wrapping_add(k as u64),
            ..opts.clone()
        };
        let r = fekete_maximize(&elems, candidates, &o)?;
        let l_k = fb.degree_sum(k);
        let n_k = elems.len();
        let est_lk = r.log_vdm / l_k as f64;
        let best = out.last().map_or(est_lk, |p| p.best_est_lk.max(est_lk));
        out.push(DiameterEstimate {
            k,
            n_k,
            l_k,
            log_vdm: r.log_vdm,
            est_lk,
            est_knk: r.log_vdm / (k * n_k) as f64,
            best_est_lk: best,
            points: r.points,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub k: usize,
    /// `est_lk` per basis, in input order.
    pub est_lk: Vec<f64>,
    pub spread: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub kinds: Vec<BasisKind>,
    pub rows: Vec<CompareRow>,
    pub final_spread: f64,
    pub sequences: Vec<Vec<DiameterEstimate>>,
}

/// Runs every basis on the same candidates with the same seeds.
pub fn compare_bases<C: Coeff>(
    bases: &[GradedBasis<C>],
    candidates: &[Vec<Complex64>],
    k_max: usize,
    opts: &FeketeOptions,
) -> Result<Comparison> {
    let sequences = bases
        .iter()
        .map(|b| diameter_sequence(b, candidates, k_max, opts))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<CompareRow> = (0..k_max)
        .map(|i| {
            let est: Vec<f64> = sequences.iter().map(|s| s[i].est_lk).collect();
            let hi = est.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = est.iter().copied().fold(f64::INFINITY, f64::min);
            CompareRow {
                k: i + 1,
                spread: if est.is_empty() { 0.0 } else { hi - lo },
                est_lk: est,
            }
        })
        .collect();
    Ok(Comparison {
        kinds: bases.iter().map(|b| b.kind).collect(),
        final_spread: rows.last().map_or(0.0, |r| r.spread),
        rows,
        sequences,
    })
}

/// Both normalisations of one estimate and the exact count ratio
/// `l_k / (k N_k)`, which tends to `M / (M + 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub k: usize,
    pub est_lk: f64,
    pub est_knk: f64,
    /// `l_k / (k N_k)` in lowest terms.
    pub ratio: (u64, u64),
    pub limit: f64,
    /// `limit * est_lk`, the large-`k` value of `est_knk`.
    pub predicted_knk: f64,
}

/// `l / (k n)` in lowest terms.
pub fn count_ratio(l_k: u64, k: usize, n_k: usize) -> Result<(u64, u64)> {
    let den = (k as u64) * n_k as u64;
    if den == 0 {
        return Err(Error::Precondition("the ratio needs k >= 1".into()));
    }
    let g = l_k.gcd(&den);
    Ok((l_k / g, den / g))
}

pub fn bb_normalization(est: &DiameterEstimate, m: usize) -> Result<Normalization> {
    let ratio = count_ratio(est.l_k, est.k, est.n_k)?;
    let limit = m as f64 / (m as f64 + 1.0);
    Ok(Normalization {
        k: est.k,
        est_lk: est.est_lk,
        est_knk: est.est_knk,
        ratio,
        limit,
        predicted_knk: limit * est.est_lk,
    })
}
