//! Approximate Fekete points by greedy column exchange.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{log_abs_det, Mat};
use crate::polyring::FloatPoly;

const MIN_GAIN: f64 = 1e-12;
const REDRAWS: usize = 32;
const MAX_SUBSETS: u128 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeketeOptions {
    pub starts: usize,
    pub max_sweeps: usize,
    pub seed: u64,
    /// Start once from every subset of the candidates.
    pub exhaustive: bool,
}

impl Default for FeketeOptions {
    fn default() -> Self {
        FeketeOptions {
            starts: 8,
            max_sweeps: 100,
            seed: 0,
            exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeketeResult {
    /// Chosen candidate indices, ascending.
    pub indices: Vec<usize>,
    pub points: Vec<Vec<Complex64>>,
    pub log_vdm: f64,
    /// Winning start.
    pub start: usize,
    /// Incumbent value after each sweep of the winning start.
    pub history: Vec<f64>,
}

/// Basis values at every candidate: entry `(i, c)` is `e_i(candidate c)`.
pub fn evaluation_matrix(basis: &[&FloatPoly], candidates: &[Vec<Complex64>]) -> Mat {
    let cols: Vec<Vec<Complex64>> = candidates
        .par_iter()
        .map(|z| basis.iter().map(|p| p.eval(z)).collect())
        .collect();
    DMatrix::from_fn(basis.len(), candidates.len(), |i, c| cols[c][i])
}

fn subset_log_det(e: &Mat, idx: &[usize]) -> f64 {
    log_abs_det(&e.select_columns(idx))
}

/// Column-pivoted Gram–Schmidt pick of `s` well-separated columns.
fn greedy_pivots(e: &Mat, s: usize) -> Vec<usize> {
    let mut r = e.clone();
    let mut chosen = Vec::with_capacity(s);
    for _ in 0..s {
        let (best, _) = (0..r.ncols())
            .filter(|c| !chosen.contains(c))
            .map(|c| (c, r.column(c).norm()))
            .fold((usize::MAX, -1.0), |b, cur| if cur.1 > b.1 { cur } else { b });
        if best == usize::MAX {
            break;
        }
        chosen.push(best);
        let q = r.column(best).clone_owned();
        let nq = q.norm();
        if nq == 0.0 {
            continue;
        }
        let q = q / Complex64::new(nq, 0.0);
        for c in 0..r.ncols() {
            let proj = q.dotc(&r.column(c));
            let upd = &q * proj;
            let mut col = r.column_mut(c);
            col -= upd;
        }
    }
    chosen
}

struct Run {
    indices: Vec<usize>,
    value: f64,
    history: Vec<f64>,
}

fn initial(e: &Mat, s: usize, seed: u64, start: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (start as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    for _ in 0..REDRAWS {
        let idx = rand::seq::index::sample(&mut rng, e.ncols(), s).into_vec();
        if subset_log_det(e, &idx).is_finite() {
            return idx;
        }
    }
    greedy_pivots(e, s)
}

/// Exchange sweeps from `idx` until a sweep gains less than `MIN_GAIN`.
fn exchange(e: &Mat, mut idx: Vec<usize>, max_sweeps: usize) -> Run {
    let s = idx.len();
    let mut value = subset_log_det(e, &idx);
    let mut history = vec![value];
    if !value.is_finite() {
        return Run {
            indices: idx,
            value,
            history,
        };
    }
    for _ in 0..max_sweeps {
        let mut improved = false;
        for slot in 0..s {
            let a = e.select_columns(&idx);
            let lu = a.transpose().lu();
            let mut unit = DVector::<Complex64>::zeros(s);
            unit[slot] = Complex64::new(1.0, 0.0);
            let Some(w) = lu.solve(&unit) else { break };
            // replacing column `slot` by candidate c scales det by w . E[:, c]
            let gains: Vec<f64> = (0..e.ncols())
                .into_par_iter()
                .map(|c| {
                    if idx.contains(&c) {
                        return 0.0;
                    }
                    w.iter()
                        .zip(e.column(c).iter())
                        .map(|(a, b)| a * b)
                        .sum::<Complex64>()
                        .norm()
                })
                .collect();
            let (best, g) = gains
                .iter()
                .enumerate()
                .fold((usize::MAX, 0.0), |b, (c, &g)| if g > b.1 { (c, g) } else { b });
            if best != usize::MAX && g.ln() > MIN_GAIN {
                let mut trial = idx.clone();
                trial[slot] = best;
                let v = subset_log_det(e, &trial);
                if v > value {
                    idx = trial;
                    value = v;
                    improved = true;
                }
            }
        }
        history.push(value);
        if !improved {
            break;
        }
    }
    Run {
        indices: idx,
        value,
        history,
    }
}

/// Maximises `log|det VDM|` over `N`-subsets of the candidates, where `N` is
/// the number of basis elements.
pub fn fekete_maximize(
    basis: &[&FloatPoly],
    candidates: &[Vec<Complex64>],
    opts: &FeketeOptions,
) -> Result<FeketeResult> {
    let s = basis.len();
    if candidates.len() < s {
        return Err(Error::Input(format!(
            "{} candidates for {s} basis elements",
            candidates.len()
        )));
    }
    if opts.starts == 0 && !opts.exhaustive {
        return Err(Error::Input("starts must be at least 1".into()));
    }
    if s == 0 {
        return Ok(FeketeResult {
            indices: vec![],
            points: vec![],
            log_vdm: 0.0,
            start: 0,
            history: vec![0.0],
        });
    }
    let e = evaluation_matrix(basis, candidates);
    let runs: Vec<Run> = if opts.exhaustive {
        let count = binomial(candidates.len() as u128, s as u128);
        if count > MAX_SUBSETS {
            return Err(Error::Input(format!("{count} subsets are too many to enumerate")));
        }
        let subsets: Vec<Vec<usize>> = (0..candidates.len()).combinations(s).collect();
        subsets
            .into_par_iter()
            .map(|idx| exchange(&e, idx, opts.max_sweeps))
            .collect()
    } else {
        (0..opts.starts)
            .into_par_iter()
            .map(|st| exchange(&e, initial(&e, s, opts.seed, st), opts.max_sweeps))
            .collect()
    };
    let mut best: Option<(usize, Run)> = None;
    for (i, mut r) in runs.into_iter().enumerate() {
        r.indices.sort_unstable();
        r.value = subset_log_det(&e, &r.indices);
        if best.as_ref().is_none_or(|(_, b)| r.value > b.value) {
            best = Some((i, r));
        }
    }
    let (start, run) = best.expect("at least one start");
    if !run.value.is_finite() {
        return Err(Error::Numeric(
            "every start is singular; the candidate set is too poor".into(),
        ));
    }
    Ok(FeketeResult {
        points: run.indices.iter().map(|&i| candidates[i].clone()).collect(),
        indices: run.indices,
        log_vdm: run.value,
        start,
        history: run.history,
    })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |r, i| r.saturating_mul(n - i) / (i + 1))
}
