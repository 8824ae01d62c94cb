//! Finite candidate sets on compact subsets of the variety.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::variety::{on_variety, SheetSolver, Variety, SHEET_TOL};

/// How candidate points are produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sampler {
    /// Explicit points: either `x` only (lifted to every sheet) or full
    /// coordinates (checked).
    Points { points: Vec<Vec<Complex64>> },
    /// `n` roots of unity per `x`-coordinate, lifted.
    Torus { n: usize },
    /// `n` Chebyshev–Lobatto nodes of `[-1, 1]` per `x`-coordinate, lifted.
    Segment { n: usize },
}

fn grid(axis: &[Complex64], m: usize) -> Vec<Vec<Complex64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(*a);
                    q
                })
            })
            .collect();
    }
    out
}

fn lift_all(var: &Variety, xs: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
    let solver = SheetSolver::new(var)?;
    let mut out = Vec::new();
    for x in xs {
        out.extend(solver.lift(x)?);
    }
    Ok(out)
}

impl Sampler {
    /// Candidate points, each satisfying the generators to `SHEET_TOL`.
    pub fn candidates(&self, var: &Variety) -> Result<Vec<Vec<Complex64>>> {
        let l = var.layout();
        let m = l.nx;
        let pts = match self {
            Sampler::Torus { n } | Sampler::Segment { n } if *n == 0 => {
                return Err(Error::Input("sampler needs at least one node".into()))
            }
            Sampler::Torus { n } => {
                let axis: Vec<Complex64> = (0..*n)
                    .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / *n as f64))
                    .collect();
                lift_all(var, &grid(&axis, m))?
            }
            Sampler::Segment { n } => {
                let axis: Vec<Complex64> = if *n == 1 {
                    vec![Complex64::new(0.0, 0.0)]
                } else {
                    (0..*n)
                        .map(|j| Complex64::new((std::f64::consts::PI * j as f64 / (*n - 1) as f64).cos(), 0.0))
                        .collect()
                };
                lift_all(var, &grid(&axis, m))?
            }
            Sampler::Points { points } => {
                let mut out = Vec::new();
                for p in points {
                    if p.len() == m && m != l.nvars() {
                        out.extend(lift_all(var, std::slice::from_ref(p))?);
                    } else if p.len() == l.nvars() {
                        out.push(p.clone());
                    } else {
                        return Err(Error::Input(format!(
                            "point has {} coordinates, expected {} or {}",
                            p.len(),
                            m,
                            l.nvars()
                        )));
                    }
                }
                out
            }
        };
        for (i, p) in pts.iter().enumerate() {
            let r = on_variety(var.generators(), p);
            if r.is_nan() || r >= SHEET_TOL {
                return Err(Error::Numeric(format!(
                    "candidate {i} is off the variety (residual {r:e})"
                )));
            }
        }
        Ok(pts)
    }
}

/// Parses a point list: one point per line, coordinates separated by
/// whitespace, each `re` or `re,im`; `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Complex64>>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = line
            .split_whitespace()
            .map(|tok| {
                let mut parts = tok.split(',');
                let num = |s: Option<&str>| -> Result<f64> {
                    s.unwrap_or("0")
                        .parse()
                        .map_err(|_| Error::Input(format!("line {}: bad number in {tok}", ln + 1)))
                };
                let re = num(parts.next())?;
                let im = num(parts.next())?;
                if parts.next().is_some() {
                    return Err(Error::Input(format!("line {}: bad coordinate {tok}", ln + 1)));
                }
                Ok(Complex64::new(re, im))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(p);
    }
    Ok(out)
}

/// `count` random points over the closed unit polydisk, each on a random
/// sheet.
pub fn random_points(var: &Variety, count: usize, seed: u64) -> Result<Vec<Vec<Complex64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let solver = SheetSolver::new(var)?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let x: Vec<Complex64> = (0..var.m())
            .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let sheets = solver.lift(&x)?;
        out.push(sheets[rng.gen_range(0..sheets.len())].clone());
    }
    Ok(out)
}
