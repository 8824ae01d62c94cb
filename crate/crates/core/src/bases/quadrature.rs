//! Uniform quadrature on the unit torus in `x`, lifted to all sheets.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::FloatPoly;
use crate::variety::{SheetSolver, Variety};

/// Grid shift in units of one step: the zero `(1 - 1/sqrt 3)/2` of the
/// second Bernoulli polynomial. Keeps the rule exact on trigonometric
/// polynomials of degree below `n` and cancels the leading error term from
/// the kinks of `|y|` at branch points on the torus.
pub const GRID_OFFSET: f64 = 0.211_324_865_405_187_1;

const CHUNK: usize = 512;

/// Nodes on the lifted torus with uniform weights.
#[derive(Clone, Debug)]
pub struct QuadratureSpec {
    /// Nodes per `x`-dimension.
    pub n: usize,
    pub offset: f64,
    pub sheets: usize,
    /// Full coordinates `(x, y)` of each node.
    pub nodes: Vec<Vec<Complex64>>,
    pub weight: f64,
}

impl QuadratureSpec {
    pub fn total_weight(&self) -> f64 {
        self.weight * self.nodes.len() as f64
    }
}

/// Smallest power of two above `4 k max_deg`, at least 256.
pub fn default_nodes(k: usize, max_deg: usize) -> usize {
    let need = 4 * k * max_deg.max(1);
    let mut n = 256;
    while n <= need {
        n *= 2;
    }
    n
}

pub fn torus_quadrature(var: &Variety, n: usize) -> Result<QuadratureSpec> {
    torus_quadrature_with_offset(var, n, GRID_OFFSET)
}

/// Tensor grid `x_j = exp(2 pi i (k_j + offset) / n)` lifted to every sheet.
pub fn torus_quadrature_with_offset(var: &Variety, n: usize, offset: f64) -> Result<QuadratureSpec> {
    if n == 0 {
        return Err(Error::Input("quadrature needs n >= 1".into()));
    }
    let m = var.m();
    let total = n
        .checked_pow(m as u32)
        .ok_or_else(|| Error::Input("grid too large".into()))?;
    let circle: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k as f64 + offset) / n as f64))
        .collect();
    let solver = SheetSolver::new(var)?;
    let lifted: Vec<Vec<Vec<Complex64>>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut x = vec![Complex64::new(0.0, 0.0); m];
            for xi in x.iter_mut() {
                *xi = circle[idx % n];
                idx /= n;
            }
            solver.lift(&x)
        })
        .collect::<Result<_>>()?;
    let sheets = lifted.first().map_or(1, Vec::len);
    let nodes: Vec<Vec<Complex64>> = lifted.into_iter().flatten().collect();
    let weight = 1.0 / nodes.len() as f64;
    Ok(QuadratureSpec {
        n,
        offset,
        sheets,
        nodes,
        weight,
    })
}

/// `sum_nodes w p conj(q)`, reduced chunk by chunk in a fixed order.
pub fn inner_product(p: &FloatPoly, q: &FloatPoly, quad: &QuadratureSpec) -> Complex64 {
    let parts: Vec<Complex64> = quad
        .nodes
        .par_chunks(CHUNK)
        .map(|ch| ch.iter().map(|z| p.eval(z) * q.eval(z).conj()).sum())
        .collect();
    parts.into_iter().sum::<Complex64>() * quad.weight
}

/// Gram matrix `G_ij = <p_i, p_j>`; independent of the thread count.
pub fn gram_matrix(polys: &[&FloatPoly], quad: &QuadratureSpec) -> DMatrix<Complex64> {
    let s = polys.len();
    let parts: Vec<DMatrix<Complex64>> = quad
        .nodes
        .par_chunks(CHUNK)
        .map(|ch| {
            let mut g = DMatrix::<Complex64>::zeros(s, s);
            let mut vals = vec![Complex64::new(0.0, 0.0); s];
            for z in ch {
                for (v, p) in vals.iter_mut().zip(polys) {
                    *v = p.eval(z);
                }
                for i in 0..s {
                    for j in 0..s {
                        g[(i, j)] += vals[i] * vals[j].conj();
                    }
                }
            }
            g
        })
        .collect();
    let mut g = DMatrix::<Complex64>::zeros(s, s);
    for p in parts {
        g += p;
    }
    g * Complex64::new(quad.weight, 0.0)
}
