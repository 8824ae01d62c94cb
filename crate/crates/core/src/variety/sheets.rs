//! Points of the variety over a given `x`: sequential univariate solves.

use num_complex::Complex64;

use super::Variety;
use crate::error::{Error, Result};
use crate::numeric::poly_roots;
use crate::polyring::{Coeff, ExactPoly, FloatPoly};

/// Largest scaled residual accepted for a lifted point.
pub const SHEET_TOL: f64 = 1e-9;

/// Float generators ordered so that entry `i` leads with a power of `y_i`.
#[derive(Clone, Debug)]
pub struct SheetSolver {
    nx: usize,
    gens: Vec<FloatPoly>,
}

fn scaled_residual(g: &FloatPoly, z: &[Complex64]) -> f64 {
    let mut scale = 1.0f64;
    let mut v = Complex64::new(0.0, 0.0);
    for t in g.terms() {
        let term = t.coeff * t.mono.eval(z);
        scale = scale.max(term.norm());
        v += term;
    }
    v.norm() / scale
}

impl SheetSolver {
    pub fn new(var: &Variety) -> Result<Self> {
        let l = var.layout();
        let mut gens: Vec<Option<FloatPoly>> = vec![None; l.ny];
        for g in var.generators() {
            let lt = g.leading_term()?;
            let yi = (l.nx..l.nvars()).find(|&j| lt.mono.0[j] > 0).expect("validated") - l.nx;
            let uses_later = g
                .terms()
                .iter()
                .any(|t| t.mono.0[l.nx + yi + 1..].iter().any(|&e| e > 0));
            if uses_later {
                return Err(Error::Unsupported(format!(
                    "generator for y{} involves later y-variables; sheets cannot be solved in sequence",
                    yi + 1
                )));
            }
            gens[yi] = Some(g.to_float());
        }
        Ok(SheetSolver {
            nx: l.nx,
            gens: gens.into_iter().map(|g| g.expect("validated")).collect(),
        })
    }

    /// All points `(x, y)` of the variety over `x`, in a fixed order.
    pub fn lift(&self, x: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        let n = self.nx + self.gens.len();
        let mut start = x.to_vec();
        start.resize(n, Complex64::new(0.0, 0.0));
        let mut partial = vec![start];
        for (i, g) in self.gens.iter().enumerate() {
            let var = self.nx + i;
            let mut next = Vec::new();
            for z in &partial {
                let deg = g.terms().iter().map(|t| t.mono.0[var]).max().unwrap_or(0) as usize;
                let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
                for t in g.terms() {
                    let e = t.mono.0[var] as usize;
                    let mut m = t.mono.clone();
                    m.0[var] = 0;
                    c[e] += t.coeff * m.eval(z);
                }
                let mut roots = poly_roots(&c)?;
                roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
                for r in roots {
                    let mut w = z.clone();
                    w[var] = r;
                    next.push(w);
                }
            }
            partial = next;
        }
        for z in &partial {
            for (i, g) in self.gens.iter().enumerate() {
                let r = scaled_residual(g, z);
                if r.is_nan() || r >= SHEET_TOL {
                    return Err(Error::Numeric(format!(
                        "sheet solve residual {r:.3e} for generator {} at x = {:?}",
                        i + 1,
                        x
                    )));
                }
            }
        }
        Ok(partial)
    }
}

/// Exact residual check used by tests and samplers on user points.
pub fn on_variety(gens: &[ExactPoly], z: &[Complex64]) -> f64 {
    gens.iter()
        .map(|g| scaled_residual(&g.map_coeffs(|c| c.to_complex()), z))
        .fold(0.0, f64::max)
}
