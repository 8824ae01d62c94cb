//! Orthonormal bases for the torus inner product by Gram–Schmidt.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::quadrature::{gram_matrix, QuadratureSpec};
use super::{BasisKind, GradedBasis};
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, FloatPoly, Layout, Monomial, Polynomial};
use crate::variety::Variety;

const CHOP: f64 = 1e-13;
const RANK_TOL: f64 = 1e-10;

fn ip(a: &[Complex64], b: &[Complex64], g: &DMatrix<Complex64>) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (p, ap) in a.iter().enumerate() {
        if ap.norm() == 0.0 {
            continue;
        }
        for (q, bq) in b.iter().enumerate() {
            s += ap * bq.conj() * g[(p, q)];
        }
    }
    s
}

/// Modified Gram–Schmidt with one reorthogonalisation pass in coefficient
/// space. Row `i` of the result expresses element `i` in the input
/// elements; its own coefficient is real and positive.
pub fn orthonormalize(g: &DMatrix<Complex64>) -> Result<Vec<Vec<Complex64>>> {
    let s = g.nrows();
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(s);
    for i in 0..s {
        let mut c = vec![Complex64::new(0.0, 0.0); s];
        c[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for f in &out {
                let proj = ip(&c, f, g);
                for (cv, fv) in c.iter_mut().zip(f) {
                    *cv -= proj * fv;
                }
            }
        }
        let norm2 = ip(&c, &c, g).re;
        let scale = g[(i, i)].re.max(0.0).sqrt();
        if norm2.is_nan() || norm2 <= 0.0 || norm2.sqrt() <= RANK_TOL * scale.max(1.0) {
            return Err(Error::Numeric(format!(
                "Gram matrix is numerically singular at element {i}; increase n"
            )));
        }
        let inv = 1.0 / norm2.sqrt();
        for v in c.iter_mut() {
            *v *= inv;
            if v.norm() < CHOP {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        out.push(c);
    }
    Ok(out)
}

fn combine(l: Layout, monos: &[Monomial], coeffs: &[Complex64]) -> FloatPoly {
    Polynomial::from_terms(l, monos.iter().cloned().zip(coeffs.iter().copied()))
}

/// Gram–Schmidt on the standard monomials of degree at most `k`, ascending.
pub fn bb_basis(var: &Variety, k: usize, quad: &QuadratureSpec) -> Result<GradedBasis<Complex64>> {
    let l = var.layout();
    let monos = var.monomial_basis(k as u32);
    let polys: Vec<FloatPoly> = monos
        .iter()
        .map(|m| Polynomial::monomial(l, m.clone(), Complex64::new(1.0, 0.0)))
        .collect();
    let g = gram_matrix(&polys.iter().collect::<Vec<_>>(), quad);
    let rows = orthonormalize(&g)?;
    let elems = rows.iter().map(|c| combine(l, &monos, c)).collect();
    Ok(GradedBasis::from_elements(BasisKind::Bb, k, elems))
}

/// Orthonormalised `y`-monomials `y^alpha`, `alpha` in `A`, ascending.
pub(crate) fn structured_heads(var: &Variety, quad: &QuadratureSpec) -> Result<Vec<FloatPoly>> {
    let l = var.layout();
    let ys: Vec<Monomial> = var
        .decompose()
        .exponents
        .into_iter()
        .map(|a| {
            let mut e = vec![0; l.nx];
            e.extend(a);
            Monomial(e)
        })
        .collect();
    let polys: Vec<FloatPoly> = ys
        .iter()
        .map(|m| Polynomial::monomial(l, m.clone(), Complex64::new(1.0, 0.0)))
        .collect();
    let g = gram_matrix(&polys.iter().collect::<Vec<_>>(), quad);
    let rows = orthonormalize(&g)?;
    Ok(rows.iter().map(|row| combine(l, &ys, row)).collect())
}

/// Gram–Schmidt on the `y`-monomials `y^alpha`, `alpha` in `A`, then all
/// products `x^beta f_j` of degree at most `k`.
pub fn bb_structured(var: &Variety, k: usize, quad: &QuadratureSpec) -> Result<GradedBasis<Complex64>> {
    let l = var.layout();
    let mut elems = Vec::new();
    for f in structured_heads(var, quad)? {
        let df = f.degree().unwrap_or(0) as usize;
        if df > k {
            continue;
        }
        for j in 0..=k - df {
            for mx in monomials_of_degree(l.nx, j as u32) {
                let mut e = mx.0;
                e.resize(l.nvars(), 0);
                elems.push(f.mul_monomial(&Monomial(e), &Complex64::new(1.0, 0.0)));
            }
        }
    }
    Ok(GradedBasis::from_elements(BasisKind::Bb, k, elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::quadrature::torus_quadrature;
    use crate::variety::tests::variety;

    fn max_gram_dev(b: &GradedBasis<Complex64>, q: &QuadratureSpec) -> f64 {
        let e = b.upto(b.max_degree());
        let g = gram_matrix(&e, q);
        let mut worst = 0.0f64;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - want).norm());
            }
        }
        worst
    }

    #[test]
    fn hyperbola_low_degree_elements() {
        let v = variety(1, 1, &["y^2 - x^2 - 1"]);
        let q = torus_quadrature(&v, 1024).unwrap();
        let b = bb_basis(&v, 2, &q).unwrap();
        let c = std::f64::consts::PI.sqrt() / 2.0;
        let y = &b.slices[1][1];
        assert_eq!(y.len(), 1);
        assert!((y.terms()[0].coeff - c).norm() < 1e-10);
        let xy = &b.slices[2][1];
        assert_eq!(xy.len(), 1);
        assert!((xy.terms()[0].coeff - c).norm() < 1e-10);
        assert_eq!(b.slices[1][0].to_string(), "x1");
    }

    #[test]
    fn orthonormal_to_tolerance() {
        let v = variety(1, 1, &["y^2 - x^2 - 1"]);
        let q = torus_quadrature(&v, 1024).unwrap();
        let b = bb_basis(&v, 5, &q).unwrap();
        assert!(max_gram_dev(&b, &q) < 1e-8);
    }

    #[test]
    fn affine_monomials_unchanged() {
        let v = Variety::affine(1);
        let q = torus_quadrature(&v, 64).unwrap();
        let b = bb_basis(&v, 4, &q).unwrap();
        for (j, s) in b.slices.iter().enumerate() {
            assert_eq!(s.len(), 1);
            let t = &s[0].terms();
            assert_eq!(t.len(), 1);
            assert_eq!(t[0].mono.degree() as usize, j);
            assert!((t[0].coeff - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn structured_cross_term_closed_form() {
        // <y, x^2 y> = mean of 2|cos t| e^{-2it} = 4/(3 pi): the products
        // x^m f_j are orthonormal only up to degree 2.
        let v = variety(1, 1, &["y^2 - x^2 - 1"]);
        let q = torus_quadrature(&v, 1024).unwrap();
        let b = bb_structured(&v, 3, &q).unwrap();
        let pi = std::f64::consts::PI;
        let f = &b.slices[1][1];
        let x2f = &b.slices[3][1];
        let g = gram_matrix(&[f, x2f], &q);
        assert!((g[(0, 1)].re - (pi / 4.0) * 4.0 / (3.0 * pi)).abs() < 1e-10);
        let low = bb_structured(&v, 2, &q).unwrap();
        assert!(max_gram_dev(&low, &q) < 1e-8);
    }

    #[test]
    fn structured_dimensions_match_counts() {
        let v = variety(2, 1, &["y1^2 - x2^2 - x1^2 - 1"]);
        let q = torus_quadrature(&v, 32).unwrap();
        let b = bb_structured(&v, 4, &q).unwrap();
        for k in 0..=4u32 {
            assert_eq!(b.slices[k as usize].len() as u64, v.count(k).n_eq_k);
        }
    }

    #[test]
    fn singular_gram_is_reported() {
        let g = DMatrix::from_element(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(orthonormalize(&g), Err(Error::Numeric(_))));
    }
}
