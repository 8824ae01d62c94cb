//! Dense linear algebra helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::polyring::Coeff;

pub type Mat = DMatrix<Complex64>;

/// `log|det m|` by partial-pivoting elimination; `-inf` when a pivot falls
/// below `64 * eps * max|m_ij|`.
pub fn log_abs_det(m: &Mat) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return 0.0;
    }
    let mut a = m.clone();
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tiny = 64.0 * f64::EPSILON * scale;
    if scale == 0.0 || !scale.is_finite() {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for k in 0..n {
        let (p, pv) = (k..n)
            .map(|i| (i, a[(i, k)].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pv <= tiny {
            return f64::NEG_INFINITY;
        }
        if p != k {
            a.swap_rows(p, k);
        }
        let piv = a[(k, k)];
        acc += pv.ln();
        for i in k + 1..n {
            let f = a[(i, k)] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let v = a[(k, j)];
                a[(i, j)] -= f * v;
            }
        }
    }
    acc
}

/// Solves `A X = B` for a tall matrix `A` with full column rank, checking
/// consistency of the extra rows. Exact coefficients use exact zero tests;
/// floating ones treat magnitudes below `tol` as zero. Returns `None` when
/// `A` is rank deficient or the system is inconsistent.
pub fn solve_exactish<C: Coeff>(a: &[Vec<C>], b: &[Vec<C>], tol: f64) -> Option<Vec<Vec<C>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let zero = |v: &C| if C::EXACT { v.is_zero() } else { v.magnitude() <= tol };
    let mut m: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    for (r, c) in (0..cols).enumerate() {
        let piv = (r..rows)
            .filter(|&i| !zero(&m[i][c]))
            .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()).then(j.cmp(&i)))?;
        m.swap(r, piv);
        let inv = C::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a = a.clone() - f.clone() * b.clone();
                }
            }
        }
    }
    for row in &m[cols..] {
        if row[cols..].iter().any(|v| !zero(v)) {
            return None;
        }
    }
    Some(m[..cols].iter().map(|row| row[cols..].to_vec()).collect())
}
