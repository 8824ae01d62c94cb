//! Points at infinity of a hypersurface on the line `t = x_1 = .. = x_{M-1} = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::numeric::poly_roots;
use num_traits::Zero;

use crate::polyring::{Coeff, Exact, ExactPoly};

const CHORDAL_TOL: f64 = 1e-8;

/// Projective points `[t : x_1 : .. : x_M : y]` at infinity, with verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfinityReport {
    pub points: Vec<Vec<Complex64>>,
    pub distinct: bool,
    pub xm_nonzero: bool,
    pub expected: usize,
    pub verdict: bool,
}

/// Chordal distance between two projective points.
pub fn chordal(p: &[Complex64], q: &[Complex64]) -> f64 {
    let np: f64 = p.iter().map(|v| v.norm_sqr()).sum();
    let nq: f64 = q.iter().map(|v| v.norm_sqr()).sum();
    let ip: Complex64 = p.iter().zip(q).map(|(a, b)| a * b.conj()).sum();
    (1.0 - ip.norm_sqr() / (np * nq)).max(0.0).sqrt()
}

/// Binary form in `(x_M, y)` obtained from the top-degree part, as
/// coefficients of `y^j x_M^(D-j)` for `j = 0..=D`.
pub(crate) fn restricted_top_form(p: &ExactPoly) -> Result<Vec<Exact>> {
    let l = p.layout();
    let top = p.top_homogeneous()?;
    let deg = top.degree().unwrap_or(0) as usize;
    let mut c = vec![Exact::zero(); deg + 1];
    for t in top.terms() {
        let e = &t.mono.0;
        if e[..l.nx - 1].iter().any(|&v| v > 0) {
            continue;
        }
        c[e[l.nx] as usize] = c[e[l.nx] as usize].clone() + t.coeff.clone();
    }
    if c.iter().all(|v| v.is_zero()) {
        return Err(Error::Unsupported(
            "top-degree form vanishes identically on the line at infinity".into(),
        ));
    }
    Ok(c)
}

/// Checks that a single-generator presentation with one `y`-variable meets
/// the hyperplane at infinity in `d` distinct points with `x_M != 0`.
pub fn distinct_infinity_check(pres: &Presentation) -> Result<InfinityReport> {
    let l = pres.layout;
    if pres.generators.len() != 1 || l.ny != 1 || l.nx == 0 {
        return Err(Error::Unsupported(
            "the check at infinity needs exactly one generator and one y-variable; \
             supply the verdict through the variety file instead"
                .into(),
        ));
    }
    let p = &pres.generators[0];
    let c = restricted_top_form(p)?;
    let deg = c.len() - 1;
    let ydeg = (0..=deg).rev().find(|&j| !c[j].is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    for (r, m) in roots_with_multiplicity(&c[..=ydeg])? {
        roots.extend(std::iter::repeat_n(r, m));
    }
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    let nvars = l.nvars();
    let mut points: Vec<Vec<Complex64>> = roots
        .iter()
        .map(|r| {
            let mut v = vec![Complex64::new(0.0, 0.0); nvars + 1];
            v[l.nx] = Complex64::new(1.0, 0.0);
            v[nvars] = *r;
            v
        })
        .collect();
    let at_xm_zero = deg - ydeg;
    for _ in 0..at_xm_zero {
        let mut v = vec![Complex64::new(0.0, 0.0); nvars + 1];
        v[nvars] = Complex64::new(1.0, 0.0);
        points.push(v);
    }
    let mut distinct = roots.len() == ydeg;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if chordal(&points[i], &points[j]) <= CHORDAL_TOL {
                distinct = false;
            }
        }
    }
    let expected = pres.d.unwrap_or(deg);
    let xm_nonzero = at_xm_zero == 0;
    let verdict = distinct && xm_nonzero && points.len() == expected;
    Ok(InfinityReport {
        points,
        distinct,
        xm_nonzero,
        expected,
        verdict,
    })
}

fn trim(mut p: Vec<Exact>) -> Vec<Exact> {
    while p.last().is_some_and(|v| v.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &[Exact]) -> Vec<Exact> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * Exact::from_i64(k as i64))
        .collect()
}

/// Quotient and remainder of univariate division (ascending coefficients).
fn divmod(a: &[Exact], b: &[Exact]) -> (Vec<Exact>, Vec<Exact>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Exact::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r[r.len() - 1].clone() / lead.clone();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].clone() - f.clone() * bj.clone();
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
    }
    (q, r)
}

fn gcd(a: &[Exact], b: &[Exact]) -> Vec<Exact> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Distinct roots with exact multiplicities, via repeated square-free
/// splitting; only simple roots are handed to the numerical solver.
fn roots_with_multiplicity(p: &[Exact]) -> Result<Vec<(Complex64, usize)>> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Ok(Vec::new());
    }
    let g = gcd(&p, &derivative(&p));
    let (s, _) = divmod(&p, &g);
    let simple = poly_roots(&s.iter().map(|c| c.to_complex()).collect::<Vec<_>>())?;
    let inner = roots_with_multiplicity(&g)?;
    Ok(simple
        .into_iter()
        .map(|r| {
            let extra = inner
                .iter()
                .filter(|(q, _)| (q - r).norm() <= 1e-6 * (1.0 + r.norm()))
                .map(|(_, m)| *m)
                .max()
                .unwrap_or(0);
            (r, 1 + extra)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_exact, Layout};

    fn pres(s: &str) -> Presentation {
        let l = Layout::new(1, 1);
        Presentation::new(l, vec![parse_exact(s, l).unwrap()], Some(2))
    }

    fn close(p: &[Complex64], q: &[f64]) -> bool {
        p.iter()
            .zip(q)
            .all(|(a, b)| (a - Complex64::new(*b, 0.0)).norm() < 1e-12)
    }

    #[test]
    fn hyperbola_points() {
        for s in ["x^2 - y^2 - 1", "y^2 - x^2 - 1"] {
            let r = distinct_infinity_check(&pres(s)).unwrap();
            assert!(r.verdict);
            assert!(close(&r.points[0], &[0.0, 1.0, 1.0]));
            assert!(close(&r.points[1], &[0.0, 1.0, -1.0]));
        }
    }

    #[test]
    fn double_point() {
        let r = distinct_infinity_check(&pres("(x + y)^2 + x + y - 1")).unwrap();
        assert!(!r.distinct && !r.verdict);
        assert!(r.points.iter().all(|p| close(p, &[0.0, 1.0, -1.0])));
    }

    #[test]
    fn point_with_vanishing_x() {
        // top form x*y: points y = 0 and x = 0.
        let r = distinct_infinity_check(&pres("x*y + 1")).unwrap();
        assert!(r.distinct && !r.xm_nonzero && !r.verdict);
    }

    #[test]
    fn several_generators_unsupported() {
        let l = Layout::new(1, 2);
        let g = vec![
            parse_exact("y1^2 - x1", l).unwrap(),
            parse_exact("y2^2 - x1", l).unwrap(),
        ];
        let p = Presentation::new(l, g, None);
        assert!(matches!(distinct_infinity_check(&p), Err(Error::Unsupported(_))));
    }
}
