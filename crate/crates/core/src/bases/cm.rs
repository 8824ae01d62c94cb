//! Sheet polynomials `v_i` and the graded spanning set built from them.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{BasisKind, GradedBasis};
use crate::error::{Error, Result};
use crate::numeric::{poly_roots, rationalize};
use crate::polyring::{monomials_of_degree, star, Coeff, Exact, ExactPoly, Gauss, Monomial, Polynomial};
use crate::variety::{distinct_infinity_check, Variety};

const MAX_DEN: i64 = 1 << 20;

/// The `d` sheet polynomials of common degree `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CmGenerators {
    pub v: Vec<ExactPoly>,
    pub t: u32,
}

impl CmGenerators {
    /// Wraps user-supplied polynomials after checking count and degrees.
    pub fn from_user(var: &Variety, v: Vec<ExactPoly>) -> Result<Self> {
        if v.len() != var.d() {
            return Err(Error::Input(format!(
                "expected {} sheet polynomials, got {}",
                var.d(),
                v.len()
            )));
        }
        let degs: Vec<u32> = v.iter().map(|p| p.degree().unwrap_or(0)).collect();
        if v.iter().any(|p| p.is_zero()) || degs.iter().any(|&d| d != degs[0]) || degs[0] == 0 {
            return Err(Error::Input(
                "sheet polynomials must be nonzero with one common positive degree".into(),
            ));
        }
        if v.iter().any(|p| p.layout() != var.layout()) {
            return Err(Error::Input("sheet polynomials use the wrong variables".into()));
        }
        Ok(CmGenerators { t: degs[0], v })
    }
}

fn gauss_root(z: Complex64) -> Option<Exact> {
    Some(Exact::from_gauss(Gauss::new(
        rationalize(z.re, MAX_DEN)?,
        rationalize(z.im, MAX_DEN)?,
    )))
}

/// Builds `v_i = c_i (y - r_i x_M)` from the linear factors of the top form
/// on the line at infinity, roots ordered by decreasing real part, with
/// `c_i` chosen so that `[v_i^2]` has coefficient 1 on `x_M^2`.
pub fn cm_generators(var: &Variety) -> Result<CmGenerators> {
    let l = var.layout();
    let inf = distinct_infinity_check(&var.presentation())?;
    if !inf.verdict {
        return Err(Error::NotDistinct(format!(
            "distinct = {}, x_M nonzero = {}, points = {} of {}",
            inf.distinct,
            inf.xm_nonzero,
            inf.points.len(),
            inf.expected
        )));
    }
    let top = crate::variety::restricted_top_form(&var.generators()[0])?;
    let cf: Vec<Complex64> = top.iter().map(|c| c.to_complex()).collect();
    let mut roots = poly_roots(&cf)?;
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    let xm = l.nx - 1;
    let y = l.nx;
    let mut v = Vec::new();
    for r in roots {
        let re = gauss_root(r).ok_or_else(|| Error::Numeric("root is not finite".into()))?;
        let val = top
            .iter()
            .rev()
            .fold(Exact::zero(), |acc, c| acc * re.clone() + c.clone());
        if !val.is_zero() {
            return Err(Error::Unsupported(format!(
                "root {r} at infinity is not a Gaussian rational; supply v_polys"
            )));
        }
        let lin = &Polynomial::var(l, y) - &Polynomial::var(l, xm).scale(&re);
        let sq = star(&lin, &lin, var.generators())?;
        let kappa = sq.coefficient(&Monomial::var(l.nvars(), xm, 2));
        let k = kappa
            .as_rational()
            .ok_or_else(|| Error::Unsupported(format!("normalising constant {kappa} is not rational")))?;
        if k.is_zero() {
            return Err(Error::Unsupported("factor squares to zero on x_M^2".into()));
        }
        let root = Exact::sqrt_rational(k).ok_or_else(|| Error::Unsupported("radicand too large".into()))?;
        v.push((lin, root));
    }
    if Exact::common_radicand(v.iter().map(|(_, r)| r)).is_none() {
        return Err(Error::Unsupported(
            "normalising constants need different square roots".into(),
        ));
    }
    let v = v.into_iter().map(|(p, r)| p.scale(&r.inv())).collect();
    Ok(CmGenerators { v, t: 1 })
}

/// The cm spanning set up to degree `k`: `x'^beta a` for `a` in the
/// low-degree standard set `{x_M^l y^alpha : l + |alpha| < t}` (with `x'`
/// the first `M-1` variables), and `x^beta v_i`.
pub fn cm_basis(var: &Variety, gens: &CmGenerators, k: usize) -> Result<GradedBasis<Exact>> {
    let l = var.layout();
    let n = l.nvars();
    let mut elems = Vec::new();
    for low in low_block(var, gens.t) {
        for j in 0..=k.saturating_sub(low.degree() as usize) {
            if low.degree() as usize > k {
                break;
            }
            for mx in monomials_of_degree(l.nx - 1, j as u32) {
                let mut e = mx.0;
                e.resize(n, 0);
                elems.push(Polynomial::monomial(l, low.mul(&Monomial(e)), Exact::one()));
            }
        }
    }
    let t = gens.t as usize;
    if t <= k {
        for j in 0..=k - t {
            for mx in monomials_of_degree(l.nx, j as u32) {
                let mut e = mx.0;
                e.resize(n, 0);
                let m = Monomial(e);
                for vi in &gens.v {
                    elems.push(vi.mul_monomial(&m, &Exact::one()));
                }
            }
        }
    }
    Ok(GradedBasis::from_elements(BasisKind::Cm, k, elems))
}

/// Standard monomials `x_M^l y^alpha` with `l + |alpha| <= t - 1`.
pub(crate) fn low_block(var: &Variety, t: u32) -> Vec<Monomial> {
    let l = var.layout();
    let xm = l.nx - 1;
    var.monomial_basis(t.saturating_sub(1))
        .into_iter()
        .filter(|m| t > 0 && m.0[..xm].iter().all(|&e| e == 0))
        .collect()
}

/// Check of one product `[v_i * v_j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductCheck {
    pub i: usize,
    pub j: usize,
    pub product: String,
    /// Coefficient of `x_M^{2t}`.
    pub top_coeff: String,
    pub degree_ok: bool,
    pub pass: bool,
    /// Degree-`2t` terms other than `x_M^{2t}` not divisible by any of
    /// `x_1..x_{M-1}`.
    pub stray: Vec<String>,
    /// `(k, q_k)` with `[v_i v_j] - delta_ij x_M^{2t} = sum_k x_k q_k + q_0`.
    pub witnesses: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CmReport {
    pub t: u32,
    pub checks: Vec<ProductCheck>,
    pub pass: bool,
}

/// Verifies that each `[v_i^2]` has unit coefficient on `x_M^{2t}` and each
/// `[v_i v_j]`, `i != j`, has none, all products staying in degree `2t`.
pub fn verify_cm_products(gens: &CmGenerators, var: &Variety) -> Result<CmReport> {
    let l = var.layout();
    let n = l.nvars();
    let xm = l.nx - 1;
    let t = gens.t;
    let top = Monomial::var(n, xm, 2 * t);
    let mut checks = Vec::new();
    for i in 0..gens.v.len() {
        for j in i..gens.v.len() {
            let p = star(&gens.v[i], &gens.v[j], var.generators())?;
            let c = p.coefficient(&top);
            let want = if i == j { Exact::one() } else { Exact::zero() };
            let degree_ok = p.degree().unwrap_or(0) <= 2 * t;
            let rest = &p - &Polynomial::monomial(l, top.clone(), want.clone());
            let stray = rest
                .terms()
                .iter()
                .filter(|tm| tm.mono.degree() == 2 * t && tm.mono.0[..xm].iter().all(|&e| e == 0))
                .map(|tm| {
                    Polynomial::monomial(l, tm.mono.clone(), tm.coeff.clone())
                        .display_short()
                        .to_string()
                })
                .collect();
            let mut parts: Vec<Vec<(Monomial, Exact)>> = vec![Vec::new(); xm + 1];
            for tm in rest.terms() {
                match (0..xm).find(|&k| tm.mono.0[k] > 0) {
                    Some(k) => {
                        let mut e = tm.mono.clone();
                        e.0[k] -= 1;
                        parts[k + 1].push((e, tm.coeff.clone()));
                    }
                    None => parts[0].push((tm.mono.clone(), tm.coeff.clone())),
                }
            }
            let witnesses = parts
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k, Polynomial::from_terms(l, v).display_short().to_string()))
                .collect();
            checks.push(ProductCheck {
                i: i + 1,
                j: j + 1,
                product: p.display_short().to_string(),
                top_coeff: c.to_string(),
                degree_ok,
                pass: degree_ok && c == want,
                stray,
                witnesses,
            });
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(CmReport { t, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_exact;
    use crate::variety::tests::variety;

    fn hyperbola() -> Variety {
        variety(1, 1, &["y^2 - x^2 - 1"])
    }

    #[test]
    fn hyperbola_generators() {
        let v = hyperbola();
        let g = cm_generators(&v).unwrap();
        let l = v.layout();
        assert_eq!(g.t, 1);
        assert_eq!(g.v[0], parse_exact("sqrt(1/2)*(y - x)", l).unwrap());
        assert_eq!(g.v[1], parse_exact("sqrt(1/2)*(y + x)", l).unwrap());
        let p = star(&g.v[0], &g.v[1], v.generators()).unwrap();
        assert_eq!(p, parse_exact("1/2", l).unwrap());
    }

    #[test]
    fn products_pass_for_scaled_factors() {
        let v = hyperbola();
        let g = cm_generators(&v).unwrap();
        let r = verify_cm_products(&g, &v).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks[0].product, "-x*y + x^2 + 1/2");
    }

    #[test]
    fn unscaled_factor_fails() {
        let v = hyperbola();
        let l = v.layout();
        let g = CmGenerators::from_user(
            &v,
            vec![parse_exact("y - x", l).unwrap(), parse_exact("y + x", l).unwrap()],
        )
        .unwrap();
        let r = verify_cm_products(&g, &v).unwrap();
        assert!(!r.pass);
        assert_eq!(r.checks[0].top_coeff, "2");
    }

    #[test]
    fn repeated_point_rejected() {
        let v = variety(1, 1, &["(x + y)^2 + x + y - 1"]);
        assert!(matches!(cm_generators(&v), Err(Error::NotDistinct(_))));
    }

    #[test]
    fn cone_user_generators() {
        let v = variety(2, 1, &["y1^2 - x2^2 - x1^2 - 1"]);
        let l = v.layout();
        let user = vec![
            parse_exact("sqrt(1/2)*(y1 + x2)", l).unwrap(),
            parse_exact("sqrt(1/2)*(y1 - x2)", l).unwrap(),
        ];
        let g = CmGenerators::from_user(&v, user.clone()).unwrap();
        assert!(verify_cm_products(&g, &v).unwrap().pass);
        let auto = cm_generators(&v).unwrap();
        assert_eq!(auto.v, vec![user[1].clone(), user[0].clone()]);
        let b = cm_basis(&v, &g, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(b.slices[k].len() as u64, v.count(k as u32).n_eq_k);
        }
    }

    #[test]
    fn hyperbola_spanning_set() {
        let v = hyperbola();
        let g = cm_generators(&v).unwrap();
        let b = cm_basis(&v, &g, 3).unwrap();
        assert_eq!(b.slices.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
        assert_eq!(b.slices[1][0], g.v[0]);
    }
}
