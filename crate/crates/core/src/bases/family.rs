//! Families of polynomials built from finitely many cosets `a·M[c x_S]`, with
//! exact set differences, cores and compliance.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bb::structured_heads;
use super::cm::{low_block, CmGenerators};
use super::quadrature::QuadratureSpec;
use crate::error::{Error, Result};
use crate::numeric::rationalize;
use crate::polyring::{
    monomials_of_degree, parse_exact, rat_to_f64, Coeff, Exact, ExactPoly, Gauss, Layout, Monomial, Polynomial,
};
use crate::variety::{FamilySpec, Variety};

/// `base · { prod_v (c_v x_v)^(e_v) : e in N^vars }`; a single element when
/// `vars` is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct Coset {
    pub base: ExactPoly,
    /// `(x-variable index, scale)`, sorted by index.
    pub vars: Vec<(usize, Exact)>,
    pub label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    Fixed(u32),
    AtLeast(u32),
}

fn pow(c: &Exact, n: i64) -> Exact {
    let mut r = Exact::one();
    for _ in 0..n.unsigned_abs() {
        r = r * c.clone();
    }
    if n < 0 {
        r.inv()
    } else {
        r
    }
}

fn render_scaled(l: Layout, v: usize, c: &Exact) -> String {
    let name = l.var_name(v, true);
    if c.is_one() {
        return name;
    }
    match c.render() {
        (s, true) => format!("{s}*{name}"),
        (s, false) => format!("({s})*{name}"),
    }
}

/// Splits off the largest x-monomial dividing every term.
fn x_content(p: &ExactPoly) -> (Vec<u32>, ExactPoly) {
    let nx = p.layout().nx;
    let mut mu = vec![u32::MAX; nx];
    for t in p.terms() {
        for (m, e) in mu.iter_mut().zip(&t.mono.0) {
            *m = (*m).min(*e);
        }
    }
    mu.iter_mut().for_each(|m| {
        if *m == u32::MAX {
            *m = 0
        }
    });
    let rest = Polynomial::from_terms(
        p.layout(),
        p.terms().iter().map(|t| {
            let mut e = t.mono.clone();
            for (x, m) in e.0.iter_mut().zip(&mu) {
                *x -= m;
            }
            (e, t.coeff.clone())
        }),
    );
    (mu, rest)
}

/// `lambda` with `a = lambda b`, if any.
fn proportion(a: &ExactPoly, b: &ExactPoly) -> Option<Exact> {
    if a.len() != b.len() || a.is_zero() {
        return None;
    }
    let t = &a.terms()[0];
    let c = b.coefficient(&t.mono);
    if c.is_zero() {
        return None;
    }
    let lambda = t.coeff.clone() / c;
    (b.scale(&lambda) == *a).then_some(lambda)
}

impl Coset {
    pub fn new(base: ExactPoly, vars: Vec<(usize, Exact)>, label: Option<String>) -> Result<Self> {
        let l = base.layout();
        if base.is_zero() {
            return Err(Error::Input("coset base must be nonzero".into()));
        }
        let mut vars = vars;
        vars.sort_by_key(|(v, _)| *v);
        for w in vars.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Input("coset variable listed twice".into()));
            }
        }
        if vars.iter().any(|(v, c)| *v >= l.nx || c.is_zero()) {
            return Err(Error::Input(
                "coset variables must be x-variables with nonzero scale".into(),
            ));
        }
        Ok(Coset { base, vars, label })
    }

    pub fn finite(base: ExactPoly) -> Self {
        Coset {
            base,
            vars: Vec::new(),
            label: None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.vars.is_empty()
    }

    /// Degree of the smallest element.
    pub fn degree(&self) -> u32 {
        self.base.degree().unwrap_or(0)
    }

    /// Display name of the multiplier.
    pub fn head(&self) -> String {
        match &self.label {
            Some(s) => s.clone(),
            None => self.base.display_short().to_string(),
        }
    }

    pub fn describe(&self) -> String {
        let mut h = self.head();
        if self.is_finite() {
            return h;
        }
        let core = describe_core(self.base.layout(), &self.vars);
        if h == "1" {
            return core;
        }
        if self.label.is_none() && self.base.len() > 1 {
            h = format!("({h})");
        }
        format!("{h}*{core}")
    }

    /// Element with exponents `e` (aligned with `vars`).
    pub fn element(&self, e: &[u32]) -> ExactPoly {
        let l = self.base.layout();
        let mut mono = vec![0; l.nvars()];
        let mut c = Exact::one();
        for ((v, s), k) in self.vars.iter().zip(e) {
            mono[*v] += k;
            c = c * pow(s, *k as i64);
        }
        self.base.mul_monomial(&Monomial(mono), &c)
    }

    /// Elements of degree at most `deg`.
    pub fn elements_upto(&self, deg: u32) -> Vec<ExactPoly> {
        let d0 = self.degree();
        if d0 > deg {
            return Vec::new();
        }
        (0..=deg - d0)
            .flat_map(|j| monomials_of_degree(self.vars.len(), j))
            .map(|m| self.element(&m.0))
            .collect()
    }

    fn apply(&self, bounds: &[Bound]) -> Coset {
        let mut e = Vec::new();
        let mut vars = Vec::new();
        for ((v, c), b) in self.vars.iter().zip(bounds) {
            match *b {
                Bound::Fixed(k) => e.push(k),
                Bound::AtLeast(k) => {
                    e.push(k);
                    vars.push((*v, c.clone()));
                }
            }
        }
        let keep = bounds.iter().all(|b| *b == Bound::AtLeast(0));
        Coset {
            base: self.element(&e),
            vars,
            label: if keep { self.label.clone() } else { None },
        }
    }

    /// The part of `self` lying in `other`, as bounds on `self`'s exponents.
    fn intersect(&self, other: &Coset) -> Result<Option<Vec<Bound>>> {
        let nx = self.base.layout().nx;
        let (mu_a, a_hat) = x_content(&self.base);
        let (mu_b, b_hat) = x_content(&other.base);
        let Some(lambda) = proportion(&a_hat, &b_hat) else {
            return Ok(None);
        };
        let mut bounds = vec![Bound::AtLeast(0); self.vars.len()];
        // elements agree iff lambda = prod sigma^f / prod rho^e
        let mut fixed = Exact::one();
        let mut differing = None;
        for v in 0..nx {
            let delta = mu_b[v] as i64 - mu_a[v] as i64;
            let pos = self.vars.iter().position(|(u, _)| *u == v);
            let sigma = other.vars.iter().find(|(u, _)| *u == v).map(|(_, c)| c);
            match (pos, sigma) {
                (None, None) if delta != 0 => return Ok(None),
                (None, None) => {}
                (Some(i), None) => {
                    if delta < 0 {
                        return Ok(None);
                    }
                    bounds[i] = Bound::Fixed(delta as u32);
                    fixed = fixed * pow(&self.vars[i].1, -delta);
                }
                (None, Some(s)) => {
                    if delta > 0 {
                        return Ok(None);
                    }
                    fixed = fixed * pow(s, -delta);
                }
                (Some(i), Some(s)) => {
                    let rho = &self.vars[i].1;
                    fixed = fixed * pow(rho, -delta);
                    if rho == s {
                        bounds[i] = Bound::AtLeast(delta.max(0) as u32);
                    } else if differing.is_some() {
                        return Err(Error::Unsupported(
                            "cosets with different scales on two shared variables".into(),
                        ));
                    } else {
                        differing = Some((i, s.clone() / rho.clone(), delta));
                    }
                }
            }
        }
        let Some((i, ratio, delta)) = differing else {
            return Ok((fixed == lambda).then_some(bounds));
        };
        // ratio^f = kappa for a single f >= max(0, -delta)
        let kappa = lambda / fixed;
        let r = ratio.to_complex().norm();
        if (r - 1.0).abs() < 1e-12 {
            return Err(Error::Unsupported(
                "cosets whose scales differ by a unit-modulus factor".into(),
            ));
        }
        let f = (kappa.to_complex().norm().ln() / r.ln()).round();
        if !f.is_finite() || f < (-delta).max(0) as f64 || f > 1e6 {
            return Ok(None);
        }
        if pow(&ratio, f as i64) != kappa {
            return Ok(None);
        }
        bounds[i] = Bound::Fixed((f as i64 + delta) as u32);
        Ok(Some(bounds))
    }

    /// `self` minus the box `bounds`, as disjoint cosets.
    fn subtract(&self, bounds: &[Bound]) -> Vec<Coset> {
        let free = vec![Bound::AtLeast(0); bounds.len()];
        let mut out = Vec::new();
        for (i, b) in bounds.iter().enumerate() {
            let fails: Vec<Bound> = match *b {
                Bound::Fixed(k) => (0..k).map(Bound::Fixed).chain([Bound::AtLeast(k + 1)]).collect(),
                Bound::AtLeast(k) => (0..k).map(Bound::Fixed).collect(),
            };
            for f in fails {
                let mut bs = bounds[..i].to_vec();
                bs.push(f);
                bs.extend_from_slice(&free[i + 1..]);
                out.push(self.apply(&bs));
            }
        }
        out
    }

    /// Elements of degree at least `t`.
    fn restrict_degree(&self, t: u32) -> Vec<Coset> {
        let d = self.degree();
        if d >= t {
            return vec![self.clone()];
        }
        if self.vars.is_empty() {
            return Vec::new();
        }
        let need = t - d;
        let mut out = Vec::new();
        let n = self.vars.len();
        for j in 0..need {
            let mut bs = vec![Bound::AtLeast(0); n];
            bs[0] = Bound::Fixed(j);
            out.extend(self.apply(&bs).restrict_degree(t));
        }
        let mut bs = vec![Bound::AtLeast(0); n];
        bs[0] = Bound::AtLeast(need);
        out.push(self.apply(&bs));
        out
    }
}

fn describe_core(l: Layout, vars: &[(usize, Exact)]) -> String {
    let names: Vec<String> = vars.iter().map(|(v, c)| render_scaled(l, *v, c)).collect();
    format!("M[{}]", names.join(","))
}

/// A finite union of pairwise disjoint cosets.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisFamily {
    pub layout: Layout,
    pub pieces: Vec<Coset>,
}

impl BasisFamily {
    pub fn new(layout: Layout, pieces: Vec<Coset>) -> Result<Self> {
        if pieces.iter().any(|p| p.base.layout() != layout) {
            return Err(Error::Input("family pieces use different variables".into()));
        }
        Ok(BasisFamily { layout, pieces })
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn describe(&self) -> Vec<String> {
        self.pieces.iter().map(Coset::describe).collect()
    }

    /// All elements of degree at most `deg`.
    pub fn elements_upto(&self, deg: u32) -> Vec<ExactPoly> {
        self.pieces.iter().flat_map(|p| p.elements_upto(deg)).collect()
    }

    /// Parses a family given by name in a variety file.
    pub fn from_spec(spec: &FamilySpec, layout: Layout) -> Result<Self> {
        let var_index = |s: &str| {
            (0..layout.nx)
                .find(|&i| layout.var_name(i, true) == s || layout.var_name(i, false) == s)
                .ok_or_else(|| Error::Input(format!("family {}: unknown x-variable {s}", spec.name)))
        };
        let mut pieces = Vec::new();
        for f in &spec.finite {
            pieces.push(Coset::finite(parse_exact(f, layout)?));
        }
        for c in &spec.cosets {
            let scales = match &c.scales {
                Some(s) if s.len() != c.vars.len() => {
                    return Err(Error::Input(format!(
                        "family {}: scales and vars differ in length",
                        spec.name
                    )))
                }
                Some(s) => s
                    .iter()
                    .map(|t| {
                        let p = parse_exact(t, layout)?;
                        if !p.is_constant() {
                            return Err(Error::Input(format!("scale {t} is not a constant")));
                        }
                        Ok(p.coefficient(&Monomial::one(layout.nvars())))
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => vec![Exact::one(); c.vars.len()],
            };
            let vars = c
                .vars
                .iter()
                .map(|v| var_index(v))
                .zip(scales)
                .map(|(v, s)| Ok((v?, s)));
            let vars = vars.collect::<Result<Vec<_>>>()?;
            pieces.push(Coset::new(parse_exact(&c.base, layout)?, vars, c.label.clone())?);
        }
        BasisFamily::new(layout, pieces)
    }
}

/// `M[V]`: `y^alpha · M[x]` for each standard `y`-exponent.
pub fn monomial_family(var: &Variety) -> BasisFamily {
    scaled_monomial_family(var, &Exact::one()).expect("unit scale")
}

/// `y^alpha · M[r x]`.
pub fn scaled_monomial_family(var: &Variety, r: &Exact) -> Result<BasisFamily> {
    if r.is_zero() {
        return Err(Error::Input("scale must be nonzero".into()));
    }
    let l = var.layout();
    let vars: Vec<(usize, Exact)> = (0..l.nx).map(|v| (v, r.clone())).collect();
    let pieces = var
        .decompose()
        .exponents
        .into_iter()
        .map(|a| {
            let mut e = vec![0; l.nx];
            e.extend(a);
            Coset {
                base: Polynomial::monomial(l, Monomial(e), Exact::one()),
                vars: vars.clone(),
                label: None,
            }
        })
        .collect();
    BasisFamily::new(l, pieces)
}

/// The cm spanning set: low standard monomials times `M[x_1..x_{M-1}]`,
/// and `v_i · M[x]`.
pub fn cm_family(var: &Variety, gens: &CmGenerators) -> BasisFamily {
    let l = var.layout();
    let front: Vec<(usize, Exact)> = (0..l.nx - 1).map(|v| (v, Exact::one())).collect();
    let all: Vec<(usize, Exact)> = (0..l.nx).map(|v| (v, Exact::one())).collect();
    let mut pieces: Vec<Coset> = low_block(var, gens.t)
        .into_iter()
        .map(|m| Coset {
            base: Polynomial::monomial(l, m, Exact::one()),
            vars: front.clone(),
            label: None,
        })
        .collect();
    for (i, v) in gens.v.iter().enumerate() {
        pieces.push(Coset {
            base: v.clone(),
            vars: all.clone(),
            label: Some(format!("v{}", i + 1)),
        });
    }
    BasisFamily { layout: l, pieces }
}

fn snap(x: f64) -> Option<BigRational> {
    if x.abs() < 1e-13 {
        return Some(BigRational::zero());
    }
    match rationalize(x, 1000) {
        Some(r) if (rat_to_f64(&r) - x).abs() <= 1e-12 => Some(r),
        _ => BigRational::from_float(x),
    }
}

fn exact_from(z: Complex64) -> Option<Exact> {
    Some(Exact::from_gauss(Gauss::new(snap(z.re)?, snap(z.im)?)))
}

/// The structured bb basis as `f_j · M[x]`, coefficients taken exactly from
/// their double values (snapped to nearby small rationals).
pub fn bb_family(var: &Variety, quad: &QuadratureSpec) -> Result<BasisFamily> {
    let l = var.layout();
    let all: Vec<(usize, Exact)> = (0..l.nx).map(|v| (v, Exact::one())).collect();
    let mut pieces = Vec::new();
    for (j, f) in structured_heads(var, quad)?.into_iter().enumerate() {
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                Ok((
                    t.mono.clone(),
                    exact_from(t.coeff).ok_or_else(|| Error::Numeric("non-finite coefficient".into()))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let base = Polynomial::from_terms(l, terms);
        pieces.push(Coset::new(base, all.clone(), Some(format!("b{}", j + 1)))?);
    }
    BasisFamily::new(l, pieces)
}

/// `F - G` as a union of disjoint cosets.
pub fn family_difference(f: &BasisFamily, g: &BasisFamily) -> Result<BasisFamily> {
    if f.layout != g.layout {
        return Err(Error::Input("families over different rings".into()));
    }
    let mut out = Vec::new();
    for p in &f.pieces {
        let mut rest = vec![p.clone()];
        for q in &g.pieces {
            let mut next = Vec::new();
            for r in rest {
                match r.intersect(q)? {
                    None => next.push(r),
                    Some(b) => next.extend(r.subtract(&b)),
                }
            }
            rest = next;
        }
        out.extend(rest);
    }
    Ok(BasisFamily {
        layout: f.layout,
        pieces: out,
    })
}

/// Core `M[c_v x_v : v in S]` with multipliers `A` from degree `t` on.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreDescriptor {
    pub vars: Vec<(usize, Exact)>,
    pub a: Vec<Coset>,
    pub t: u32,
}

impl CoreDescriptor {
    pub fn core_name(&self) -> String {
        match self.a.first() {
            Some(c) => describe_core(c.base.layout(), &self.vars),
            None => "M[]".into(),
        }
    }

    pub fn multipliers(&self) -> Vec<String> {
        self.a.iter().map(Coset::head).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoreResult {
    /// Finite family: every monoid is a core beyond degree `t`.
    Any {
        t: u32,
    },
    Found(CoreDescriptor),
    NoCore {
        witness: String,
    },
}

/// The largest scaled-monomial core of `F`, with the multiplier set at the
/// smallest threshold that works; `t` is reported as the least multiplier
/// degree.
pub fn find_core(f: &BasisFamily) -> Result<CoreResult> {
    let mut core: Vec<(usize, Exact)> = Vec::new();
    for p in &f.pieces {
        for (v, c) in &p.vars {
            match core.iter().find(|(u, _)| u == v) {
                Some((_, d)) if d != c => {
                    return Ok(CoreResult::NoCore {
                        witness: format!("{} appears with scales {d} and {c}", f.layout.var_name(*v, true)),
                    })
                }
                Some(_) => {}
                None => core.push((*v, c.clone())),
            }
        }
    }
    let top = f.pieces.iter().map(Coset::degree).max().unwrap_or(0);
    if core.is_empty() {
        let t = if f.is_empty() { 0 } else { top + 1 };
        return Ok(CoreResult::Any { t });
    }
    core.sort_by_key(|(v, _)| *v);
    let mut witness = String::new();
    for t in 0..=top + core.len() as u32 + 1 {
        let ft = BasisFamily {
            layout: f.layout,
            pieces: f.pieces.iter().flat_map(|p| p.restrict_degree(t)).collect(),
        };
        let mut a: Vec<Coset> = ft
            .pieces
            .iter()
            .map(|p| Coset {
                base: p.base.clone(),
                vars: core.clone(),
                label: p.label.clone(),
            })
            .collect();
        let generated = BasisFamily {
            layout: f.layout,
            pieces: a.clone(),
        };
        let extra = family_difference(&generated, &ft)?;
        if let Some(p) = extra.pieces.first() {
            witness = format!("threshold {t}: {} is generated but not in the family", p.describe());
            continue;
        }
        // drop multipliers generated by others
        let mut i = 0;
        while i < a.len() {
            let single = Coset::finite(a[i].base.clone());
            let mut covered = false;
            for (j, other) in a.iter().enumerate() {
                if j != i && single.intersect(other)?.is_some() {
                    covered = true;
                    break;
                }
            }
            if covered {
                a.remove(i);
            } else {
                i += 1;
            }
        }
        let t = a.iter().map(Coset::degree).min().unwrap_or(t);
        return Ok(CoreResult::Found(CoreDescriptor { vars: core, a, t }));
    }
    Ok(CoreResult::NoCore { witness })
}

/// Outcome of a compliance check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplianceVerdict {
    pub compliant: bool,
    pub core: Option<String>,
    /// Multipliers for `left - right`.
    pub a_left: Vec<String>,
    /// Multipliers for `right - left`.
    pub a_right: Vec<String>,
    pub t: Option<u32>,
    /// Both families have the same core outright.
    pub shared_core: bool,
    pub left_minus_right: Vec<String>,
    pub right_minus_left: Vec<String>,
    pub detail: String,
}

impl ComplianceVerdict {
    /// One-line summary.
    pub fn summary(&self) -> String {
        if self.compliant {
            format!(
                "COMPLIANT core={} A_left={{{}}} A_right={{{}}} t={}",
                self.core.as_deref().unwrap_or("any"),
                self.a_left.join(","),
                self.a_right.join(","),
                self.t.unwrap_or(0)
            )
        } else {
            format!("NOT COMPLIANT: {}", self.detail)
        }
    }
}

fn same_core(a: &CoreDescriptor, b: &CoreDescriptor) -> bool {
    a.vars == b.vars
}

fn describe_result(r: &CoreResult) -> String {
    match r {
        CoreResult::Any { t } => format!("finite (empty from degree {t})"),
        CoreResult::Found(c) => format!("core {}", c.core_name()),
        CoreResult::NoCore { witness } => format!("no core ({witness})"),
    }
}

/// Decides whether `F - G` and `G - F` share a core.
pub fn check_compliant(f: &BasisFamily, g: &BasisFamily) -> Result<ComplianceVerdict> {
    let d1 = family_difference(f, g)?;
    let d2 = family_difference(g, f)?;
    let c1 = find_core(&d1)?;
    let c2 = find_core(&d2)?;
    let shared_core = match (find_core(f)?, find_core(g)?) {
        (CoreResult::Found(a), CoreResult::Found(b)) => same_core(&a, &b),
        _ => false,
    };
    let heads = |r: &CoreResult| match r {
        CoreResult::Found(c) => c.multipliers(),
        _ => Vec::new(),
    };
    let thr = |r: &CoreResult| match r {
        CoreResult::Found(c) => Some(c.t),
        CoreResult::Any { t } => Some(*t),
        CoreResult::NoCore { .. } => None,
    };
    let (ok, core) = match (&c1, &c2) {
        (CoreResult::Found(a), CoreResult::Found(b)) => (same_core(a, b), Some(a.core_name())),
        (CoreResult::Found(a), CoreResult::Any { .. }) | (CoreResult::Any { .. }, CoreResult::Found(a)) => {
            (true, Some(a.core_name()))
        }
        (CoreResult::Any { .. }, CoreResult::Any { .. }) => (true, None),
        _ => (false, None),
    };
    let compliant = ok || shared_core;
    let t = match (thr(&c1), thr(&c2)) {
        (Some(a), Some(b)) if compliant => Some(a.max(b)),
        _ => None,
    };
    let detail = format!(
        "left-right: {}; right-left: {}",
        describe_result(&c1),
        describe_result(&c2)
    );
    Ok(ComplianceVerdict {
        compliant,
        core: if compliant { core } else { None },
        a_left: heads(&c1),
        a_right: heads(&c2),
        t,
        shared_core,
        left_minus_right: d1.describe(),
        right_minus_left: d2.describe(),
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::cm::cm_generators;
    use crate::bases::quadrature::torus_quadrature;
    use crate::variety::tests::variety;

    fn hyperbola() -> Variety {
        variety(1, 1, &["y^2 - x^2 - 1"])
    }

    fn cone() -> Variety {
        variety(2, 1, &["y1^2 - x2^2 - x1^2 - 1"])
    }

    fn key(ps: &[ExactPoly]) -> Vec<String> {
        let mut v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    fn brute_difference(f: &BasisFamily, g: &BasisFamily, deg: u32) -> Vec<String> {
        let ge = g.elements_upto(deg);
        let fe: Vec<ExactPoly> = f.elements_upto(deg).into_iter().filter(|p| !ge.contains(p)).collect();
        key(&fe)
    }

    fn check_against_brute(f: &BasisFamily, g: &BasisFamily) {
        let d = family_difference(f, g).unwrap();
        assert_eq!(key(&d.elements_upto(10)), brute_difference(f, g, 10));
    }

    #[test]
    fn hyperbola_differences() {
        let v = hyperbola();
        let b = monomial_family(&v);
        let c = cm_family(&v, &cm_generators(&v).unwrap());
        assert_eq!(family_difference(&b, &c).unwrap().describe(), vec!["x*M[x]", "y*M[x]"]);
        assert_eq!(
            family_difference(&c, &b).unwrap().describe(),
            vec!["v1*M[x]", "v2*M[x]"]
        );
        assert!(family_difference(&b, &b).unwrap().is_empty());
        check_against_brute(&b, &c);
        check_against_brute(&c, &b);
    }

    #[test]
    fn cores_of_basic_families() {
        let v = hyperbola();
        let CoreResult::Found(m) = find_core(&monomial_family(&v)).unwrap() else {
            panic!()
        };
        assert_eq!(
            (m.core_name().as_str(), m.multipliers(), m.t),
            ("M[x]", vec!["1".into(), "y".into()], 0)
        );
        let c = cm_family(&v, &cm_generators(&v).unwrap());
        let CoreResult::Found(k) = find_core(&c).unwrap() else {
            panic!()
        };
        assert_eq!((k.multipliers(), k.t), (vec!["v1".to_string(), "v2".into()], 1));
    }

    #[test]
    fn mixed_cone_family_has_no_core() {
        let v = cone();
        let l = v.layout();
        let gens = CmGenerators::from_user(
            &v,
            vec![
                parse_exact("sqrt(1/2)*(y1 + x2)", l).unwrap(),
                parse_exact("sqrt(1/2)*(y1 - x2)", l).unwrap(),
            ],
        )
        .unwrap();
        let c = cm_family(&v, &gens);
        assert!(matches!(find_core(&c).unwrap(), CoreResult::NoCore { .. }));
        let b = monomial_family(&v);
        let r = check_compliant(&b, &c).unwrap();
        assert!(r.compliant && !r.shared_core);
        assert_eq!(r.core.as_deref(), Some("M[x1,x2]"));
        assert_eq!(
            (r.a_left.clone(), r.a_right.clone(), r.t),
            (vec!["x2".into(), "y".into()], vec!["v1".into(), "v2".into()], Some(1))
        );
        check_against_brute(&b, &c);
        check_against_brute(&c, &b);
    }

    #[test]
    fn cm_and_monomials_compliant() {
        let v = hyperbola();
        let b = monomial_family(&v);
        let c = cm_family(&v, &cm_generators(&v).unwrap());
        let r = check_compliant(&c, &b).unwrap();
        assert_eq!(r.summary(), "COMPLIANT core=M[x] A_left={v1,v2} A_right={x,y} t=1");
        assert_eq!(check_compliant(&b, &c).unwrap().compliant, r.compliant);
    }

    #[test]
    fn scaled_monomials_not_compliant() {
        let v = Variety::affine(1);
        let b = monomial_family(&v);
        let c = scaled_monomial_family(&v, &Exact::from_ratio(3, 1)).unwrap();
        assert_eq!(family_difference(&b, &c).unwrap().describe(), vec!["x*M[x]"]);
        assert_eq!(family_difference(&c, &b).unwrap().describe(), vec!["3*x*M[3*x]"]);
        check_against_brute(&b, &c);
        check_against_brute(&c, &b);
        assert!(!check_compliant(&b, &c).unwrap().compliant);
        assert!(!check_compliant(&c, &b).unwrap().compliant);
    }

    #[test]
    fn bb_and_monomials_share_core() {
        let v = hyperbola();
        let q = torus_quadrature(&v, 256).unwrap();
        let bb = bb_family(&v, &q).unwrap();
        assert_eq!(bb.pieces[0].base, Polynomial::one(v.layout()));
        let r = check_compliant(&bb, &monomial_family(&v)).unwrap();
        assert!(r.compliant && r.shared_core);
        assert_eq!(
            (r.a_left.clone(), r.a_right.clone()),
            (vec!["b2".to_string()], vec!["y".to_string()])
        );
    }

    #[test]
    fn scale_overlap_is_a_single_element() {
        // 2x M[2x] and 8x^3 M[x]: only x-powers with matching coefficients
        let l = Layout::new(1, 0);
        let p = Coset::new(parse_exact("2*x", l).unwrap(), vec![(0, Exact::from_ratio(2, 1))], None).unwrap();
        let q = Coset::new(parse_exact("8*x^3", l).unwrap(), vec![(0, Exact::one())], None).unwrap();
        let f = BasisFamily::new(l, vec![p]).unwrap();
        let g = BasisFamily::new(l, vec![q]).unwrap();
        assert_eq!(
            family_difference(&f, &g).unwrap().describe(),
            vec!["2*x", "4*x^2", "16*x^4*M[2*x]"]
        );
        check_against_brute(&f, &g);
        check_against_brute(&g, &f);
    }

    #[test]
    fn spec_family_parses() {
        let spec = FamilySpec {
            name: "t".into(),
            finite: vec!["1".into()],
            cosets: vec![crate::variety::CosetSpec {
                base: "x".into(),
                vars: vec!["x".into()],
                scales: Some(vec!["1/2".into()]),
                label: None,
            }],
        };
        let f = BasisFamily::from_spec(&spec, Layout::new(1, 0)).unwrap();
        assert_eq!(f.describe(), vec!["1", "x*M[1/2*x]"]);
    }
}
