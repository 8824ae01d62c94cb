//! Sparse multivariate polynomials over the variable layout
//! `(x1..xM, y1..yK)`, ordered by graded reverse lexicographic order in the
//! "rightmost larger exponent wins" form, with normal forms modulo a list of
//! generators.

mod coeff;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use coeff::rat_to_f64;
pub use coeff::{Coeff, Exact, Gauss};
pub use parse::{parse_exact, parse_float};

/// Variable layout: `nx` x-variables followed by `ny` y-variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    pub nx: usize,
    pub ny: usize,
}

impl Layout {
    pub fn new(nx: usize, ny: usize) -> Self {
        Layout { nx, ny }
    }

    pub fn nvars(&self) -> usize {
        self.nx + self.ny
    }

    /// Name of variable `i`, using `x`/`y` when that block has one variable
    /// and `short` is set.
    pub fn var_name(&self, i: usize, short: bool) -> String {
        if i < self.nx {
            if short && self.nx == 1 {
                "x".into()
            } else {
                format!("x{}", i + 1)
            }
        } else if short && self.ny == 1 {
            "y".into()
        } else {
            format!("y{}", i - self.nx + 1)
        }
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (e, v) in self.0.iter().zip(z) {
            if *e > 0 {
                acc *= v.powu(*e);
            }
        }
        acc
    }

    pub fn render(&self, layout: &Layout, short: bool) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                let name = layout.var_name(i, short);
                if *e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Graded reverse lexicographic comparison: total degree first, then the
/// last differing exponent decides, larger exponent wins. So `y^2 > x*y > x^2`.
pub fn cmp_grevlex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::Input(format!(
            "monomial lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(grevlex(a, b))
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
            if x != y {
                return x.cmp(y);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len(), other.len());
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `n` variables of total degree exactly `deg`, ascending.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if deg == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out.sort();
    out
}

/// A term `coeff * monomial`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub coeff: C,
    pub mono: Monomial,
}

/// Polynomial with terms kept sorted in descending monomial order and no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C: Coeff> {
    layout: Layout,
    terms: Vec<Term<C>>,
}

pub type ExactPoly = Polynomial<Exact>;
pub type FloatPoly = Polynomial<Complex64>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero(layout: Layout) -> Self {
        Polynomial {
            layout,
            terms: Vec::new(),
        }
    }

    pub fn constant(layout: Layout, c: C) -> Self {
        Self::monomial(layout, Monomial::one(layout.nvars()), c)
    }

    pub fn one(layout: Layout) -> Self {
        Self::constant(layout, C::one())
    }

    pub fn monomial(layout: Layout, mono: Monomial, c: C) -> Self {
        assert_eq!(mono.len(), layout.nvars(), "monomial length mismatch");
        if c.is_zero() {
            return Self::zero(layout);
        }
        Polynomial {
            layout,
            terms: vec![Term { coeff: c, mono }],
        }
    }

    pub fn var(layout: Layout, i: usize) -> Self {
        Self::monomial(layout, Monomial::var(layout.nvars(), i, 1), C::one())
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(layout: Layout, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), layout.nvars(), "monomial length mismatch");
            match map.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(layout, map)
    }

    fn from_map(layout: Layout, map: BTreeMap<Monomial, C>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        Polynomial { layout, terms }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn leading_term(&self) -> Result<&Term<C>> {
        self.terms
            .first()
            .ok_or_else(|| Error::Domain("leading term of the zero polynomial".into()))
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms
            .iter()
            .find(|t| &t.mono == m)
            .map_or_else(C::zero, |t| t.coeff.clone())
    }

    /// Sum of the terms of maximal total degree.
    pub fn top_homogeneous(&self) -> Result<Self> {
        let d = self
            .degree()
            .ok_or_else(|| Error::Domain("top form of the zero polynomial".into()))?;
        Ok(Polynomial {
            layout: self.layout,
            terms: self.terms.iter().filter(|t| t.mono.degree() == d).cloned().collect(),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.layout);
        }
        Polynomial {
            layout: self.layout,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone() * c.clone(),
                    mono: t.mono.clone(),
                })
                .filter(|t| !t.coeff.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        // Multiplying by a monomial preserves the term order.
        let mut p = self.scale(c);
        for t in &mut p.terms {
            t.mono = t.mono.mul(m);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.layout);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|t| t.coeff.to_complex() * t.mono.eval(z)).sum()
    }

    /// Exact evaluation at an exact point.
    pub fn eval_exact(&self, z: &[C]) -> C {
        let mut acc = C::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (e, zi) in t.mono.0.iter().zip(z) {
                for _ in 0..*e {
                    v = v * zi.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.layout, self.terms.iter().map(|t| (t.mono.clone(), f(&t.coeff))))
    }

    pub fn to_float(&self) -> FloatPoly {
        self.map_coeffs(|c| c.to_complex())
    }

    /// Drops coefficients with modulus below `tol`.
    pub fn chop(&self, tol: f64) -> Self {
        Polynomial {
            layout: self.layout,
            terms: self
                .terms
                .iter()
                .filter(|t| t.coeff.magnitude() >= tol)
                .cloned()
                .collect(),
        }
    }

    fn check_layout(&self, o: &Self) {
        assert_eq!(self.layout, o.layout, "polynomials over different layouts");
    }

    fn combine(&self, o: &Self, negate: bool) -> Self {
        self.check_layout(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.mono.cmp(&b.mono),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = &o.terms[j];
                    let c = if negate { -t.coeff.clone() } else { t.coeff.clone() };
                    out.push(Term {
                        coeff: c,
                        mono: t.mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let b = o.terms[j].coeff.clone();
                    let c = if negate {
                        self.terms[i].coeff.clone() - b
                    } else {
                        self.terms[i].coeff.clone() + b
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: self.terms[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            layout: self.layout,
            terms: out,
        }
    }

    fn product(&self, o: &Self) -> Self {
        self.check_layout(o);
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for a in &self.terms {
            for b in &o.terms {
                let m = a.mono.mul(&b.mono);
                let c = a.coeff.clone() * b.coeff.clone();
                match map.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.layout, map)
    }

    /// Multivariate division by `gens`.
    ///
    /// When several leading terms divide the current leading term, the
    /// generator with the largest leading monomial is used.
    pub fn divide(&self, gens: &[Self]) -> Result<Division<C>> {
        let mut leads = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.layout != self.layout {
                return Err(Error::Input(format!("generator {i} has a different layout")));
            }
            let lt = g
                .leading_term()
                .map_err(|_| Error::Input(format!("generator {i} is zero")))?;
            leads.push((lt.mono.clone(), lt.coeff.clone()));
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by(|&a, &b| leads[b].0.cmp(&leads[a].0).then(a.cmp(&b)));

        let mut work: BTreeMap<Monomial, C> = self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())).collect();
        let mut quotients: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); gens.len()];
        let mut rem = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            let hit = order.iter().copied().find(|&i| leads[i].0.divides(&m));
            let Some(i) = hit else {
                rem.push(Term { coeff: c, mono: m });
                continue;
            };
            let q = leads[i].0.quotient_of(&m);
            let f = c / leads[i].1.clone();
            for t in gens[i].terms.iter().skip(1) {
                let mm = t.mono.mul(&q);
                let v = f.clone() * t.coeff.clone();
                let entry = work.entry(mm);
                match entry {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let nv = e.get().clone() - v;
                        if nv.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-v);
                    }
                }
            }
            let slot = quotients[i].entry(q).or_insert_with(C::zero);
            *slot = slot.clone() + f;
        }
        Ok(Division {
            quotients: quotients.into_iter().map(|m| Self::from_map(self.layout, m)).collect(),
            remainder: Polynomial {
                layout: self.layout,
                terms: rem,
            },
        })
    }

    /// Remainder of division by `gens`.
    pub fn normal_form(&self, gens: &[Self]) -> Result<Self> {
        Ok(self.divide(gens)?.remainder)
    }

    /// True when no term is divisible by a generator's leading monomial.
    pub fn is_reduced(&self, gens: &[Self]) -> bool {
        let leads: Vec<&Monomial> = gens
            .iter()
            .filter_map(|g| g.leading_term().ok())
            .map(|t| &t.mono)
            .collect();
        self.terms.iter().all(|t| leads.iter().all(|l| !l.divides(&t.mono)))
    }

    pub fn display(&self) -> PolyDisplay<'_, C> {
        PolyDisplay { p: self, short: false }
    }

    /// Display with `x`/`y` names when a block has a single variable.
    pub fn display_short(&self) -> PolyDisplay<'_, C> {
        PolyDisplay { p: self, short: true }
    }
}

/// Quotients and remainder of a division.
#[derive(Clone, Debug)]
pub struct Division<C: Coeff> {
    pub quotients: Vec<Polynomial<C>>,
    pub remainder: Polynomial<C>,
}

/// `[p*q]`, the product reduced modulo `gens`.
pub fn star<C: Coeff>(p: &Polynomial<C>, q: &Polynomial<C>, gens: &[Polynomial<C>]) -> Result<Polynomial<C>> {
    (p * q).normal_form(gens)
}

/// Outcome of the pairwise S-polynomial test.
#[derive(Clone, Debug)]
pub struct SPolyReport<C: Coeff> {
    pub ok: bool,
    /// `(i, j, remainder)` for pairs whose S-polynomial does not reduce to 0.
    pub failures: Vec<(usize, usize, Polynomial<C>)>,
}

/// Checks that every S-polynomial of a generator pair reduces to zero.
pub fn s_poly_check<C: Coeff>(gens: &[Polynomial<C>]) -> Result<SPolyReport<C>> {
    let mut failures = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let s = s_polynomial(&gens[i], &gens[j])?;
            let r = s.normal_form(gens)?;
            if !r.is_zero() {
                failures.push((i, j, r));
            }
        }
    }
    Ok(SPolyReport {
        ok: failures.is_empty(),
        failures,
    })
}

pub fn s_polynomial<C: Coeff>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    let lf = f.leading_term()?;
    let lg = g.leading_term()?;
    let l = lf.mono.lcm(&lg.mono);
    let a = f.mul_monomial(&lf.mono.quotient_of(&l), &(C::one() / lf.coeff.clone()));
    let b = g.mul_monomial(&lg.mono.quotient_of(&l), &(C::one() / lg.coeff.clone()));
    Ok(&a - &b)
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.combine(o, false)
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.combine(o, true)
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: &Polynomial<C>) -> Polynomial<C> {
        self.product(o)
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: Polynomial<C>) -> Polynomial<C> {
        self.combine(&o, false)
    }
}

impl<C: Coeff> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: Polynomial<C>) -> Polynomial<C> {
        self.combine(&o, true)
    }
}

impl<C: Coeff> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: Polynomial<C>) -> Polynomial<C> {
        self.product(&o)
    }
}

/// Canonical text form: descending order, parseable by [`parse_exact`].
pub struct PolyDisplay<'a, C: Coeff> {
    p: &'a Polynomial<C>,
    short: bool,
}

impl<C: Coeff> fmt::Display for PolyDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.p.terms.iter().enumerate() {
            let (text, simple) = t.coeff.render();
            let is_const = t.mono.degree() == 0;
            let mono = t.mono.render(&self.p.layout, self.short);
            let (neg, body) = if simple {
                match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                }
            } else {
                (false, format!("({text})"))
            };
            let piece = if is_const {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (k, neg) {
                (0, true) => write!(f, "-{piece}")?,
                (0, false) => write!(f, "{piece}")?,
                (_, true) => write!(f, " - {piece}")?,
                (_, false) => write!(f, " + {piece}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2() -> Layout {
        Layout::new(1, 1)
    }

    fn p(s: &str) -> ExactPoly {
        parse_exact(s, l2()).unwrap()
    }

    #[test]
    fn degree_two_chain() {
        let mut ms = monomials_of_degree(2, 2);
        ms.sort();
        assert_eq!(
            ms,
            vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]
        );
        assert_eq!(
            cmp_grevlex(&Monomial(vec![2, 0]), &Monomial(vec![0, 2])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            cmp_grevlex(&Monomial(vec![1, 1]), &Monomial(vec![1, 1])).unwrap(),
            Ordering::Equal
        );
        assert!(cmp_grevlex(&Monomial(vec![1]), &Monomial(vec![1, 0])).is_err());
    }

    #[test]
    fn leading_terms() {
        assert_eq!(p("y^2 - x^2 - 1").leading_term().unwrap().mono, Monomial(vec![0, 2]));
        let c = p("5");
        assert_eq!(c.leading_term().unwrap().coeff, Exact::from_i64(5));
        assert_eq!(p("x^2*y + x*y^2").leading_term().unwrap().mono, Monomial(vec![1, 2]));
        assert!(ExactPoly::zero(l2()).leading_term().is_err());
    }

    #[test]
    fn hyperbola_reductions() {
        let g = vec![p("y^2 - x^2 - 1")];
        assert_eq!(p("y^2").normal_form(&g).unwrap(), p("x^2 + 1"));
        assert_eq!(p("x^3").normal_form(&g).unwrap(), p("x^3"));
        assert_eq!(star(&p("1"), &p("y^3"), &g).unwrap(), p("y^3").normal_form(&g).unwrap());
        assert_eq!(star(&p("x^4"), &p("y"), &g).unwrap(), p("x^4*y"));
    }

    #[test]
    fn top_forms() {
        assert_eq!(p("y^2 - x^2 - 1").top_homogeneous().unwrap(), p("y^2 - x^2"));
        assert_eq!(p("x + 1").top_homogeneous().unwrap(), p("x"));
        assert_eq!(p("(x + y)^2 + x + y - 1").top_homogeneous().unwrap(), p("(x + y)^2"));
        assert!(ExactPoly::zero(l2()).top_homogeneous().is_err());
    }

    #[test]
    fn zero_generator_rejected() {
        assert!(p("x").normal_form(&[ExactPoly::zero(l2())]).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(p("1 - x^2 + y^2").to_string(), "y1^2 - x1^2 + 1");
        assert_eq!(p("-y/2 + 3").display_short().to_string(), "-1/2*y + 3");
        let v = p("sqrt(1/2)*(y - x)");
        assert_eq!(v.to_string(), "(1/2*sqrt(2))*y1 + (-1/2*sqrt(2))*x1");
    }
}
