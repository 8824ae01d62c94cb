//! Coefficient fields: exact `Q(i)(sqrt D)` numbers and double-precision complex.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations needed by polynomial arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn to_complex(&self) -> Complex64;
    fn conj(&self) -> Self;

    fn magnitude(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Text for use as a multiplicative factor, plus whether it can be
    /// written without parentheses. Signs of simple values are included.
    fn render(&self) -> (String, bool);
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn render(&self) -> (String, bool) {
        if self.im == 0.0 {
            (format!("{}", self.re), true)
        } else if self.re == 0.0 {
            (format!("{}*i", self.im), true)
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            (format!("{} {} {}*i", self.re, sign, self.im.abs()), false)
        }
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gauss {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Gauss::real(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn scale(&self, r: &BigRational) -> Gauss {
        Gauss::new(&self.re * r, &self.im * r)
    }

    pub fn neg(&self) -> Gauss {
        Gauss::new(-&self.re, -&self.im)
    }

    pub fn conj(&self) -> Gauss {
        Gauss::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Panics on zero.
    pub fn inv(&self) -> Gauss {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        Gauss::new(&self.re / &n, -&self.im / &n)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn pieces(&self, suffix: &str, out: &mut Vec<(bool, String)>) {
        if !self.re.is_zero() {
            out.push(piece(&self.re, suffix, false));
        }
        if !self.im.is_zero() {
            out.push(piece(&self.im, suffix, true));
        }
    }
}

fn piece(r: &BigRational, suffix: &str, imag: bool) -> (bool, String) {
    let neg = r.is_negative();
    let a = r.abs();
    let mut factors = Vec::new();
    if !(a.is_one() && (imag || !suffix.is_empty())) {
        factors.push(a.to_string());
    }
    if imag {
        factors.push("i".to_string());
    }
    if !suffix.is_empty() {
        factors.push(suffix.to_string());
    }
    (neg, factors.join("*"))
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extreme magnitudes: fall back to a scaled quotient.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact number `a + b*sqrt(D)` with `a, b` Gaussian rationals and `D` a
/// squarefree integer at least 2. `rad == 0` iff `b == 0`.
///
/// Values carrying two different radicands cannot be combined; doing so
/// panics. Inputs are checked for this up front by the parser and loader.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exact {
    a: Gauss,
    b: Gauss,
    rad: u64,
}

impl Exact {
    pub fn from_gauss(a: Gauss) -> Self {
        Exact {
            a,
            b: Gauss::zero(),
            rad: 0,
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Exact::from_gauss(Gauss::real(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Exact::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn i() -> Self {
        Exact::from_gauss(Gauss::new(BigRational::zero(), BigRational::one()))
    }

    /// Exact value of a finite double.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Exact::from_rational)
    }

    pub fn from_complex(z: Complex64) -> Option<Self> {
        Some(Exact::from_gauss(Gauss::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        )))
    }

    fn build(a: Gauss, b: Gauss, rad: u64) -> Self {
        if b.is_zero() {
            Exact { a, b, rad: 0 }
        } else {
            Exact { a, b, rad }
        }
    }

    pub fn rational_part(&self) -> &Gauss {
        &self.a
    }

    pub fn radical_part(&self) -> &Gauss {
        &self.b
    }

    /// Squarefree radicand, or 0 when the value lies in `Q(i)`.
    pub fn radicand(&self) -> u64 {
        self.rad
    }

    pub fn as_gauss(&self) -> Option<&Gauss> {
        (self.rad == 0).then_some(&self.a)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.as_gauss().filter(|g| g.is_real()).map(|g| &g.re)
    }

    /// `sqrt(q)` for a rational `q`; `None` if the radicand does not fit in
    /// 64 bits. Negative inputs give `i*sqrt(-q)`.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            return Some(Exact::zero());
        }
        let neg = q.is_negative();
        let q = q.abs();
        // sqrt(p/r) = sqrt(p*r)/r
        let pr = (q.numer() * q.denom()).to_u64()?;
        let (s, d) = squarefree_split(pr);
        let coef = BigRational::new(BigInt::from(s), q.denom().clone());
        let mut g = Gauss::real(coef);
        if neg {
            g = Gauss::new(BigRational::zero(), g.re);
        }
        Some(if d == 1 {
            Exact::from_gauss(g)
        } else {
            Exact::build(Gauss::zero(), g, d)
        })
    }

    fn merge_rad(x: u64, y: u64) -> u64 {
        match (x, y) {
            (0, r) | (r, 0) => r,
            (r, s) if r == s => r,
            (r, s) => panic!("cannot combine sqrt({r}) and sqrt({s}) in one value"),
        }
    }

    /// Radicand shared by a set of values, or `None` if they disagree.
    pub fn common_radicand<'a>(vals: impl IntoIterator<Item = &'a Exact>) -> Option<u64> {
        let mut r = 0;
        for v in vals {
            match (r, v.rad) {
                (_, 0) => {}
                (0, s) => r = s,
                (a, s) if a == s => {}
                _ => return None,
            }
        }
        Some(r)
    }

    pub fn inv(&self) -> Self {
        // (a - b sqrt D) / (a^2 - b^2 D)
        let d = BigRational::from_integer(BigInt::from(self.rad));
        let den = self.a.mul(&self.a).sub(&self.b.mul(&self.b).scale(&d));
        let inv = den.inv();
        Exact::build(self.a.mul(&inv), self.b.neg().mul(&inv), self.rad)
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }
}

/// Splits `n = s^2 * d` with `d` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d * n)
}

impl Add for Exact {
    type Output = Exact;
    fn add(self, o: Exact) -> Exact {
        let rad = Exact::merge_rad(self.rad, o.rad);
        Exact::build(self.a.add(&o.a), self.b.add(&o.b), rad)
    }
}

impl Sub for Exact {
    type Output = Exact;
    fn sub(self, o: Exact) -> Exact {
        let rad = Exact::merge_rad(self.rad, o.rad);
        Exact::build(self.a.sub(&o.a), self.b.sub(&o.b), rad)
    }
}

impl Mul for Exact {
    type Output = Exact;
    fn mul(self, o: Exact) -> Exact {
        let rad = Exact::merge_rad(self.rad, o.rad);
        let d = BigRational::from_integer(BigInt::from(rad));
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).scale(&d));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Exact::build(a, b, rad)
    }
}

impl Div for Exact {
    type Output = Exact;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Exact) -> Exact {
        self * o.inv()
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::build(self.a.neg(), self.b.neg(), self.rad)
    }
}

impl Zero for Exact {
    fn zero() -> Self {
        Exact::from_gauss(Gauss::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Exact {
    fn one() -> Self {
        Exact::from_rational(BigRational::one())
    }
}

impl Coeff for Exact {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Exact::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn to_complex(&self) -> Complex64 {
        let s = (self.rad as f64).sqrt();
        self.a.to_complex() + self.b.to_complex() * s
    }

    fn conj(&self) -> Self {
        Exact::build(self.a.conj(), self.b.conj(), self.rad)
    }

    fn render(&self) -> (String, bool) {
        let mut parts = Vec::new();
        self.a.pieces("", &mut parts);
        let root = format!("sqrt({})", self.rad);
        self.b.pieces(&root, &mut parts);
        if parts.is_empty() {
            return ("0".into(), true);
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        let simple = parts.len() == 1 && self.rad == 0;
        (s, simple)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render().0)
    }
}
