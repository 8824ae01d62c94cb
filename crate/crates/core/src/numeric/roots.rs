//! Univariate complex root finding (Aberth–Ehrlich with Newton polishing).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots of `sum c[k] z^k`, with multiplicity. Trailing zero
/// coefficients (highest powers) are ignored.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    if n == 1 {
        return Ok(vec![-c[0]]);
    }
    // Zero roots split off exactly.
    let zeros = c.iter().take_while(|v| v.norm() == 0.0).count();
    let c = &c[zeros..];
    let m = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(roots);
    }
    let radius = 1.0 + c[..m].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let start = radius.min(2.0 * c[0].norm().powf(1.0 / m as f64).max(1e-3));
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / m as f64 + 0.4;
            Complex64::from_polar(start, th)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..m {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..m {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let cand = *zi - step;
            if horner(c, cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("root finder diverged".into()));
    }
    roots.extend(z);
    Ok(roots)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}
