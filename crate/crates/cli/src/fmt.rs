//! Number formatting, tables and CSV.

use transdiam_core::Complex64;

/// `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        format!("{:.*}", (11 - e) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        sig12(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", sig12(z.re), sig12(-z.im))
    } else {
        format!("{}+{}i", sig12(z.re), sig12(z.im))
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(4.0 / std::f64::consts::PI), "1.27323954474");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-2.5e-9), "-2.50000000000e-9");
        assert_eq!(sig12(123.0), "123.000000000");
        assert_eq!(sig12(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn table_layout() {
        let t = table(&["k", "value"], &[vec!["1".into(), "x".into()]]);
        assert_eq!(t, "k  value\n1  x\n");
        assert_eq!(
            csv(&["a", "b"], &[vec!["1".into(), "p, q".into()]]),
            "a,b\n1,\"p, q\"\n"
        );
    }
}
