use std::cmp::Ordering;

use proptest::prelude::*;
use transdiam_core::bases::{bb_basis, check_compliant, monomial_family, scaled_monomial_family, torus_quadrature};
use transdiam_core::numeric::{log_abs_det, Mat};
use transdiam_core::polyring::{cmp_grevlex, parse_exact, star, Exact, ExactPoly, Layout, Monomial, Polynomial};
use transdiam_core::variety::{nx_counts, Presentation, Variety};
use transdiam_core::vdm::{fekete_maximize, FeketeOptions, Sampler};
use transdiam_core::Complex64;

fn variety(nx: usize, ny: usize, gens: &[&str]) -> Variety {
    let l = Layout::new(nx, ny);
    let g = gens.iter().map(|s| parse_exact(s, l).unwrap()).collect();
    Variety::try_from(Presentation::new(l, g, None)).unwrap()
}

fn hyperbola() -> Variety {
    variety(1, 1, &["y1^2 - x1^2 - 1"])
}

fn cone() -> Variety {
    variety(2, 1, &["y1^2 - x1^2 - x2^2 - 1"])
}

fn mono(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(Monomial)
}

/// Small polynomials with integer-over-small-denominator coefficients.
fn poly(layout: Layout, max_terms: usize) -> impl Strategy<Value = ExactPoly> {
    let n = layout.nvars();
    prop::collection::vec((mono(n), -5i64..=5, 1i64..=3), 0..=max_terms).prop_map(move |ts| {
        Polynomial::from_terms(layout, ts.into_iter().map(|(m, a, b)| (m, Exact::from_ratio(a, b))))
    })
}

proptest! {
    #[test]
    fn grevlex_is_a_graded_total_order(a in mono(3), b in mono(3), c in mono(3)) {
        let ab = cmp_grevlex(&a, &b).unwrap();
        prop_assert_eq!(ab, cmp_grevlex(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if a.degree() != b.degree() {
            prop_assert_eq!(ab, a.degree().cmp(&b.degree()));
        }
        // compatible with multiplication
        prop_assert_eq!(cmp_grevlex(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
        if a < b && b < c {
            prop_assert!(a < c);
        }
        prop_assert!(Monomial::one(3) <= a);
    }

    #[test]
    fn division_reconstructs_and_reduces(p in poly(Layout::new(1, 1), 6)) {
        let v = hyperbola();
        let gens = v.generators();
        let div = p.divide(gens).unwrap();
        let mut back = div.remainder.clone();
        for (q, g) in div.quotients.iter().zip(gens) {
            back = &back + &(q * g);
        }
        prop_assert_eq!(&back, &p);
        prop_assert!(div.remainder.is_reduced(gens));
        let nf = p.normal_form(gens).unwrap();
        prop_assert_eq!(nf.normal_form(gens).unwrap(), nf);
    }

    #[test]
    fn star_is_commutative_and_associative(
        p in poly(Layout::new(2, 1), 3),
        q in poly(Layout::new(2, 1), 3),
        r in poly(Layout::new(2, 1), 3),
    ) {
        let v = cone();
        let g = v.generators();
        prop_assert_eq!(star(&p, &q, g).unwrap(), star(&q, &p, g).unwrap());
        let left = star(&star(&p, &q, g).unwrap(), &r, g).unwrap();
        let right = star(&p, &star(&q, &r, g).unwrap(), g).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn print_parse_round_trip(p in poly(Layout::new(2, 1), 5), with_root in any::<bool>()) {
        let l = p.layout();
        let p = if with_root { &p * &parse_exact("sqrt(2)", l).unwrap() } else { p };
        let text = p.to_string();
        prop_assert_eq!(parse_exact(&text, l).unwrap(), p.clone(), "{}", text);
        let short = p.display_short().to_string();
        prop_assert_eq!(parse_exact(&short, l).unwrap(), p);
    }

    #[test]
    fn log_det_is_multilinear_and_permutation_invariant(
        vals in prop::collection::vec(-2.0f64..2.0, 32),
        row in 0usize..4,
        scale in 0.1f64..10.0,
        swap in (0usize..4, 0usize..4),
    ) {
        let m = Mat::from_fn(4, 4, |i, j| Complex64::new(vals[2 * (4 * i + j)], vals[2 * (4 * i + j) + 1]));
        let base = log_abs_det(&m);
        prop_assume!(base.is_finite() && base > -20.0);
        let mut scaled = m.clone();
        for j in 0..4 {
            scaled[(row, j)] *= Complex64::new(0.0, scale);
        }
        prop_assert!((log_abs_det(&scaled) - base - scale.ln()).abs() < 1e-9);
        let mut swapped = m.clone();
        swapped.swap_rows(swap.0, swap.1);
        prop_assert!((log_abs_det(&swapped) - base).abs() < 1e-9);
    }

    #[test]
    fn x_counts_relation(m in 1usize..=4, k in 0u32..=50) {
        let (n, l) = nx_counts(m, k);
        prop_assert_eq!(l * (m as u64 + 1), m as u64 * k as u64 * n);
    }

    #[test]
    fn fekete_sweeps_never_decrease(seed in 0u64..1000, k in 1usize..4) {
        let v = hyperbola();
        let b = transdiam_core::bases::monomial_graded_float(&v, k);
        let c = Sampler::Torus { n: 24 }.candidates(&v).unwrap();
        let r = fekete_maximize(&b.upto(k), &c, &FeketeOptions { starts: 2, seed, ..FeketeOptions::default() }).unwrap();
        prop_assert!(r.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        prop_assert!((r.history.last().copied().unwrap() - r.log_vdm).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compliance_is_symmetric(a in 1i64..=4, b in 1i64..=4, c in 1i64..=3) {
        let v = hyperbola();
        let fams = [
            monomial_family(&v),
            scaled_monomial_family(&v, &Exact::from_ratio(a, c)).unwrap(),
            scaled_monomial_family(&v, &Exact::from_ratio(b, 1)).unwrap(),
        ];
        for f in &fams {
            for g in &fams {
                let fg = check_compliant(f, g).unwrap();
                let gf = check_compliant(g, f).unwrap();
                prop_assert_eq!(fg.compliant, gf.compliant);
                prop_assert_eq!(&fg.a_left, &gf.a_right);
                prop_assert_eq!(&fg.left_minus_right, &gf.right_minus_left);
            }
        }
    }
}

#[test]
fn bb_slices_are_graded_and_span_the_monomials() {
    let v = hyperbola();
    let q = torus_quadrature(&v, 256).unwrap();
    let bb = bb_basis(&v, 4, &q).unwrap();
    let monos = transdiam_core::bases::monomial_graded_float(&v, 4);
    for j in 0..=4 {
        assert_eq!(bb.slices[j].len(), monos.slices[j].len());
        for p in &bb.slices[j] {
            assert_eq!(p.degree(), Some(j as u32));
        }
        // the flag: elements up to degree j span the same space as the
        // standard monomials up to degree j
        let b = bb.upto(j);
        let cand = Sampler::Torus { n: 64 }.candidates(&v).unwrap();
        let pts: Vec<_> = cand
            .iter()
            .step_by(cand.len() / b.len())
            .take(b.len())
            .cloned()
            .collect();
        let lb = transdiam_core::vdm::log_abs_vdm(&b, &pts).unwrap();
        let lm = transdiam_core::vdm::log_abs_vdm(&monos.upto(j), &pts).unwrap();
        // the ratio is the determinant of the change of basis, same for any tuple
        let pts2: Vec<_> = cand
            .iter()
            .skip(1)
            .step_by(cand.len() / b.len())
            .take(b.len())
            .cloned()
            .collect();
        let lb2 = transdiam_core::vdm::log_abs_vdm(&b, &pts2).unwrap();
        let lm2 = transdiam_core::vdm::log_abs_vdm(&monos.upto(j), &pts2).unwrap();
        assert!(lb.is_finite() && lm.is_finite());
        assert!(((lb - lm) - (lb2 - lm2)).abs() < 1e-8, "degree {j}");
    }
}
