//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use itertools::Itertools;
use transdiam_core::bases::{
    bb_basis, check_compliant, cm_basis, cm_family, cm_generators, find_core, gram_matrix, inner_product,
    monomial_family, monomial_graded, monomial_graded_float, scaled_monomial_family, torus_quadrature, BasisFamily,
    CmGenerators, CoreResult,
};
use transdiam_core::polyring::{parse_exact, parse_float, star, Exact, ExactPoly, Layout};
use transdiam_core::variety::{nx_counts, Presentation, Variety};
use transdiam_core::vdm::{
    compare_bases, diameter_sequence, fekete_maximize, log_abs_vdm, random_points, row_scale_bound, FeketeOptions,
    Sampler,
};
use transdiam_core::{Complex64, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn variety(nx: usize, ny: usize, gens: &[&str]) -> Variety {
    let l = Layout::new(nx, ny);
    let g = gens.iter().map(|s| parse_exact(s, l).unwrap()).collect();
    Variety::try_from(Presentation::new(l, g, None)).unwrap()
}

fn hyperbola() -> Variety {
    variety(1, 1, &["y1^2 - x1^2 - 1"])
}

fn cone() -> Variety {
    variety(2, 1, &["y1^2 - x2^2 - x1^2 - 1"])
}

fn cone_generators(v: &Variety) -> CmGenerators {
    let l = v.layout();
    let p = |s: &str| parse_exact(s, l).unwrap();
    CmGenerators::from_user(v, vec![p("sqrt(1/2)*(y1 + x2)"), p("sqrt(1/2)*(y1 - x2)")]).unwrap()
}

fn same(a: &ExactPoly, b: &ExactPoly) -> bool {
    (a - b).is_zero()
}

// 1: the hyperbola generators and their products

fn ac1a() -> Result<Outcome> {
    let v = hyperbola();
    let l = v.layout();
    let g = cm_generators(&v)?;
    let ok = same(&g.v[0], &parse_exact("sqrt(1/2)*(y1 - x1)", l)?)
        && same(&g.v[1], &parse_exact("sqrt(1/2)*(y1 + x1)", l)?);
    outcome(
        ok,
        format!("v1 = {}, v2 = {}", g.v[0].display_short(), g.v[1].display_short()),
    )
}

fn ac1b() -> Result<Outcome> {
    let v = hyperbola();
    let g = cm_generators(&v)?;
    let p = star(&g.v[0], &g.v[1], v.generators())?;
    outcome(
        same(&p, &parse_exact("1/2", v.layout())?),
        format!("v1*v2 = {}", p.display_short()),
    )
}

fn ac1c() -> Result<Outcome> {
    let v = hyperbola();
    let l = v.layout();
    let g = cm_generators(&v)?;
    let p = |s: &str| parse_exact(s, l).unwrap();
    let sum = &g.v[0] + &g.v[1];
    let cross = &(&p("sqrt(2)") * &sum) * &p("x1");
    let shown11 = &(&p("x1^2") - &cross) + &p("1/2");
    let shown22 = &(&p("x1^2") + &cross) + &p("1/2");
    let v11 = star(&g.v[0], &g.v[0], v.generators())?;
    let v22 = star(&g.v[1], &g.v[1], v.generators())?;
    outcome(
        same(&v11, &shown11) && same(&v22, &shown22),
        format!(
            "v1*v1 = {} vs displayed {}; v2*v2 = {} vs displayed {}",
            v11.display_short(),
            shown11.display_short(),
            v22.display_short(),
            shown22.display_short()
        ),
    )
}

// 2: orthonormality on the hyperbola

fn ac2a() -> Result<Outcome> {
    let v = hyperbola();
    let q = torus_quadrature(&v, 1024)?;
    let xs: Vec<_> = (0..=5)
        .map(|j| parse_float(&format!("x1^{j}"), v.layout()).unwrap())
        .collect();
    let refs: Vec<_> = xs.iter().collect();
    let g = gram_matrix(&refs, &q);
    let dev = (g - nalgebra::DMatrix::<Complex64>::identity(6, 6))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    outcome(dev < 1e-10, format!("max |G - I| = {dev:.3e}"))
}

fn ac2b() -> Result<Outcome> {
    let v = hyperbola();
    let q = torus_quadrature(&v, 1024)?;
    let y = parse_float("y1", v.layout())?;
    let yy = inner_product(&y, &y, &q);
    let err = (yy - Complex64::new(4.0 / PI, 0.0)).norm();
    outcome(err < 1e-6, format!("<y,y> = {:.12}, |error| = {err:.3e}", yy.re))
}

fn ac2c() -> Result<Outcome> {
    let v = hyperbola();
    let q = torus_quadrature(&v, 1024)?;
    let b = bb_basis(&v, 1, &q)?;
    let target = PI.sqrt() / 2.0;
    let l = v.layout();
    let want = parse_float("y1", l)?;
    let found = b.slices[1]
        .iter()
        .find(|p| p.terms().iter().any(|t| t.mono == want.terms()[0].mono));
    let Some(e) = found else {
        return outcome(false, "no degree-one element involves y");
    };
    let err = e
        .terms()
        .iter()
        .map(|t| {
            let w = if t.mono == want.terms()[0].mono { target } else { 0.0 };
            (t.coeff - Complex64::new(w, 0.0)).norm()
        })
        .fold(0.0, f64::max);
    outcome(
        err < 1e-6,
        format!("element {}, max coefficient error {err:.3e}", e.display_short()),
    )
}

// 3: cores and compliance

fn core_line(r: &CoreResult) -> String {
    match r {
        CoreResult::Any { t } => format!("finite, t={t}"),
        CoreResult::Found(c) => format!("core {} A={{{}}} t={}", c.core_name(), c.multipliers().join(","), c.t),
        CoreResult::NoCore { witness } => format!("no core: {witness}"),
    }
}

fn expect_core(f: &BasisFamily, name: &str, a: &[&str], t: u32) -> Result<(bool, String)> {
    let r = find_core(f)?;
    let ok = matches!(&r, CoreResult::Found(c) if c.core_name() == name && c.multipliers() == a && c.t == t);
    Ok((ok, core_line(&r)))
}

fn ac3a() -> Result<Outcome> {
    let v = hyperbola();
    let (ok, d) = expect_core(&monomial_family(&v), "M[x]", &["1", "y"], 0)?;
    outcome(ok, format!("hyperbola monomials: {d}"))
}

fn ac3b() -> Result<Outcome> {
    let v = hyperbola();
    let (ok, d) = expect_core(&cm_family(&v, &cm_generators(&v)?), "M[x]", &["v1", "v2"], 1)?;
    outcome(ok, format!("hyperbola cm set: {d}"))
}

fn ac3c() -> Result<Outcome> {
    let v = cone();
    let r = find_core(&cm_family(&v, &cone_generators(&v)))?;
    outcome(
        matches!(r, CoreResult::NoCore { .. }),
        format!("cone cm spanning set: {}", core_line(&r)),
    )
}

fn ac3d() -> Result<Outcome> {
    let v = hyperbola();
    let verdict = check_compliant(&cm_family(&v, &cm_generators(&v)?), &monomial_family(&v))?;
    let want = "COMPLIANT core=M[x] A_left={v1,v2} A_right={x,y} t=1";
    outcome(verdict.summary() == want, verdict.summary())
}

fn ac3e() -> Result<Outcome> {
    let v = cone();
    let verdict = check_compliant(&cm_family(&v, &cone_generators(&v)), &monomial_family(&v))?;
    let want = "COMPLIANT core=M[x1,x2] A_left={v1,v2} A_right={x2,y} t=1";
    outcome(verdict.summary() == want, verdict.summary())
}

fn ac3f() -> Result<Outcome> {
    let v = Variety::affine(1);
    let mut details = Vec::new();
    let mut ok = true;
    for r in [
        Exact::from_ratio(3, 1),
        Exact::from_ratio(1, 2),
        parse_exact("sqrt(2)", v.layout())?.terms()[0].coeff.clone(),
    ] {
        let verdict = check_compliant(&monomial_family(&v), &scaled_monomial_family(&v, &r)?)?;
        ok &= !verdict.compliant;
        details.push(format!("r={r}: {}", verdict.summary()));
    }
    outcome(ok, details.join("; "))
}

// 4: counting

fn ac4a() -> Result<Outcome> {
    let bad: Vec<_> = (1..=4)
        .cartesian_product(0..=50u32)
        .filter(|&(m, k)| {
            let (n, l) = nx_counts(m, k);
            l * (m as u64 + 1) != m as u64 * k as u64 * n
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} of 204 (M,k) pairs violate the identity", bad.len()),
    )
}

fn ac4b() -> Result<Outcome> {
    let vars = [
        ("hyperbola", hyperbola()),
        ("cone2d", cone()),
        ("nondistinct", variety(1, 1, &["(x1 + y1)^2 + x1 + y1 - 1"])),
    ];
    let mut checked = 0;
    let mut failed = Vec::new();
    for (name, v) in &vars {
        let a = v.decompose().a;
        for k in a..=30 {
            checked += 1;
            if !v.sandwich_check(k)?.holds {
                failed.push(format!("{name} k={k}"));
            }
        }
    }
    outcome(
        failed.is_empty(),
        format!("{checked} degrees checked, violations: [{}]", failed.join(", ")),
    )
}

fn ac4c() -> Result<Outcome> {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, v) in [("hyperbola", hyperbola()), ("cone2d", cone())] {
        let c = v.count(50);
        let r = 50.0 * c.n_k as f64 / c.l_k as f64;
        let m = v.m() as f64;
        let err = (r - (m + 1.0) / m).abs();
        ok &= err < 0.05;
        details.push(format!("{name}: kN_k/l_k = {r:.6}, error {err:.4}"));
    }
    outcome(ok, details.join("; "))
}

// 5: change of basis between cm and monomials

fn ac5_tuples(v: &Variety, k: usize, count: usize) -> Result<Vec<Vec<Vec<Complex64>>>> {
    (0..20).map(|s| random_points(v, count, 1000 * k as u64 + s)).collect()
}

fn ac5a() -> Result<Outcome> {
    let v = hyperbola();
    let g = cm_generators(&v)?;
    let mono = monomial_graded_float(&v, 6);
    let cm = cm_basis(&v, &g, 6)?.to_float();
    let mut worst: f64 = 0.0;
    let mut observed: f64 = 0.0;
    for k in 1..=6 {
        let count = mono.len_upto(k);
        let claimed = (count as f64 - 1.0) * FRAC_1_SQRT_2.ln();
        for pts in ac5_tuples(&v, k, count)? {
            let d = log_abs_vdm(&cm.upto(k), &pts)? - log_abs_vdm(&mono.upto(k), &pts)?;
            observed = observed.max(d.abs());
            worst = worst.max((d - claimed).abs() / claimed.abs().max(f64::MIN_POSITIVE));
        }
    }
    outcome(
        worst <= 1e-10,
        format!("worst relative error {worst:.3e}; observed |log|VDM cm| - log|VDM monomial|| <= {observed:.2e}"),
    )
}

fn ac5b() -> Result<Outcome> {
    let v = hyperbola();
    let g = cm_generators(&v)?;
    let mono = monomial_graded(&v, 6);
    let cm = cm_basis(&v, &g, 6)?;
    let mut ok = true;
    let mut bad = Vec::new();
    for k in 1..=6 {
        let r = row_scale_bound(&mono, &cm, k, &ac5_tuples(&v, k, mono.len_upto(k))?)?;
        let scales = (r.m - FRAC_1_SQRT_2).abs() < 1e-12 && (r.mx - SQRT_2).abs() < 1e-12;
        if !(r.holds && scales) {
            ok = false;
            bad.push(format!("k={k}: m={}, Mx={}, holds={}", r.m, r.mx, r.holds));
        }
    }
    outcome(
        ok,
        if ok {
            "m = 1/sqrt(2), Mx = sqrt(2), bound holds at 120 tuples".into()
        } else {
            bad.join("; ")
        },
    )
}

// 6: agreement of the three bases

fn ac6() -> Result<Outcome> {
    let v = hyperbola();
    let g = cm_generators(&v)?;
    let q = torus_quadrature(&v, 256)?;
    let bases = vec![
        monomial_graded_float(&v, 8),
        cm_basis(&v, &g, 8)?.to_float(),
        bb_basis(&v, 8, &q)?,
    ];
    let cands = Sampler::Torus { n: 256 }.candidates(&v)?;
    let cmp = compare_bases(&bases, &cands, 8, &FeketeOptions::default())?;
    let spreads: Vec<f64> = cmp.rows.iter().map(|r| r.spread).collect();
    let monotone = spreads[1..].windows(2).all(|w| w[1] <= w[0] + 1e-12);
    outcome(
        cmp.final_spread < 0.05 && monotone,
        format!(
            "spread at k=8 {:.5}; spreads k=2..8 nonincreasing: {monotone}",
            cmp.final_spread
        ),
    )
}

// 7: the plane, on the circle and the segment

fn brute_force(basis: &[&transdiam_core::polyring::FloatPoly], cands: &[Vec<Complex64>]) -> f64 {
    (0..cands.len())
        .combinations(basis.len())
        .map(|ix| {
            let pts: Vec<_> = ix.iter().map(|&i| cands[i].clone()).collect();
            log_abs_vdm(basis, &pts).unwrap()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn ac7() -> Result<Outcome> {
    let v = Variety::affine(1);
    let b = monomial_graded_float(&v, 8);
    let mut ok = true;
    let mut details = Vec::new();
    for (name, sampler, want) in [
        ("circle", Sampler::Torus { n: 256 }, 0.0),
        ("segment", Sampler::Segment { n: 256 }, 0.5f64.ln()),
    ] {
        let cands = sampler.candidates(&v)?;
        let seq = diameter_sequence(&b, &cands, 8, &FeketeOptions::default())?;
        let est = seq[7].est_lk;
        ok &= (est - want).abs() < 0.08;
        // small-k values against exhaustive enumeration on a coarse set
        let coarse = match sampler {
            Sampler::Torus { .. } => Sampler::Torus { n: 32 },
            _ => Sampler::Segment { n: 32 },
        }
        .candidates(&v)?;
        let small = diameter_sequence(&b, &coarse, 2, &FeketeOptions::default())?;
        let oracle_ok = small
            .iter()
            .all(|e| (e.log_vdm - brute_force(&b.upto(e.k), &coarse)).abs() < 1e-12);
        ok &= oracle_ok;
        details.push(format!(
            "{name}: k=8 estimate {est:.4} vs {want:.4}, small-k oracle agrees: {oracle_ok}"
        ));
    }
    outcome(ok, details.join("; "))
}

// 8: degree-sum normalisation

fn ac8() -> Result<Outcome> {
    let plane = Variety::affine(2);
    let exact = (1..=20u32).all(|k| {
        let c = plane.count(k);
        3 * c.l_k == 2 * k as u64 * c.n_k
    });
    let c = hyperbola().count(100);
    let r = c.l_k as f64 / (100.0 * c.n_k as f64);
    outcome(
        exact && (r - 0.5).abs() < 0.01,
        format!("C^2 ratio 2/3 exact for k<=20: {exact}; hyperbola k=100: {r:.6}"),
    )
}

// 9: exhaustive Fekete against brute force

fn ac9() -> Result<Outcome> {
    let opts = FeketeOptions {
        exhaustive: true,
        ..FeketeOptions::default()
    };
    let mut cases = 0;
    let mut mismatches = Vec::new();
    let plane = Variety::affine(1);
    let hyp = hyperbola();
    let runs: Vec<(&str, &Variety, usize)> = vec![("line", &plane, 1), ("line", &plane, 2), ("hyperbola", &hyp, 1)];
    for (name, v, k) in runs {
        let b = monomial_graded_float(v, k);
        let elems = b.upto(k);
        for sampler in [Sampler::Torus { n: 32 }, Sampler::Segment { n: 32 }] {
            let cands = sampler.candidates(v)?;
            for basis_len in 1..=elems.len() {
                let sub = &elems[..basis_len];
                cases += 1;
                let got = fekete_maximize(sub, &cands, &opts)?.log_vdm;
                let want = brute_force(sub, &cands);
                if got != want {
                    mismatches.push(format!("{name} k={k} N={basis_len}: {got} vs {want}"));
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{cases} cases, mismatches: [{}]", mismatches.join("; ")),
    )
}

fn ac9b() -> Result<Outcome> {
    let v = hyperbola();
    let g = cm_generators(&v)?;
    let b = cm_basis(&v, &g, 1)?.to_float();
    let cands = Sampler::Torus { n: 16 }.candidates(&v)?;
    let opts = FeketeOptions {
        exhaustive: true,
        ..FeketeOptions::default()
    };
    let got = fekete_maximize(&b.upto(1), &cands, &opts)?.log_vdm;
    let want = brute_force(&b.upto(1), &cands);
    outcome(got == want, format!("{} candidates: {got} vs {want}", cands.len()))
}

fn main() {
    type Check = fn() -> Result<Outcome>;
    let criteria: [(&str, &str, Check); 22] = [
        ("AC1a", "sheet generators recovered exactly", ac1a),
        ("AC1b", "v1*v2 = 1/2", ac1b),
        ("AC1c", "v1*v1, v2*v2 match the displayed expansions", ac1c),
        ("AC2a", "x-monomials orthonormal up to degree 5", ac2a),
        ("AC2b", "<y,y> = 4/pi", ac2b),
        ("AC2c", "bb element (sqrt(pi)/2) y", ac2c),
        ("AC3a", "monomials of the hyperbola have core M[x]", ac3a),
        ("AC3b", "cm set of the hyperbola has core M[x]", ac3b),
        ("AC3c", "cone cm spanning set has no core", ac3c),
        ("AC3d", "hyperbola cm vs monomial compliant", ac3d),
        ("AC3e", "cone cm vs monomial compliant", ac3e),
        ("AC3f", "scaled monomials not compliant", ac3f),
        ("AC4a", "lx_k (M+1) = M k Nx_k", ac4a),
        ("AC4b", "dimension sandwich for k <= 30", ac4b),
        ("AC4c", "kN_k/l_k near (M+1)/M at k = 50", ac4c),
        ("AC5a", "log-VDM gap equals (count-1) log(1/sqrt 2)", ac5a),
        ("AC5b", "determinant sandwich with m = 1/sqrt 2, Mx = sqrt 2", ac5b),
        ("AC6", "diameter estimates of three bases agree", ac6),
        ("AC7", "classical circle and segment values", ac7),
        ("AC8", "l_k/(kN_k) normalisation", ac8),
        ("AC9", "exhaustive Fekete equals brute force", ac9),
        ("AC9b", "exhaustive Fekete on cm rows", ac9b),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("{} {id:<5} {name} | {detail}", if pass { "PASS" } else { "FAIL" });
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
