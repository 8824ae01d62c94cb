//! End-to-end run of the hyperbola example `y^2 - x^2 = 1`.

use serde::{Deserialize, Serialize};
use transdiam_core::bases::{
    bb_basis, check_compliant, cm_basis, cm_family, cm_generators, gram_matrix, inner_product, monomial_family,
    monomial_graded, torus_quadrature, BasisKind,
};
use transdiam_core::polyring::{star, ExactPoly};
use transdiam_core::vdm::{compare_bases, log_abs_vdm, random_points, FeketeOptions, Sampler};
use transdiam_core::Result;

use crate::fmt::{csv, sig12, table};
use crate::{load, Options, Outcome};

const QUAD_NODES: usize = 1024;
const SCALE_K: usize = 3;
const COMPARE_K: usize = 8;
const COMPARE_CANDIDATES: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Checkpoint {
    Checkpoint {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn same(a: &ExactPoly, b: &ExactPoly) -> bool {
    (a - b).is_zero()
}

pub fn run(o: &Options) -> Result<Outcome> {
    let file = load::bundled("hyperbola.var");
    let var = load::variety(&file)?;
    let gens = var.generators();
    let p = |s: &str| file.parse(s);
    let mut cps = Vec::new();

    let cm = cm_generators(&var)?;
    let (v1, v2) = (&cm.v[0], &cm.v[1]);
    let want1 = p("sqrt(1/2)*(y1 - x1)")?;
    let want2 = p("sqrt(1/2)*(y1 + x1)")?;
    cps.push(check(
        "v1 = (y-x)/sqrt(2), v2 = (y+x)/sqrt(2)",
        same(v1, &want1) && same(v2, &want2),
        format!("v1 = {}, v2 = {}", v1.display_short(), v2.display_short()),
    ));

    let v12 = star(v1, v2, gens)?;
    cps.push(check(
        "v1*v2 = 1/2",
        same(&v12, &p("1/2")?),
        format!("got {}", v12.display_short()),
    ));

    // the expansions as usually displayed, in terms of v1 + v2
    let x = p("x1")?;
    let r2 = p("sqrt(2)")?;
    let sum = v1 + v2;
    let half = p("1/2")?;
    let v11 = star(v1, v1, gens)?;
    let v22 = star(v2, v2, gens)?;
    let shown11 = &(&(&x * &x) - &(&(&r2 * &sum) * &x)) + &half;
    let shown22 = &(&(&x * &x) + &(&(&r2 * &sum) * &x)) + &half;
    cps.push(check(
        "v1*v1 = x^2 - sqrt(2)(v1+v2)x + 1/2",
        same(&v11, &shown11),
        format!(
            "v1*v1 = {}, displayed form expands to {}",
            v11.display_short(),
            shown11.display_short()
        ),
    ));
    cps.push(check(
        "v2*v2 = x^2 + sqrt(2)(v1+v2)x + 1/2",
        same(&v22, &shown22),
        format!(
            "v2*v2 = {}, displayed form expands to {}",
            v22.display_short(),
            shown22.display_short()
        ),
    ));
    cps.push(check(
        "v1*v1 = x^2 - x*y + 1/2, v2*v2 = x^2 + x*y + 1/2",
        same(&v11, &p("x1^2 - x1*y1 + 1/2")?) && same(&v22, &p("x1^2 + x1*y1 + 1/2")?),
        format!("v1*v1 = {}, v2*v2 = {}", v11.display_short(), v22.display_short()),
    ));

    let quad = torus_quadrature(&var, QUAD_NODES)?;
    let y = p("y1")?.to_float();
    let yy = inner_product(&y, &y, &quad);
    let four_pi = 4.0 / std::f64::consts::PI;
    cps.push(check(
        "<y,y> = 4/pi",
        (yy.re - four_pi).abs() < 1e-6 && yy.im.abs() < 1e-6,
        format!("got {} (4/pi = {})", sig12(yy.re), sig12(four_pi)),
    ));

    let bb = bb_basis(&var, 5, &quad)?;
    let yi = var.layout().nx;
    let y_elem = bb.slices[1]
        .iter()
        .max_by(|a, b| {
            let ca = a
                .terms()
                .iter()
                .find(|t| t.mono.0[yi] == 1)
                .map_or(0.0, |t| t.coeff.norm());
            let cb = b
                .terms()
                .iter()
                .find(|t| t.mono.0[yi] == 1)
                .map_or(0.0, |t| t.coeff.norm());
            ca.total_cmp(&cb)
        })
        .expect("degree-one bb elements");
    let target = std::f64::consts::PI.sqrt() / 2.0;
    let bb_ok = y_elem.terms().iter().all(|t| {
        let want = if t.mono.0[yi] == 1 && t.mono.degree() == 1 {
            target
        } else {
            0.0
        };
        (t.coeff.re - want).abs() < 1e-6 && t.coeff.im.abs() < 1e-6
    }) && y_elem.terms().iter().any(|t| t.mono.0[yi] == 1);
    cps.push(check(
        "bb element (sqrt(pi)/2)*y",
        bb_ok,
        format!("got {} (sqrt(pi)/2 = {})", y_elem.display_short(), sig12(target)),
    ));

    let elems = bb.upto(5);
    let g = gram_matrix(&elems, &quad);
    let dev = (0..elems.len())
        .flat_map(|i| (0..elems.len()).map(move |j| (i, j)))
        .map(|(i, j)| (g[(i, j)].re - if i == j { 1.0 } else { 0.0 }).hypot(g[(i, j)].im))
        .fold(0.0, f64::max);
    cps.push(check(
        "bb Gram matrix = identity at k=5",
        dev < 1e-8,
        format!("max deviation {}", sig12(dev)),
    ));

    let mono = monomial_graded(&var, SCALE_K).to_float();
    let cmb = cm_basis(&var, &cm, SCALE_K)?.to_float();
    let count = mono.len_upto(SCALE_K);
    let claimed = (count as f64 - 1.0) * std::f64::consts::FRAC_1_SQRT_2.ln();
    let mut worst: f64 = 0.0;
    let mut diffs = Vec::new();
    for s in 0..5 {
        let pts = random_points(&var, count, o.seed.wrapping_add(s))?;
        let d = log_abs_vdm(&cmb.upto(SCALE_K), &pts)? - log_abs_vdm(&mono.upto(SCALE_K), &pts)?;
        worst = worst.max((d - claimed).abs() / claimed.abs().max(1.0));
        diffs.push(sig12(d));
    }
    cps.push(check(
        "scale factor (1/sqrt(2))^(t-1)",
        worst <= 1e-10,
        format!(
            "k={SCALE_K}, t={count}: log|VDM cm| - log|VDM monomial| = [{}], claimed {}",
            diffs.join(", "),
            sig12(claimed)
        ),
    ));

    let v = check_compliant(&cm_family(&var, &cm), &monomial_family(&var))?;
    cps.push(check(
        "cm and monomial families compliant with core M[x]",
        v.compliant && v.core.as_deref() == Some("M[x]"),
        v.summary(),
    ));

    let cands = Sampler::Torus { n: COMPARE_CANDIDATES }.candidates(&var)?;
    let cquad = load::quadrature(&var, None, COMPARE_K)?;
    let bases = vec![
        monomial_graded(&var, COMPARE_K).to_float(),
        cm_basis(&var, &cm, COMPARE_K)?.to_float(),
        bb_basis(&var, COMPARE_K, &cquad)?,
    ];
    let opts = FeketeOptions {
        starts: o.starts as usize,
        seed: o.seed,
        ..FeketeOptions::default()
    };
    let cmp = compare_bases(&bases, &cands, COMPARE_K, &opts)?;
    let kinds: Vec<&str> = cmp.kinds.iter().map(BasisKind::as_str).collect();
    cps.push(check(
        "diameter estimates agree at k=8 (spread < 0.05)",
        cmp.final_spread < 0.05,
        format!(
            "{} = [{}], spread {}",
            kinds.join("/"),
            cmp.rows
                .last()
                .map(|r| r.est_lk.iter().map(|v| sig12(*v)).collect::<Vec<_>>().join(", "))
                .unwrap_or_default(),
            sig12(cmp.final_spread)
        ),
    ));

    let rows: Vec<Vec<String>> = cps
        .iter()
        .map(|c| {
            vec![
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
                c.name.clone(),
                c.detail.clone(),
            ]
        })
        .collect();
    let failed = cps.iter().filter(|c| !c.pass).count();
    let mut text = table(&["status", "checkpoint", "detail"], &rows);
    text += &format!("{} of {} checkpoints passed\n", cps.len() - failed, cps.len());
    Ok(Outcome {
        table: text,
        csv: csv(&["status", "checkpoint", "detail"], &rows),
        json: serde_json::json!({ "checkpoints": cps }),
        verdict: failed == 0,
    })
}
