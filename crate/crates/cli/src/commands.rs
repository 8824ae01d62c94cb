//! One function per subcommand.

use serde_json::json;
use transdiam_core::bases::{bb_basis, check_compliant, cm_basis, gram_matrix, monomial_graded, BasisKind};
use transdiam_core::variety::{distinct_infinity_check, SheetSolver};
use transdiam_core::vdm::{compare_bases, diameter_sequence, FeketeOptions};
use transdiam_core::{Error, Result};

use crate::fmt::{complex, csv, sig12, table};
use crate::{example, load, BasisArg, Command, Options, Outcome, RunConfig};

const DEFAULT_K: usize = 3;
const DEFAULT_K_MAX: usize = 8;
const DEFAULT_CANDIDATES: usize = 256;

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome> {
    let o = &cfg.options;
    match &cfg.command {
        Command::Validate => validate(o),
        Command::Basis { basis } => basis_cmd(o, *basis),
        Command::Counts => counts(o),
        Command::Compliance { left, right } => compliance(o, left, right),
        Command::Gram { basis } => gram(o, *basis),
        Command::Fekete { basis } => fekete(o, *basis),
        Command::Compare => compare(o),
        Command::ReproduceExample => example::run(o),
    }
}

fn fekete_options(o: &Options) -> FeketeOptions {
    FeketeOptions {
        starts: o.starts as usize,
        seed: o.seed,
        ..FeketeOptions::default()
    }
}

fn validate(o: &Options) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let pres = file.presentation()?;
    let noether = pres.validate_noether();
    let mut table_text = format!(
        "noether position: {}\n",
        if noether.valid { "valid" } else { "INVALID" }
    );
    for p in &noether.problems {
        table_text += &format!("  problem: {p}\n");
    }
    let mut result = json!({ "noether": noether });
    if noether.valid {
        let var = load::variety(&file)?;
        let dec = var.decompose();
        let inf = distinct_infinity_check(&pres)?;
        // one lift checks that the sheet count matches the fibre
        let solver = SheetSolver::new(&var)?;
        let probe = vec![transdiam_core::Complex64::new(0.3, 0.7); var.m()];
        let sheets = solver.lift(&probe)?.len();
        table_text += &format!("variables: M={} N={}\n", var.m(), var.n());
        table_text += &format!("sheets: d={} (lifted {sheets})\n", var.d());
        table_text += &format!("y-exponents: {:?} (a={}, n={})\n", dec.exponents, dec.a, dec.n);
        table_text += &format!(
            "points at infinity: {} found, expected {}, distinct={}, x_M nonzero={}, verdict={}\n",
            inf.points.len(),
            inf.expected,
            inf.distinct,
            inf.xm_nonzero,
            inf.verdict
        );
        result["d"] = json!(var.d());
        result["lifted_sheets"] = json!(sheets);
        result["decomposition"] = json!(dec);
        result["infinity"] = json!(inf);
    }
    let csv_text = csv(
        &["valid", "problems"],
        &[vec![noether.valid.to_string(), noether.problems.join("; ")]],
    );
    Ok(Outcome {
        table: table_text,
        csv: csv_text,
        json: result,
        verdict: noether.valid,
    })
}

fn basis_cmd(o: &Options, kind: BasisArg) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let k = o.k.unwrap_or(DEFAULT_K);
    let export = match kind {
        BasisArg::Monomial => monomial_graded(&var, k).export(),
        BasisArg::Cm => cm_basis(&var, &load::generators(&file, &var)?, k)?.export(),
        BasisArg::Bb => bb_basis(&var, k, &load::quadrature(&var, o.n, k)?)?.export(),
    };
    let rows: Vec<Vec<String>> = export
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |p| vec![j.to_string(), p.clone()]))
        .collect();
    Ok(Outcome {
        table: table(&["degree", "element"], &rows),
        csv: csv(&["degree", "element"], &rows),
        json: json!(export),
        verdict: true,
    })
}

fn counts(o: &Options) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let k_top = o.k.or(o.k_max).unwrap_or(10) as u32;
    let a = var.decompose().a;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut all_hold = true;
    for k in 0..=k_top {
        let c = var.count(k);
        let sandwich = if k >= a { Some(var.sandwich_check(k)?) } else { None };
        let status = match &sandwich {
            Some(s) if s.holds => "ok".to_string(),
            Some(_) => {
                all_hold = false;
                "VIOLATED".to_string()
            }
            None => "n/a".to_string(),
        };
        let ratio = if c.l_k == 0 {
            "n/a".into()
        } else {
            sig12(k as f64 * c.n_k as f64 / c.l_k as f64)
        };
        rows.push(vec![
            k.to_string(),
            c.n_eq_k.to_string(),
            c.n_k.to_string(),
            c.l_k.to_string(),
            c.nx_k.to_string(),
            c.lx_k.to_string(),
            status,
            ratio,
        ]);
        records.push(json!({ "counts": c, "sandwich": sandwich }));
    }
    let headers = ["k", "N_eq_k", "N_k", "l_k", "Nx_k", "lx_k", "sandwich", "kN_k/l_k"];
    Ok(Outcome {
        table: table(&headers, &rows),
        csv: csv(&headers, &rows),
        json: json!({ "a": a, "rows": records }),
        verdict: all_hold,
    })
}

fn compliance(o: &Options, left: &str, right: &str) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let f = load::family(left, &file, &var, o.n)?;
    let g = load::family(right, &file, &var, o.n)?;
    let v = check_compliant(&f, &g)?;
    let mut text = v.summary() + "\n";
    text += &format!("left:  {}\n", f.describe().join(" + "));
    text += &format!("right: {}\n", g.describe().join(" + "));
    text += &format!("left - right:  {}\n", list(&v.left_minus_right));
    text += &format!("right - left:  {}\n", list(&v.right_minus_left));
    let row = vec![
        v.compliant.to_string(),
        v.core.clone().unwrap_or_default(),
        v.a_left.join(" "),
        v.a_right.join(" "),
        v.t.map(|t| t.to_string()).unwrap_or_default(),
        v.detail.clone(),
    ];
    Ok(Outcome {
        table: text,
        csv: csv(&["compliant", "core", "a_left", "a_right", "t", "detail"], &[row]),
        json: json!(v),
        verdict: v.compliant,
    })
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(empty)".into()
    } else {
        items.join(" + ")
    }
}

fn gram(o: &Options, kind: BasisArg) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let k = o.k.unwrap_or(DEFAULT_K);
    let quad = load::quadrature(&var, o.n, k)?;
    let b = load::basis(kind, &file, &var, k, || Ok(quad.clone()))?;
    let elems = b.upto(k);
    let g = gram_matrix(&elems, &quad);
    let names: Vec<String> = elems.iter().map(|p| p.display_short().to_string()).collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for i in 0..elems.len() {
        for j in 0..elems.len() {
            let z = g[(i, j)];
            rows.push(vec![
                i.to_string(),
                j.to_string(),
                names[i].clone(),
                names[j].clone(),
                sig12(z.re),
                sig12(z.im),
            ]);
            entries.push(json!({ "i": i, "j": j, "re": z.re, "im": z.im }));
        }
    }
    let headers = ["i", "j", "e_i", "e_j", "re", "im"];
    Ok(Outcome {
        table: table(&headers, &rows),
        csv: csv(&headers, &rows),
        json: json!({ "nodes": quad.n, "elements": names, "entries": entries }),
        verdict: true,
    })
}

const EST_HEADERS: [&str; 7] = ["k", "N_k", "l_k", "log_vdm", "est_lk", "est_kNk", "basis_kind"];

fn est_row(e: &transdiam_core::vdm::DiameterEstimate, kind: BasisKind) -> Vec<String> {
    vec![
        e.k.to_string(),
        e.n_k.to_string(),
        e.l_k.to_string(),
        sig12(e.log_vdm),
        sig12(e.est_lk),
        sig12(e.est_knk),
        kind.as_str().to_string(),
    ]
}

fn fekete(o: &Options, kind: BasisArg) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let k_max = o.k_max.or(o.k).unwrap_or(DEFAULT_K_MAX);
    if k_max == 0 {
        return Err(Error::Input("fekete needs k >= 1".into()));
    }
    let b = load::basis(kind, &file, &var, k_max, || load::quadrature(&var, None, k_max))?;
    let n = o.n.map_or(DEFAULT_CANDIDATES, |n| n as usize);
    let cands = load::sampler(&o.sampler, n)?.candidates(&var)?;
    let seq = diameter_sequence(&b, &cands, k_max, &fekete_options(o))?;
    let rows: Vec<Vec<String>> = seq.iter().map(|e| est_row(e, b.kind)).collect();
    let last = seq.last().expect("k_max >= 1");
    let mut text = table(&EST_HEADERS, &rows);
    text += &format!("point tuple at k={}:\n", last.k);
    for p in &last.points {
        text += &format!("  ({})\n", p.iter().map(|z| complex(*z)).collect::<Vec<_>>().join(", "));
    }
    Ok(Outcome {
        table: text,
        csv: csv(&EST_HEADERS, &rows),
        json: json!({ "basis": b.kind, "candidates": cands.len(), "estimates": seq }),
        verdict: true,
    })
}

fn compare(o: &Options) -> Result<Outcome> {
    let file = load::variety_file(o.variety.as_deref())?;
    let var = load::variety(&file)?;
    let k_max = o.k_max.or(o.k).unwrap_or(DEFAULT_K_MAX);
    if k_max == 0 {
        return Err(Error::Input("compare needs k >= 1".into()));
    }
    let quad = load::quadrature(&var, None, k_max)?;
    let bases = [BasisArg::Monomial, BasisArg::Cm, BasisArg::Bb]
        .into_iter()
        .map(|kind| load::basis(kind, &file, &var, k_max, || Ok(quad.clone())))
        .collect::<Result<Vec<_>>>()?;
    let n = o.n.map_or(DEFAULT_CANDIDATES, |n| n as usize);
    let cands = load::sampler(&o.sampler, n)?.candidates(&var)?;
    let cmp = compare_bases(&bases, &cands, k_max, &fekete_options(o))?;
    let mut long = Vec::new();
    for (seq, kind) in cmp.sequences.iter().zip(&cmp.kinds) {
        long.extend(seq.iter().map(|e| est_row(e, *kind)));
    }
    let mut headers: Vec<&str> = vec!["k"];
    headers.extend(cmp.kinds.iter().map(BasisKind::as_str));
    headers.push("spread");
    let wide: Vec<Vec<String>> = cmp
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.k.to_string()];
            row.extend(r.est_lk.iter().map(|v| sig12(*v)));
            row.push(sig12(r.spread));
            row
        })
        .collect();
    let mut text = table(&headers, &wide);
    text += &format!("final spread: {}\n", sig12(cmp.final_spread));
    Ok(Outcome {
        table: text,
        csv: csv(&EST_HEADERS, &long),
        json: json!(cmp),
        verdict: true,
    })
}
