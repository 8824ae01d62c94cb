//! Varieties in Noether position: validation, standard monomials, the
//! decomposition over `y`-monomials and the counting quantities `N_k`, `l_k`.

mod file;
mod infinity;
mod sheets;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, ExactPoly, Layout, Monomial};

pub use file::{CosetSpec, FamilySpec, VarietyFile};
pub(crate) use infinity::restricted_top_form;
pub use infinity::{chordal, distinct_infinity_check, InfinityReport};
pub use sheets::{on_variety, SheetSolver, SHEET_TOL};

/// Raw presentation: layout, generators and an optional sheet-count override.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub layout: Layout,
    pub generators: Vec<ExactPoly>,
    pub d: Option<usize>,
}

/// Result of the structural Noether-position check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoetherReport {
    pub valid: bool,
    /// Pure-power exponent `m_i` for each `y_i`, when covered.
    pub powers: Vec<Option<u32>>,
    pub problems: Vec<String>,
    /// The condition that no nonzero pure-`x` polynomial vanishes on the
    /// variety is only checked through leading terms.
    pub elimination_checked: bool,
}

impl Presentation {
    pub fn new(layout: Layout, generators: Vec<ExactPoly>, d: Option<usize>) -> Self {
        Presentation { layout, generators, d }
    }

    /// Structural check: every generator leads with a pure power of a
    /// `y`-variable and each `y_i` is covered exactly once.
    pub fn validate_noether(&self) -> NoetherReport {
        let l = self.layout;
        let mut problems = Vec::new();
        let mut powers: Vec<Option<u32>> = vec![None; l.ny];
        if l.nx == 0 {
            problems.push("at least one x-variable is required".into());
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.layout() != l {
                problems.push(format!("generator {} has the wrong variable count", i + 1));
                continue;
            }
            let Ok(lt) = g.leading_term() else {
                problems.push(format!("generator {} is zero", i + 1));
                continue;
            };
            let e = &lt.mono.0;
            let support: Vec<usize> = (0..e.len()).filter(|&j| e[j] > 0).collect();
            if support.is_empty() {
                problems.push(format!("generator {} is a nonzero constant", i + 1));
            } else if support.iter().all(|&j| j < l.nx) {
                problems.push(format!(
                    "generator {} has leading term {} in the x-variables",
                    i + 1,
                    lt.mono.render(&l, false)
                ));
            } else if support.len() > 1 {
                problems.push(format!(
                    "generator {} has leading term {} which is not a pure y-power",
                    i + 1,
                    lt.mono.render(&l, false)
                ));
            } else {
                let yi = support[0] - l.nx;
                if powers[yi].is_some() {
                    problems.push(format!("y{} is covered more than once", yi + 1));
                } else {
                    powers[yi] = Some(e[support[0]]);
                }
            }
        }
        for (i, p) in powers.iter().enumerate() {
            if p.is_none() {
                problems.push(format!("y{} is not covered by a leading term", i + 1));
            }
        }
        NoetherReport {
            valid: problems.is_empty(),
            powers,
            problems,
            elimination_checked: false,
        }
    }
}

/// Validated presentation in Noether position.
#[derive(Clone, Debug)]
pub struct Variety {
    layout: Layout,
    generators: Vec<ExactPoly>,
    powers: Vec<u32>,
    d: usize,
}

/// The set `A` of `y`-exponents outside the leading-term ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub exponents: Vec<Vec<u32>>,
    /// Largest `|alpha|`.
    pub a: u32,
    /// Number of elements.
    pub n: usize,
}

/// Dimension counts at degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub k: u32,
    pub n_eq_k: u64,
    pub n_k: u64,
    pub l_k: u64,
    pub nx_k: u64,
    pub lx_k: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub k: u32,
    pub lower: u64,
    pub n_k: u64,
    pub upper: u64,
    pub l_lower: u64,
    pub l_k: u64,
    pub l_upper: u64,
    pub holds: bool,
}

impl TryFrom<Presentation> for Variety {
    type Error = Error;

    fn try_from(p: Presentation) -> Result<Self> {
        let rep = p.validate_noether();
        if !rep.valid {
            return Err(Error::InvalidPresentation(rep.problems.join("; ")));
        }
        let powers: Vec<u32> = rep.powers.iter().map(|p| p.unwrap()).collect();
        let d = match p.d {
            Some(0) => return Err(Error::Input("sheet count d must be positive".into())),
            Some(d) => d,
            None => powers.iter().map(|&m| m as usize).product(),
        };
        Ok(Variety {
            layout: p.layout,
            generators: p.generators,
            powers,
            d,
        })
    }
}

/// `C(n, k)` in 64 bits.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of monomials of degree exactly `j` in `m` variables.
pub fn nx_eq(m: usize, j: u32) -> u64 {
    if m == 0 {
        return u64::from(j == 0);
    }
    binomial(j as u64 + m as u64 - 1, m as u64 - 1)
}

/// `(Nx_k, lx_k)`: count and degree sum of monomials of degree at most `k`.
pub fn nx_counts(m: usize, k: u32) -> (u64, u64) {
    (0..=k).fold((0, 0), |(n, l), j| {
        let c = nx_eq(m, j);
        (n + c, l + j as u64 * c)
    })
}

impl Variety {
    /// The affine space with `m` coordinates and no `y`-variables.
    pub fn affine(m: usize) -> Self {
        Variety {
            layout: Layout::new(m, 0),
            generators: Vec::new(),
            powers: Vec::new(),
            d: 1,
        }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// Number of `x`-variables.
    pub fn m(&self) -> usize {
        self.layout.nx
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.layout.nvars()
    }

    pub fn generators(&self) -> &[ExactPoly] {
        &self.generators
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    /// Sheet count.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::new(self.layout, self.generators.clone(), Some(self.d))
    }

    pub fn validate_noether(&self) -> NoetherReport {
        self.presentation().validate_noether()
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.generators
            .iter()
            .all(|g| !g.leading_term().map(|t| t.mono.divides(m)).unwrap_or(false))
    }

    pub fn decompose(&self) -> Decomposition {
        let ny = self.layout.ny;
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        for i in 0..ny {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.powers[i]).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        let nx = self.layout.nx;
        out.retain(|alpha| {
            let mut e = vec![0; nx];
            e.extend(alpha);
            self.is_standard(&Monomial(e))
        });
        out.sort_by_key(|a| Monomial(a.clone()));
        let a = out.iter().map(|v| v.iter().sum()).max().unwrap_or(0);
        Decomposition {
            n: out.len(),
            a,
            exponents: out,
        }
    }

    /// Standard monomials of degree at most `k`, ascending.
    pub fn monomial_basis(&self, k: u32) -> Vec<Monomial> {
        let nx = self.layout.nx;
        let mut out = Vec::new();
        for alpha in self.decompose().exponents {
            let da: u32 = alpha.iter().sum();
            if da > k {
                continue;
            }
            for j in 0..=k - da {
                for mx in monomials_of_degree(nx, j) {
                    let mut e = mx.0;
                    e.extend(&alpha);
                    out.push(Monomial(e));
                }
            }
        }
        out.sort();
        out
    }

    /// Standard monomials of degree exactly `k`, ascending.
    pub fn monomials_of_degree(&self, k: u32) -> Vec<Monomial> {
        self.monomial_basis(k).into_iter().filter(|m| m.degree() == k).collect()
    }

    fn n_eq(&self, dec: &Decomposition, j: u32) -> u64 {
        let m = self.layout.nx;
        dec.exponents
            .iter()
            .map(|alpha| alpha.iter().sum::<u32>())
            .filter(|&da| da <= j)
            .map(|da| nx_eq(m, j - da))
            .sum()
    }

    pub fn count(&self, k: u32) -> CountRecord {
        let dec = self.decompose();
        let mut n_k = 0;
        let mut l_k = 0;
        let mut n_eq_k = 0;
        for j in 0..=k {
            n_eq_k = self.n_eq(&dec, j);
            n_k += n_eq_k;
            l_k += j as u64 * n_eq_k;
        }
        let (nx_k, lx_k) = nx_counts(self.layout.nx, k);
        CountRecord {
            k,
            n_eq_k,
            n_k,
            l_k,
            nx_k,
            lx_k,
        }
    }

    /// `n*Nx_{k-a} <= N_k <= n*Nx_k` together with the degree-sum analogue.
    pub fn sandwich_check(&self, k: u32) -> Result<SandwichReport> {
        let dec = self.decompose();
        if k < dec.a {
            return Err(Error::Precondition(format!("k = {k} is below a = {}", dec.a)));
        }
        let n = dec.n as u64;
        let m = self.layout.nx;
        let c = self.count(k);
        let (lo_n, lo_l) = nx_counts(m, k - dec.a);
        let (hi_n, hi_l) = nx_counts(m, k);
        let r = SandwichReport {
            k,
            lower: n * lo_n,
            n_k: c.n_k,
            upper: n * hi_n,
            l_lower: n * lo_l,
            l_k: c.l_k,
            l_upper: n * hi_l,
            holds: false,
        };
        let holds = r.lower <= r.n_k && r.n_k <= r.upper && r.l_lower <= r.l_k && r.l_k <= r.l_upper;
        Ok(SandwichReport { holds, ..r })
    }

    /// `(N_k / l_k, k N_k / l_k)`.
    pub fn asymptotic_ratios(&self, k: u32) -> Result<(f64, f64)> {
        if k == 0 {
            return Err(Error::Precondition("ratios need k >= 1".into()));
        }
        let c = self.count(k);
        let n = c.n_k as f64;
        let l = c.l_k as f64;
        Ok((n / l, k as f64 * n / l))
    }
}
