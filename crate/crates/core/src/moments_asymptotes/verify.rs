use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{
    format_rational, isolate_real_roots, rat, separate, IsolatingInterval, UniPoly,
};

use super::{build_asymptote_polys, derivative_over_power};

/// Largest `L` checked when no bound is given.
pub const DEFAULT_L_MAX: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationEntry {
    #[serde(rename = "L")]
    pub l: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    fn collect(suite: &str, ls: Vec<usize>, check: impl Fn(usize) -> Result<(), String> + Sync) -> Self {
        let mut entries: Vec<VerificationEntry> = ls
            .into_par_iter()
            .map(|l| {
                let r = check(l);
                VerificationEntry {
                    l,
                    passed: r.is_ok(),
                    detail: r.err(),
                }
            })
            .collect();
        entries.sort_by_key(|e| e.l);
        Self {
            suite: suite.to_string(),
            passed: entries.iter().all(|e| e.passed),
            entries,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

fn show(ivs: &[IsolatingInterval]) -> String {
    let parts: Vec<String> = ivs
        .iter()
        .map(|iv| format!("({}, {})", format_rational(&iv.lo), format_rational(&iv.hi)))
        .collect();
    parts.join(" ")
}

fn distinct_roots(p: &UniPoly, expected: usize, name: &str) -> Result<Vec<IsolatingInterval>, String> {
    if !p.is_squarefree() {
        return Err(format!("{name} has a repeated root"));
    }
    let roots = isolate_real_roots(p).map_err(|e| e.to_string())?;
    if roots.len() != expected {
        return Err(format!("{name} has {} real roots, expected {expected}", roots.len()));
    }
    Ok(roots)
}

/// Roots of `f` and `g` alternate strictly, with `f` having one more.
fn interlaces(f: &UniPoly, g: &UniPoly, names: (&str, &str)) -> Result<(), String> {
    let tag = format!("{}/{}", names.0, names.1);
    if !g.is_constant() && !UniPoly::gcd(f, g).map_err(|e| e.to_string())?.is_constant() {
        return Err(format!("{tag}: common root"));
    }
    let mut rf = isolate_real_roots(f).map_err(|e| e.to_string())?;
    let mut rg = if g.is_constant() {
        Vec::new()
    } else {
        isolate_real_roots(g).map_err(|e| e.to_string())?
    };
    if rf.len() != rg.len() + 1 {
        return Err(format!("{tag}: root counts {} and {}", rf.len(), rg.len()));
    }
    separate(&mut rf, &mut rg);
    let mut merged: Vec<(bool, &IsolatingInterval)> =
        rf.iter().map(|r| (true, r)).chain(rg.iter().map(|r| (false, r))).collect();
    merged.sort_by(|a, b| (&a.1.lo, &a.1.hi).cmp(&(&b.1.lo, &b.1.hi)));
    let alternating = merged.iter().enumerate().all(|(i, (is_f, _))| *is_f == (i % 2 == 0));
    if alternating {
        Ok(())
    } else {
        Err(format!("{tag}: no strict interlacing; {} vs {}", show(&rf), show(&rg)))
    }
}

/// Root counts of `P_L`, `Q_L` and the five interlacing relations.
pub fn verify_interlacing(l_max: usize) -> VerificationReport {
    VerificationReport::collect("interlacing", (1..=l_max).collect(), |l| {
        let cur = build_asymptote_polys(l);
        let prev = build_asymptote_polys(l - 1);
        distinct_roots(&cur.p, l + 1, "P_L")?;
        distinct_roots(&cur.q, l, "Q_L")?;
        interlaces(&cur.p, &prev.p, ("P_L", "P_L-1"))?;
        interlaces(&cur.q, &prev.q, ("Q_L", "Q_L-1"))?;
        interlaces(&cur.p, &cur.p.derivative(), ("P_L", "P_L'"))?;
        interlaces(&cur.q, &cur.q.derivative(), ("Q_L", "Q_L'"))?;
        interlaces(&cur.p, &cur.q, ("P_L", "Q_L"))
    })
}

/// `P_L = L Q_{L-1} (1+x^2) + x Q_L`.
pub fn verify_p_from_q_identity(l_max: usize) -> VerificationReport {
    VerificationReport::collect("identity-P-from-Q", (1..=l_max).collect(), |l| {
        let cur = build_asymptote_polys(l);
        let prev = build_asymptote_polys(l - 1);
        let one_plus_sq = UniPoly::from_ints(&[1, 0, 1]);
        let rhs = &(&prev.q.scale(&rat(l as i64, 1)) * &one_plus_sq) + &(&UniPoly::x() * &cur.q);
        if rhs == cur.p {
            Ok(())
        } else {
            Err(format!("P_L = {} but right side = {rhs}", cur.p))
        }
    })
}

/// Inversion between the `Q` and `C` families on `x > 0`: after clearing
/// `(1 + 1/x^2)^{(2L+3)/2} = (1+x^2)^{(2L+3)/2} / x^{2L+3}` both sides are
/// polynomials, `x^{L+1} Q_L(x) = (-1)^L x^{2L+3} numC_L(1/x)`.
pub fn verify_inversion(l_max: usize) -> VerificationReport {
    VerificationReport::collect("inversion", (0..=l_max).collect(), |l| {
        let fam = build_asymptote_polys(l);
        let lhs = fam.q.shift_degree(l + 1);
        let n = 2 * l + 3;
        if fam.num_c.degree().is_some_and(|d| d > n) {
            return Err(format!("numC_L degree exceeds {n}"));
        }
        let sign = if l % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let rhs = fam.num_c.reversed(n).scale(&sign);
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("{lhs} vs {rhs}"))
        }
    })
}

/// `numC_L` and `numD_L` have no common zero other than `0`.
pub fn verify_no_common_cd_root(l_max: usize) -> VerificationReport {
    VerificationReport::collect("no-common-C-D-root", (1..=l_max).collect(), |l| {
        let fam = build_asymptote_polys(l);
        let g = UniPoly::gcd(&fam.num_c, &fam.num_d).map_err(|e| e.to_string())?;
        let stripped = g.strip_x_powers();
        if stripped.is_constant() {
            return Ok(());
        }
        let roots = isolate_real_roots(&stripped).map_err(|e| e.to_string())?;
        if roots.is_empty() {
            Ok(())
        } else {
            Err(format!("gcd {g} has nonzero roots {}", show(&roots)))
        }
    })
}

/// `D_L` is the derivative of `C_{L-1}`, compared as numerators over
/// `(1+x^2)^{(2L+3)/2}`.
pub fn verify_cd_derivative_link(l_max: usize) -> VerificationReport {
    VerificationReport::collect("D-is-derivative-of-C", (1..=l_max).collect(), |l| {
        let cur = build_asymptote_polys(l);
        let prev = build_asymptote_polys(l - 1);
        let d = derivative_over_power(&prev.num_c, 2 * l as u32 + 1);
        if d == cur.num_d {
            Ok(())
        } else {
            Err(format!("numD_L = {} but derivative gives {d}", cur.num_d))
        }
    })
}
