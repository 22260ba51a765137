use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::rational::to_f64;
use crate::exact_arith::{format_rational, Rational};
use crate::field_core::ChargeSystem;
use crate::moments_asymptotes::{
    asymptote_directions, critical_index, moments, verify_cd_derivative_link, verify_p_from_q_identity,
    verify_interlacing, verify_inversion, verify_no_common_cd_root, CriticalIndex, DirectionReport,
    VerificationReport,
};
use crate::sign_product::{
    build_joint_polynomial, build_reduced_joint_polynomial, containment_check, ContainmentReport,
    DEFAULT_MAX_CHARGES,
};
use crate::zero_finder::{
    count_bound_check, find_zeros, orthogonality_diagnostics, CandidateSummary, CertifiedZero,
    Completeness, ObstructionNote, Rect, ZeroDiagnostic, ZeroKind,
};

use super::config::{ChargeEntry, LoadedConfig};
use super::{to_canonical_json, ReportError};

#[derive(Clone, Debug, Serialize)]
pub struct SystemEcho {
    pub m: usize,
    pub input: Vec<ChargeEntry>,
    /// Positions after translation; every frame-dependent quantity in the
    /// report (moments, polynomials) refers to this frame.
    pub normalized: Vec<ChargeEntry>,
    /// Added to every input position.
    pub shift: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentSection {
    /// `mu_0 .. mu_M` in the normalized frame.
    pub values: Vec<String>,
    pub critical: Option<CriticalIndex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroEntry {
    /// Input frame.
    #[serde(rename = "box")]
    pub rect: Rect,
    pub box_normalized: Rect,
    pub kind: ZeroKind,
    pub unique: bool,
    pub exact: bool,
    /// Box centre in the input frame.
    pub approx: (f64, f64),
    pub diagnostics: ZeroDiagnostic,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub m: usize,
    pub degree: u32,
    /// `3 M 2^M`.
    pub bound: u64,
    pub within_bound: bool,
    /// `(6M - 4) 2^M`, the degree of the literal product when no signed
    /// amplitude sum vanishes.
    pub product_degree_limit: u64,
    /// Degree after dividing out `(prod_k B_k)^{2^M}`.
    pub reduced_degree: u32,
    pub reduced_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountCheck {
    pub count: usize,
    /// `9 M^2 4^M`, as a decimal string.
    pub bound: String,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub system: SystemEcho,
    pub moments: MomentSection,
    pub directions: Option<DirectionReport>,
    pub zeros: Vec<ZeroEntry>,
    /// Input frame.
    pub undecided: Vec<Rect>,
    /// Input frame.
    pub search_box: Rect,
    pub completeness: Completeness,
    pub count: CountCheck,
    pub degree: Option<DegreeCheck>,
    pub candidates: Option<CandidateSummary>,
    pub containment: Option<ContainmentReport>,
    pub obstruction: Option<ObstructionNote>,
    pub verification: Vec<VerificationReport>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    /// Checks that can only fail through a bug: identity suites, the count
    /// bound and containment in the sign-product variety.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .verification
            .iter()
            .filter(|v| !v.passed)
            .map(|v| format!("verification suite {} failed", v.suite))
            .collect();
        if !self.count.within_bound {
            out.push("zero count exceeds 9 M^2 4^M".into());
        }
        if let Some(c) = &self.containment {
            if !c.passed {
                out.push(format!("zeros {:?} are not on the sign-product variety", c.failures));
            }
        }
        if let Some(d) = &self.degree {
            if !d.reduced_matches {
                out.push("direct and reduced sign products disagree".into());
            }
        }
        out
    }
}

fn echo(sys: &ChargeSystem, shift: &Rational) -> Vec<ChargeEntry> {
    sys.charges()
        .iter()
        .map(|c| ChargeEntry { x: format_rational(&(&c.position - shift)), a: format_rational(&c.amplitude) })
        .collect()
}

fn degree_check(sys: &ChargeSystem) -> Result<(DegreeCheck, crate::sign_product::PolynomializationResult), String> {
    let p = build_joint_polynomial(sys).map_err(|e| e.to_string())?;
    let reduced = build_reduced_joint_polynomial(sys).map_err(|e| e.to_string())?;
    let m = sys.len();
    let base = sys
        .positions()
        .map(crate::sign_product::squared_distance)
        .fold(crate::exact_arith::BiPoly::one(), |acc, b| &acc * &b);
    let reduced_matches = p.poly == &reduced * &base.pow(1 << m);
    Ok((
        DegreeCheck {
            m,
            degree: p.degree,
            bound: p.degree_bound(),
            within_bound: p.within_bound(),
            product_degree_limit: (6 * m as u64 - 4) << m,
            reduced_degree: reduced.total_degree().unwrap_or(0),
            reduced_matches,
        },
        p,
    ))
}

/// Moments, directions, zeros, the sign-product checks and the identity
/// suites, assembled into one report. Failures of one stage are recorded as
/// warnings and the remaining stages still run.
pub fn run_pipeline(cfg: &LoadedConfig) -> Result<AnalysisReport, ReportError> {
    let sys = &cfg.system;
    let shift = &cfg.shift;
    let back = -shift.clone();
    let mut warnings = Vec::new();

    let mv = moments(sys);
    let critical = match critical_index(sys) {
        Ok(c) => Some(c),
        Err(e) => {
            warnings.push(format!("moments_asymptotes: {e}"));
            None
        }
    };
    let directions = match asymptote_directions(sys) {
        Ok(d) => Some(d),
        Err(e) => {
            warnings.push(format!("moments_asymptotes: {e}"));
            None
        }
    };

    let (zs, candidates) = find_zeros(sys, cfg.search_box.clone(), &cfg.options)
        .map_err(|e| ReportError::Module { module: "zero_finder", message: e.to_string() })?;
    if let Some(c) = candidates.as_ref().and_then(|c| c.note.clone()) {
        warnings.push(format!("zero_finder: {c}"));
    }

    let (degree, containment) = if sys.len() <= DEFAULT_MAX_CHARGES {
        match degree_check(sys) {
            Ok((d, p)) => (Some(d), Some(containment_check(&p, &zs.zeros, cfg.options.precision))),
            Err(e) => {
                warnings.push(format!("sign_product: {e}"));
                (None, None)
            }
        }
    } else {
        warnings.push(format!(
            "sign_product: M = {} exceeds the expansion limit {DEFAULT_MAX_CHARGES}; degree and containment checks skipped",
            sys.len()
        ));
        (None, None)
    };

    let diagnostics = orthogonality_diagnostics(sys, &zs.zeros, cfg.options.precision);
    let zeros: Vec<ZeroEntry> = zs
        .zeros
        .iter()
        .zip(diagnostics)
        .map(|(z, mut d): (&CertifiedZero, ZeroDiagnostic)| {
            let rect = z.rect.translated_x(&back);
            d.center.0 -= to_f64(shift);
            ZeroEntry {
                approx: rect.center_f64(),
                rect,
                box_normalized: z.rect.clone(),
                kind: z.kind,
                unique: z.unique,
                exact: z.exact,
                diagnostics: d,
            }
        })
        .collect();

    let l = cfg.l_max;
    let suites: Vec<fn(usize) -> VerificationReport> = vec![
        verify_interlacing,
        verify_p_from_q_identity,
        verify_inversion,
        verify_no_common_cd_root,
        verify_cd_derivative_link,
    ];
    let verification: Vec<VerificationReport> = suites.par_iter().map(|f| f(l)).collect();

    Ok(AnalysisReport {
        system: SystemEcho {
            m: sys.len(),
            input: echo(sys, shift),
            normalized: echo(sys, &Rational::from_integer(0.into())),
            shift: format_rational(shift),
        },
        moments: MomentSection { values: mv.values.iter().map(format_rational).collect(), critical },
        directions,
        count: CountCheck {
            count: zeros.len(),
            bound: zs.count_bound.to_string(),
            within_bound: count_bound_check(&zs),
        },
        zeros,
        undecided: zs.undecided.iter().map(|r| r.translated_x(&back)).collect(),
        search_box: zs.search_box.translated_x(&back),
        completeness: zs.completeness,
        degree,
        candidates: candidates.map(|c| c.summary()),
        containment,
        obstruction: zs.moment_obstruction,
        verification,
        warnings,
    })
}
