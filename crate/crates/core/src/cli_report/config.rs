use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{format_rational, parse_rational, Rational};
use crate::field_core::{Charge, ChargeSystem};
use crate::zero_finder::{Rect, SearchOptions};

use super::ReportError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeEntry {
    /// Position on the line.
    pub x: String,
    /// Amplitude.
    pub a: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxEntry {
    pub x_lo: String,
    pub x_hi: String,
    pub y_lo: String,
    pub y_hi: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour_y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

/// The JSON run configuration as written by the user. Exact quantities are
/// strings: `"p/q"`, integers or decimals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub charges: Vec<ChargeEntry>,
    /// In the input frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_box: Option<BoxEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputPaths>,
}

/// A validated configuration in the normalized frame, where every position
/// is positive. `shift` maps input positions to normalized ones.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub raw: RunConfig,
    pub system: ChargeSystem,
    pub shift: Rational,
    /// Normalized frame.
    pub search_box: Option<Rect>,
    pub options: SearchOptions,
    pub l_max: usize,
}

fn field(name: String, v: &str) -> Result<Rational, ReportError> {
    parse_rational(v).map_err(|_| ReportError::Field {
        field: name,
        message: format!("'{v}' is not an exact number (use p/q, an integer or a decimal)"),
    })
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds a configuration from exact input-frame charges.
    pub fn from_charges(pairs: &[(Rational, Rational)]) -> Self {
        Self {
            charges: pairs
                .iter()
                .map(|(x, a)| ChargeEntry { x: format_rational(x), a: format_rational(a) })
                .collect(),
            search_box: None,
            tolerance: None,
            precision_bits: None,
            l_max: None,
            output: None,
        }
    }

    /// Validates and normalizes. `default_precision` applies when the
    /// config does not set one.
    pub fn validate(self, default_precision: Option<u32>) -> Result<LoadedConfig, ReportError> {
        if self.charges.is_empty() {
            return Err(ReportError::Invalid("a configuration needs at least one charge".into()));
        }
        let mut charges = Vec::with_capacity(self.charges.len());
        for (i, c) in self.charges.iter().enumerate() {
            let x = field(format!("charges[{i}].x"), &c.x)?;
            let a = field(format!("charges[{i}].a"), &c.a)?;
            if a.is_zero() {
                return Err(ReportError::Invalid(format!("charges[{i}] has zero amplitude")));
            }
            charges.push(Charge::new(x, a));
        }
        let mut sorted: Vec<&Rational> = charges.iter().map(|c| &c.position).collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(ReportError::Invalid(format!(
                "two charges share the position {}",
                format_rational(w[0])
            )));
        }
        let (system, shift) = ChargeSystem::normalized(charges).map_err(|e| ReportError::Invalid(e.to_string()))?;

        let mut options = SearchOptions::default();
        if let Some(p) = self.precision_bits.or(default_precision) {
            if p < crate::field_core::MIN_PRECISION {
                return Err(ReportError::Field {
                    field: "precision_bits".into(),
                    message: format!("{p} is below the minimum of {}", crate::field_core::MIN_PRECISION),
                });
            }
            options.precision = p;
        }
        if let Some(t) = &self.tolerance {
            let t = field("tolerance".into(), t)?;
            if t <= Rational::zero() {
                return Err(ReportError::Field { field: "tolerance".into(), message: "must be positive".into() });
            }
            options.tol = t;
        }
        let search_box = match &self.search_box {
            None => None,
            Some(b) => {
                let r = Rect::new(
                    field("search_box.x_lo".into(), &b.x_lo)?,
                    field("search_box.x_hi".into(), &b.x_hi)?,
                    field("search_box.y_lo".into(), &b.y_lo)?,
                    field("search_box.y_hi".into(), &b.y_hi)?,
                );
                if !r.is_valid() {
                    return Err(ReportError::Field { field: "search_box".into(), message: "lower bound above upper bound".into() });
                }
                Some(r.translated_x(&shift))
            }
        };
        let l_max = self.l_max.unwrap_or(crate::moments_asymptotes::DEFAULT_L_MAX);
        Ok(LoadedConfig { raw: self, system, shift, search_box, options, l_max })
    }
}

/// Reads, parses and validates a JSON configuration file.
pub fn load_config(path: &Path, default_precision: Option<u32>) -> Result<LoadedConfig, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|e| ReportError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    RunConfig::from_json(&text)?.validate(default_precision)
}
