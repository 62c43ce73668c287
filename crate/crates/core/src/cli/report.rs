//! The document every subcommand produces, rendered as JSON or text from
//! the same verdict list.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use super::io::{pairs, MatrixFile};
use crate::catalog::Check;
use crate::frames::FrameBounds;
use crate::intertwining::{PartnerResult, SpectralReport};
use crate::numerics::Tolerances;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct BoundsSection {
    pub lower: f64,
    pub upper: f64,
    pub tight: bool,
}

impl BoundsSection {
    pub fn new(bounds: &FrameBounds, tol: &Tolerances) -> Self {
        Self {
            lower: bounds.lower,
            upper: bounds.upper,
            tight: bounds.is_tight(tol),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub alpha: f64,
    pub beta: f64,
    pub beta_strong: f64,
    pub h2_n2: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartnerSection {
    pub h2: MatrixFile,
    pub residuals: Residuals,
}

impl PartnerSection {
    pub fn new(p: &PartnerResult) -> Self {
        Self {
            h2: MatrixFile::from_matrix(&p.h2),
            residuals: Residuals {
                alpha: p.residual_alpha,
                beta: p.residual_beta,
                beta_strong: p.residual_beta_strong,
                h2_n2: p.residual_h2n2,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KeptEntry {
    pub eigenvalue: f64,
    pub index: usize,
    pub image_norm: f64,
    pub residual: f64,
    pub image: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DroppedEntry {
    pub eigenvalue: f64,
    pub index: usize,
    pub image_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSection {
    pub spectrum_h1: Vec<f64>,
    pub spectrum_h2: Vec<f64>,
    pub unmatched_h2: Vec<f64>,
    pub included: bool,
    pub kept: Vec<KeptEntry>,
    pub dropped: Vec<DroppedEntry>,
}

impl SpectralSection {
    pub fn new(r: &SpectralReport) -> Self {
        Self {
            spectrum_h1: r.inclusion.spectrum_h1.clone(),
            spectrum_h2: r.inclusion.spectrum_h2.clone(),
            unmatched_h2: r.inclusion.unmatched_h2.clone(),
            included: r.inclusion.included,
            kept: r
                .kept_eigenvectors
                .iter()
                .map(|k| KeptEntry {
                    eigenvalue: k.eigenvalue,
                    index: k.index,
                    image_norm: k.image_norm,
                    residual: k.residual,
                    image: pairs(&k.image),
                })
                .collect(),
            dropped: r
                .dropped_eigenvectors
                .iter()
                .map(|d| DroppedEntry {
                    eigenvalue: d.eigenvalue,
                    index: d.index,
                    image_norm: d.image_norm,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub inputs: BTreeMap<String, String>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub option: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<PartnerSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSection>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, Value>,
    pub verdicts: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl ReportDocument {
    pub fn new(command: &str, tol: Tolerances) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            scenario: None,
            inputs: BTreeMap::new(),
            tolerances: tol,
            bounds: None,
            option: None,
            partner: None,
            spectral: None,
            artifacts: BTreeMap::new(),
            verdicts: Vec::new(),
            passed: true,
            error: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn artifact<T: Serialize>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).expect("plain data serializes");
        self.artifacts.insert(key.to_string(), v);
    }

    /// Recomputes `passed` from the verdicts and the error record.
    pub fn finish(&mut self) {
        self.passed = self.error.is_none() && self.verdicts.iter().all(|c| c.pass || !c.gating);
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "isospec {}", self.command);
        if let Some(name) = &self.scenario {
            let _ = writeln!(s, "scenario: {name}");
        }
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "input {k}: {v}");
        }
        let t = &self.tolerances;
        let _ = writeln!(
            s,
            "tolerances: herm {:e}, comm {:e}, inv {:e}, eigen {:e}, zero {:e}",
            t.hermiticity_tol,
            t.commutator_tol,
            t.invertibility_tol,
            t.eigen_match_tol,
            t.zero_vector_tol
        );
        if let Some(b) = &self.bounds {
            let _ = writeln!(
                s,
                "bounds: lower {:.12}, upper {:.12}, tight {}",
                b.lower, b.upper, b.tight
            );
        }
        if let Some(o) = &self.option {
            let _ = writeln!(s, "option: {o}");
        }
        if let Some(p) = &self.partner {
            let _ = writeln!(s, "h2 ({}x{}):", p.h2.rows, p.h2.cols);
            for r in 0..p.h2.rows {
                let row: Vec<String> = p.h2.entries[r * p.h2.cols..(r + 1) * p.h2.cols]
                    .iter()
                    .map(|[re, im]| format_complex(*re, *im))
                    .collect();
                let _ = writeln!(s, "  [{}]", row.join(", "));
            }
            let r = &p.residuals;
            let _ = writeln!(
                s,
                "residuals: alpha {:.3e}, beta {:.3e}, beta strong {:.3e}, [h2,N2] {:.3e}",
                r.alpha, r.beta, r.beta_strong, r.h2_n2
            );
        }
        if let Some(sp) = &self.spectral {
            let _ = writeln!(s, "sigma(h1): {}", format_list(&sp.spectrum_h1));
            let _ = writeln!(s, "sigma(h2): {}", format_list(&sp.spectrum_h2));
            let _ = writeln!(s, "kept images: {}", sp.kept.len());
            for k in &sp.kept {
                let _ = writeln!(
                    s,
                    "  eigenvalue {:.10} (index {}): |X'phi| = {:.6e}, residual {:.3e}",
                    k.eigenvalue, k.index, k.image_norm, k.residual
                );
            }
            let _ = writeln!(s, "dropped images: {}", sp.dropped.len());
            for d in &sp.dropped {
                let _ = writeln!(
                    s,
                    "  eigenvalue {:.10} (index {}): |X'phi| = {:.3e}",
                    d.eigenvalue, d.index, d.image_norm
                );
            }
        }
        for (key, value) in &self.artifacts {
            match value.as_array() {
                Some(items) if items.iter().all(Value::is_string) => {
                    let _ = writeln!(s, "{key}:");
                    for item in items.iter().filter_map(Value::as_str) {
                        let _ = writeln!(s, "  {item}");
                    }
                }
                _ => {
                    let _ = writeln!(s, "{key}: (see --format json)");
                }
            }
        }
        for c in &self.verdicts {
            let status = match (c.pass, c.gating) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "NOTE",
            };
            let _ = write!(
                s,
                "{status} {}: {:.3e} {} {:.3e}",
                c.name,
                c.measured,
                c.relation.symbol(),
                c.threshold
            );
            if c.locator != self.scenario.clone().unwrap_or_default() && !c.locator.is_empty() {
                let _ = write!(s, " [{}]", c.locator);
            }
            if let Some(n) = &c.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error {}: {}", e.kind, e.message);
        }
        let _ = writeln!(s, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re:.10}")
    } else {
        format!("{re:.10}{im:+.10}i")
    }
}

fn format_list(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.10}")).collect();
    format!("[{}]", parts.join(", "))
}
