//! Serializable run reports and the per-sample CSV table.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{CaseTag, KappaRelation};
use crate::helix::{AxisResult, DetectorResult, FormulaId, PropositionResult, SigmaSeries, SpecialFlags};
use crate::lorentz::{AngleKind, LorentzAngle};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_FILE: &str = "report.json";
pub const SAMPLES_FILE: &str = "samples.csv";
pub const CSV_HEADER: &str = "s,kappa_g,kappa_n,tau_g,sigma,d1,d2,d3";

/// Settings the run actually used, plus the input document verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub tol: f64,
    pub special_tol: f64,
    pub eps: f64,
    pub h: f64,
    pub samples: usize,
    pub window: [f64; 2],
    pub h_int: Option<f64>,
    pub input: serde_json::Value,
}

/// Summary statistics of one characterization series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub formula: FormulaId,
    pub valid: usize,
    pub masked_fraction: f64,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub rel_std: Option<f64>,
    pub max_abs: Option<f64>,
    pub constant: bool,
}

impl SeriesSummary {
    pub fn new(s: &SigmaSeries, tol: f64) -> Self {
        SeriesSummary {
            formula: s.formula,
            valid: s.valid,
            masked_fraction: s.masked_fraction,
            mean: s.mean,
            std: s.std,
            rel_std: s.rel_std,
            max_abs: s.max_abs,
            constant: s.is_constant(tol),
        }
    }
}

/// Outcome of one detector (relatively normal-slant or slant).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetectorSummary {
    pub case: CaseTag,
    pub verdict: bool,
    pub formula: Option<FormulaId>,
    pub constant: Option<f64>,
    pub rel_std: Option<f64>,
    pub angle: Option<LorentzAngle>,
    pub ambiguous: Vec<FormulaId>,
    pub note: Option<String>,
    pub sigma: Vec<SeriesSummary>,
    pub axis: Option<AxisResult>,
}

impl DetectorSummary {
    pub fn new(r: &DetectorResult, tol: f64) -> Self {
        DetectorSummary {
            case: r.case,
            verdict: r.verdict(),
            formula: r.detection.formula,
            constant: r.detection.constant,
            rel_std: r.detection.rel_std,
            angle: r.detection.angle,
            ambiguous: r.detection.ambiguous.clone(),
            note: r.note.clone(),
            sigma: r.series.iter().map(|s| SeriesSummary::new(s, tol)).collect(),
            axis: r.axis.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropositionRecord {
    pub name: String,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

impl From<&PropositionResult> for PropositionRecord {
    fn from(p: &PropositionResult) -> Self {
        PropositionRecord { name: p.name.to_string(), applicable: p.applicable, passed: p.passed, detail: p.detail.clone() }
    }
}

/// Which decomposition of the Frenet curvature the Darboux invariants obey.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaRelationRecord {
    pub selected: Option<String>,
    pub tolerance: f64,
    pub residuals: KappaRelation,
}

/// Largest defects of the normal-angle decompositions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiSummary {
    pub max_residual_kappa: f64,
    pub max_residual_tau_g: f64,
}

/// Integrator diagnostics of a synthesized curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisRecord {
    pub gram_drift: f64,
    pub step: f64,
    pub steps: usize,
    /// Sup-norm gap between recovered and prescribed (κ_g, κ_n, τ_g).
    pub invariant_roundtrip: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// Masked fraction of the series written to the CSV.
    pub masked_fraction: Option<f64>,
    pub kappa_relation: Option<KappaRelationRecord>,
    pub phi: Option<PhiSummary>,
    pub darboux_ode_residual: Option<f64>,
    pub synthesis: Option<SynthesisRecord>,
    pub notes: Vec<String>,
}

/// Description of samples.csv.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvInfo {
    pub header: String,
    /// Series whose valid samples make up the rows; absent when no series
    /// was evaluated, in which case every sample is written.
    pub series: Option<FormulaId>,
    pub rows: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelixReport {
    pub config: ConfigEcho,
    /// Absent for free curves, which carry no surface.
    pub case: Option<CaseTag>,
    pub special_flags: Option<SpecialFlags>,
    pub rns_verdict: bool,
    pub rns_formula: Option<FormulaId>,
    pub angle_kind: Option<AngleKind>,
    pub rns_constant: Option<f64>,
    pub slant_verdict: bool,
    pub axis: Option<AxisResult>,
    pub sigma: Vec<SeriesSummary>,
    pub rns: Option<DetectorSummary>,
    pub slant: Option<DetectorSummary>,
    pub proposition_results: Vec<PropositionRecord>,
    pub provenance: Provenance,
    pub samples_csv: CsvInfo,
}

impl HelixReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("malformed report: {e}")))
    }
}

/// One row of samples.csv; empty cells where a value does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub s: f64,
    pub kappa_g: Option<f64>,
    pub kappa_n: Option<f64>,
    pub tau_g: Option<f64>,
    pub sigma: Option<f64>,
    pub d1: Option<f64>,
    pub d2: Option<f64>,
    pub d3: Option<f64>,
}

pub fn write_csv<W: Write>(w: W, rows: &[SampleRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if rows.is_empty() {
        wtr.write_record(CSV_HEADER.split(',')).map_err(io)?;
    }
    for r in rows {
        wtr.serialize(r).map_err(io)?;
    }
    wtr.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn read_csv(path: &Path) -> Result<Vec<SampleRow>> {
    let mut rdr = csv::Reader::from_path(path).map_err(io)?;
    let header = rdr.headers().map_err(io)?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Validation(format!("unexpected CSV header `{header}`")));
    }
    rdr.deserialize().map(|r| r.map_err(io)).collect()
}

fn io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_matches_row_fields() {
        let mut buf = Vec::new();
        let row = SampleRow { s: 0.5, kappa_g: Some(1.0), kappa_n: None, tau_g: Some(-2.0), sigma: None, d1: None, d2: None, d3: None };
        write_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().nth(1).unwrap(), "0.5,1.0,,-2.0,,,,");

        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim_end(), CSV_HEADER);
    }
}
