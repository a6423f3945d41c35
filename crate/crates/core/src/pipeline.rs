//! End-to-end runs: document in, report and sample table out.

use std::fs;
use std::path::{Path, PathBuf};

use crate::curve::{reparametrize_unit_speed, CurveSamples};
use crate::document::{Document, Job, Overrides};
use crate::error::{Error, Result};
use crate::frames::{
    check_phi_relations, darboux_apparatus, darboux_ode_residual, frenet_apparatus, kappa_relation_residuals, DarbouxSample,
};
use crate::helix::{analyze_helix, axis_at, run_slant, HelixConfig, SigmaSeries, DEFAULT_SPECIAL_TOL, DEFAULT_TOL};
use crate::report::{
    ConfigEcho, CsvInfo, DetectorSummary, HelixReport, KappaRelationRecord, PhiSummary, PropositionRecord, Provenance,
    SampleRow, SeriesSummary, SynthesisRecord, CSV_HEADER, REPORT_FILE, SAMPLES_FILE, TOOL_NAME, TOOL_VERSION,
};
use crate::synthesis::{synthesize_samples, InitialFrame, SynthesizedCurve};

/// Relative tolerance for selecting a curvature decomposition.
pub const KAPPA_RELATION_TOL: f64 = 1e-6;

/// Samples dropped at each end when measuring the φ torsion relation,
/// where one-sided stencils dominate the error.
const PHI_TRIM: usize = 5;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub tol: f64,
    pub special_tol: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tol: DEFAULT_TOL, special_tol: DEFAULT_SPECIAL_TOL }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: HelixReport,
    pub rows: Vec<SampleRow>,
}

impl RunOutput {
    /// Applicable propositions that failed.
    pub fn failed_propositions(&self) -> Vec<&PropositionRecord> {
        self.report.proposition_results.iter().filter(|p| p.applicable && !p.passed).collect()
    }
}

/// Parse, validate and run a JSON document.
pub fn run_document(text: &str, over: &Overrides, opts: &RunOptions) -> Result<RunOutput> {
    let doc = Document::from_json(text)?;
    let input: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Validation(e.to_string()))?;
    let job = doc.validate(over)?;
    run_job(&job, input, opts)
}

pub fn run_job(job: &Job, input: serde_json::Value, opts: &RunOptions) -> Result<RunOutput> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::Validation(format!("tol must be positive, got {}", opts.tol)));
    }
    if !(opts.special_tol > 0.0 && opts.special_tol.is_finite()) {
        return Err(Error::Validation(format!("special_tol must be positive, got {}", opts.special_tol)));
    }
    let settings = job.settings();
    let (window, h_int) = match job {
        Job::Analyze { curve, .. } => (curve.window, None),
        Job::Synthesize { profile, .. } => (profile.window, Some(profile.h_int)),
    };
    let config = ConfigEcho {
        mode: job.mode().to_string(),
        tol: opts.tol,
        special_tol: opts.special_tol,
        eps: settings.eps,
        h: settings.h,
        samples: settings.samples,
        window: [window.0, window.1],
        h_int,
        input,
    };
    match job {
        Job::Analyze { surface, curve, .. } => {
            let table = reparametrize_unit_speed(curve, surface.as_ref(), &job.numeric())?;
            analyze_table(&table, config, opts, None)
        }
        Job::Synthesize { profile, .. } => {
            let (synth, table) = synthesize_samples(profile, &InitialFrame::canonical(profile.case), settings.samples)?;
            let synthesis = Synthesis { curve: &synth, eval: &|s| profile.eval(s) };
            analyze_table(&table, config, opts, Some(synthesis))
        }
    }
}

struct Synthesis<'a> {
    curve: &'a SynthesizedCurve,
    eval: &'a dyn Fn(f64) -> Result<(f64, f64, f64)>,
}

fn analyze_table(table: &CurveSamples, config: ConfigEcho, opts: &RunOptions, synth: Option<Synthesis>) -> Result<RunOutput> {
    let eps = config.eps;
    let mut notes = Vec::new();
    let mut provenance = Provenance {
        tool: TOOL_NAME.to_string(),
        version: TOOL_VERSION.to_string(),
        masked_fraction: None,
        kappa_relation: None,
        phi: None,
        darboux_ode_residual: None,
        synthesis: None,
        notes: Vec::new(),
    };

    if table.normal.is_none() {
        // A free curve has no surface: only the Frenet-based slant test applies.
        let frenet = frenet_apparatus(table, eps)?;
        let slant = run_slant(&frenet, opts.tol)?;
        notes.push("free curve without a surface: Darboux invariants and the relatively normal-slant test do not apply".into());
        provenance.notes = notes;
        let rows: Vec<SampleRow> = table
            .s
            .iter()
            .map(|&s| SampleRow { s, kappa_g: None, kappa_n: None, tau_g: None, sigma: None, d1: None, d2: None, d3: None })
            .collect();
        let report = HelixReport {
            config,
            case: None,
            special_flags: None,
            rns_verdict: false,
            rns_formula: None,
            angle_kind: None,
            rns_constant: None,
            slant_verdict: slant.verdict(),
            axis: None,
            sigma: Vec::new(),
            rns: None,
            slant: Some(DetectorSummary::new(&slant, opts.tol)),
            proposition_results: Vec::new(),
            provenance,
            samples_csv: CsvInfo { header: CSV_HEADER.to_string(), series: None, rows: rows.len() },
        };
        return Ok(RunOutput { report, rows });
    }

    let (case, darboux) = darboux_apparatus(table, eps)?;
    let frenet = match frenet_apparatus(table, eps) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("Frenet apparatus unavailable ({}): {e}", e.kind()));
            None
        }
    };
    let cfg = HelixConfig { tol: opts.tol, special_tol: opts.special_tol };
    let analysis = analyze_helix(case, &darboux, frenet.as_deref(), &cfg)?;

    if let Some(fr) = &frenet {
        let residuals = kappa_relation_residuals(fr, &darboux);
        provenance.kappa_relation = Some(KappaRelationRecord {
            selected: residuals.selected(KAPPA_RELATION_TOL).map(str::to_string),
            tolerance: KAPPA_RELATION_TOL,
            residuals,
        });
        match check_phi_relations(case, fr, &darboux) {
            Ok(phi) => {
                let inner = if phi.len() > 2 * PHI_TRIM { &phi[PHI_TRIM..phi.len() - PHI_TRIM] } else { &phi[..] };
                provenance.phi = Some(PhiSummary {
                    max_residual_kappa: phi.iter().fold(0.0, |a, p| a.max(p.residual_kappa.abs())),
                    max_residual_tau_g: inner.iter().fold(0.0, |a, p| a.max(p.residual_tau_g.abs())),
                });
            }
            Err(e) => notes.push(format!("normal-angle relations skipped ({}): {e}", e.kind())),
        }
    }
    provenance.darboux_ode_residual = Some(darboux_ode_residual(case, &darboux, 0)?);
    if let Some(sy) = &synth {
        let mut gap: f64 = 0.0;
        for d in &darboux {
            let (kg, kn, tg) = (sy.eval)(d.s)?;
            gap = gap.max((d.kappa_g - kg).abs()).max((d.kappa_n - kn).abs()).max((d.tau_g - tg).abs());
        }
        provenance.synthesis = Some(SynthesisRecord {
            gram_drift: sy.curve.gram_drift,
            step: sy.curve.step,
            steps: sy.curve.s.len() - 1,
            invariant_roundtrip: gap,
        });
    }
    if let Some(n) = &analysis.rns.note {
        notes.push(format!("relatively normal-slant test: {n}"));
    }
    if let Some(n) = analysis.slant.as_ref().and_then(|s| s.note.as_ref()) {
        notes.push(format!("slant test: {n}"));
    }

    let rns = &analysis.rns;
    let verdict = rns.verdict();
    let series = rns.selected().or_else(|| best_candidate(&rns.series, opts.tol));
    provenance.masked_fraction = series.map(|s| s.masked_fraction);
    let rows = sample_rows(&darboux, series, if verdict { rns.axis.as_ref() } else { None })?;
    provenance.notes = notes;

    let report = HelixReport {
        config,
        case: Some(case),
        special_flags: Some(analysis.flags),
        rns_verdict: verdict,
        rns_formula: rns.detection.formula.filter(|_| verdict),
        angle_kind: rns.detection.angle.map(|a| a.kind).filter(|_| verdict),
        rns_constant: rns.detection.constant.filter(|_| verdict),
        slant_verdict: analysis.slant.as_ref().is_some_and(|s| s.verdict()),
        axis: rns.axis.clone().filter(|_| verdict),
        sigma: rns.series.iter().map(|s| SeriesSummary::new(s, opts.tol)).collect(),
        rns: Some(DetectorSummary::new(rns, opts.tol)),
        slant: analysis.slant.as_ref().map(|s| DetectorSummary::new(s, opts.tol)),
        proposition_results: analysis.propositions.iter().map(PropositionRecord::from).collect(),
        provenance,
        samples_csv: CsvInfo { header: CSV_HEADER.to_string(), series: series.map(|s| s.formula), rows: rows.len() },
    };
    Ok(RunOutput { report, rows })
}

/// Series with the smallest spread among those with valid samples.
fn best_candidate(series: &[SigmaSeries], tol: f64) -> Option<&SigmaSeries> {
    series
        .iter()
        .filter_map(|s| s.effective_rel_std(tol).map(|r| (r, s)))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, s)| s)
}

fn sample_rows(
    darboux: &[DarbouxSample],
    series: Option<&SigmaSeries>,
    axis: Option<&crate::helix::AxisResult>,
) -> Result<Vec<SampleRow>> {
    let branch = axis.and_then(|a| a.branches.iter().find(|b| b.branch == a.branch));
    let mut rows = Vec::with_capacity(darboux.len());
    for (k, d) in darboux.iter().enumerate() {
        let sigma = match series {
            Some(sr) if !sr.is_valid(k) => continue,
            Some(sr) => sr.sigma[k],
            None => None,
        };
        let dv = match (axis, branch) {
            (Some(a), Some(b)) => Some(axis_at(a.formula, d, b.angle, b.branch as f64)?),
            _ => None,
        };
        rows.push(SampleRow {
            s: d.s,
            kappa_g: Some(d.kappa_g),
            kappa_n: Some(d.kappa_n),
            tau_g: Some(d.tau_g),
            sigma,
            d1: dv.map(|v| v.x1),
            d2: dv.map(|v| v.x2),
            d3: dv.map(|v| v.x3),
        });
    }
    Ok(rows)
}

/// Paths of the two artifacts inside `out`.
pub fn artifact_paths(out: &Path) -> (PathBuf, PathBuf) {
    (out.join(REPORT_FILE), out.join(SAMPLES_FILE))
}

/// Write report.json and samples.csv; on any failure both are removed.
pub fn write_artifacts(out: &Path, run: &RunOutput) -> Result<()> {
    let result = (|| {
        fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        let (report_path, csv_path) = artifact_paths(out);
        let json = run.report.to_json()?;
        fs::write(&report_path, json).map_err(|e| Error::Io(format!("{}: {e}", report_path.display())))?;
        let file = fs::File::create(&csv_path).map_err(|e| Error::Io(format!("{}: {e}", csv_path.display())))?;
        crate::report::write_csv(std::io::BufWriter::new(file), &run.rows)
    })();
    if result.is_err() {
        remove_artifacts(out);
    }
    result
}

/// Delete report.json and samples.csv from `out` if present.
pub fn remove_artifacts(out: &Path) {
    let (r, c) = artifact_paths(out);
    let _ = fs::remove_file(r);
    let _ = fs::remove_file(c);
}
