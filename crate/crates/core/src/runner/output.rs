//! Output files of a sweep: CSV tables, the JSON manifest and a text summary.
//! Formatting is fixed so that identical runs give identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use super::config::RunConfig;
use super::sweep::{Analysis, PointData, PointResult};
use crate::analysis::truth_table::{INPUT_LABELS, OUTPUT_LABELS};
use crate::error::{Error, Result};

pub const METRICS_FILE: &str = "metrics.csv";
pub const TRUTH_TABLE_FILE: &str = "truth_table.csv";
pub const POSTSELECTED_FILE: &str = "truth_table_postselected.csv";
pub const CHI_FILE: &str = "chi.csv";
pub const UNITARY_FILE: &str = "closest_unitary.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const SUMMARY_FILE: &str = "summary.txt";

const CHANNEL_COLUMNS: [&str; 5] = ["depopulation", "optical_pumping", "cpt_leak", "cpt_repopulation", "rydberg_decay"];

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

/// Leading columns shared by every table.
fn point_prefix(r: &PointResult) -> String {
    let p = &r.point;
    format!("{},{},{},{}", p.index, p.geometry.name(), p.tau_pi_ns, p.temperature_uk)
}

fn ok_points(results: &[PointResult]) -> impl Iterator<Item = (&PointResult, &PointData)> {
    results.iter().filter_map(|r| r.outcome.as_ref().ok().map(|d| (r, d)))
}

pub fn metrics_csv(results: &[PointResult]) -> String {
    let mut s = String::from("tau_pi_ns,fidelity,purity,temperature_uK,geometry,index,theta_a,theta_b,rydberg_decay_probability,min_eigenvalue,clamped");
    for c in CHANNEL_COLUMNS {
        write!(s, ",norm_{c}").unwrap();
    }
    s.push('\n');
    for (r, d) in ok_points(results) {
        let (p, m, g) = (&r.point, &d.metrics, &d.diagnostics);
        write!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            p.tau_pi_ns,
            num(m.fidelity),
            num(m.purity),
            p.temperature_uk,
            p.geometry.name(),
            p.index,
            num(m.theta[0]),
            num(m.theta[1]),
            num(g.rydberg_probability),
            num(g.min_eigenvalue),
            g.clamped
        )
        .unwrap();
        for (_, v) in &g.channel_norms {
            write!(s, ",{}", num(*v)).unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn truth_table_csv(results: &[PointResult], postselected: bool) -> String {
    let labels: &[&str] = if postselected { &OUTPUT_LABELS[..4] } else { &OUTPUT_LABELS };
    let mut s = String::from("index,geometry,tau_pi_ns,temperature_uK,input");
    for l in labels {
        write!(s, ",{l}").unwrap();
    }
    s.push('\n');
    for (r, d) in ok_points(results) {
        let Some(t) = &d.truth_table else { continue };
        for (i, input) in INPUT_LABELS.iter().enumerate() {
            write!(s, "{},{input}", point_prefix(r)).unwrap();
            let row: &[f64] = if postselected { &t.postselected[i] } else { &t.raw.rows[i] };
            for v in row {
                write!(s, ",{}", num(*v)).unwrap();
            }
            s.push('\n');
        }
    }
    s
}

/// Process matrix in long format, one row per entry.
pub fn chi_csv(results: &[PointResult]) -> String {
    let mut s = String::from("index,geometry,tau_pi_ns,temperature_uK,row,col,re,im\n");
    for (r, d) in ok_points(results) {
        let Some(t) = &d.tomography else { continue };
        let chi = &t.process.chi;
        for i in 0..chi.nrows() {
            for j in 0..chi.ncols() {
                let z = chi[(i, j)];
                writeln!(s, "{},{i},{j},{},{}", point_prefix(r), num(z.re), num(z.im)).unwrap();
            }
        }
    }
    s
}

pub fn unitary_csv(results: &[PointResult]) -> String {
    let mut s = String::from("index,geometry,tau_pi_ns,temperature_uK,row,col,abs,re,im\n");
    for (r, d) in ok_points(results) {
        let Some(t) = &d.tomography else { continue };
        let u = &t.unitary.matrix;
        for i in 0..u.nrows() {
            for j in 0..u.ncols() {
                let z = u[(i, j)];
                writeln!(s, "{},{i},{j},{},{},{}", point_prefix(r), num(z.norm()), num(z.re), num(z.im)).unwrap();
            }
        }
    }
    s
}

#[derive(Serialize)]
struct TaskRecord<'a> {
    #[serde(flatten)]
    point: &'a super::model::SweepPoint,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<serde_json::Value>,
}

fn task_record(r: &PointResult) -> TaskRecord<'_> {
    match &r.outcome {
        Ok(d) => {
            let mut diag = json!({
                "fidelity": d.metrics.fidelity,
                "purity": d.metrics.purity,
                "theta": d.metrics.theta,
                "rydberg_decay_probability": d.diagnostics.rydberg_probability,
                "min_eigenvalue": d.diagnostics.min_eigenvalue,
                "clamped": d.diagnostics.clamped,
                "channel_norms": d.diagnostics.channel_norms.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
            });
            if let Some(t) = &d.truth_table {
                diag["truth_table_row_sum_error"] = json!(t.raw.row_sum_error());
            }
            if let Some(t) = &d.tomography {
                diag["chi_trace"] = json!(t.process.trace().re);
                diag["chi_anti_hermitian_residual"] = json!(t.process.anti_hermitian_residual);
                diag["unitary_eigenvalue"] = json!(t.unitary.eigenvalue);
                diag["unitary_gap"] = json!(t.unitary.gap);
                diag["unitarity_deviation"] = json!(t.unitary.unitarity_deviation);
            }
            TaskRecord { point: &r.point, status: "ok", error: None, diagnostics: Some(diag) }
        }
        Err(e) => TaskRecord { point: &r.point, status: "failed", error: Some(e), diagnostics: None },
    }
}

pub fn manifest_json(cfg: &RunConfig, analysis: Analysis, results: &[PointResult], files: &[&str]) -> String {
    let tasks: Vec<_> = results.iter().map(task_record).collect();
    let m = json!({
        "program": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "analysis": analysis,
        "config": cfg,
        "files": files,
        "tasks": tasks,
    });
    serde_json::to_string_pretty(&m).expect("manifest serializes") + "\n"
}

pub fn summary_text(analysis: Analysis, results: &[PointResult]) -> String {
    let failed = results.iter().filter(|r| r.outcome.is_err()).count();
    let mut s = format!("{} tasks, {} ok, {} failed ({analysis:?})\n", results.len(), results.len() - failed, failed);
    for r in results {
        let p = &r.point;
        match &r.outcome {
            Ok(d) => writeln!(
                s,
                "{:>4} {:<8} tau_pi {:>8} ns  T {:>6} uK  F {:.6}  P {:.6}  p_r {:.3e}",
                p.index,
                p.geometry.name(),
                p.tau_pi_ns,
                p.temperature_uk,
                d.metrics.fidelity,
                d.metrics.purity,
                d.diagnostics.rydberg_probability
            ),
            Err(e) => writeln!(s, "{:>4} FAILED {e}", p.index),
        }
        .unwrap();
    }
    let best = ok_points(results).max_by(|a, b| a.1.metrics.fidelity.total_cmp(&b.1.metrics.fidelity));
    if let Some((r, d)) = best {
        writeln!(
            s,
            "best fidelity {:.6} at {} tau_pi {} ns T {} uK",
            d.metrics.fidelity,
            r.point.geometry.name(),
            r.point.tau_pi_ns,
            r.point.temperature_uk
        )
        .unwrap();
    }
    s
}

fn write_file(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Writes all outputs to `dir` and returns the written paths. An empty sweep
/// writes only the manifest.
pub fn write_outputs(dir: &Path, cfg: &RunConfig, analysis: Analysis, results: &[PointResult]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
    let mut files: Vec<(&str, String)> = Vec::new();
    if !results.is_empty() {
        files.push((METRICS_FILE, metrics_csv(results)));
        match analysis {
            Analysis::Metrics => {}
            Analysis::TruthTable => {
                files.push((TRUTH_TABLE_FILE, truth_table_csv(results, false)));
                files.push((POSTSELECTED_FILE, truth_table_csv(results, true)));
            }
            Analysis::Tomography => {
                files.push((CHI_FILE, chi_csv(results)));
                files.push((UNITARY_FILE, unitary_csv(results)));
            }
        }
        files.push((SUMMARY_FILE, summary_text(analysis, results)));
    }
    let names: Vec<&str> = files.iter().map(|(n, _)| *n).collect();
    let manifest = manifest_json(cfg, analysis, results, &names);
    files.push((MANIFEST_FILE, manifest));
    let mut written = Vec::new();
    for (name, text) in &files {
        write_file(dir, name, text)?;
        written.push(dir.join(name));
    }
    Ok(written)
}
