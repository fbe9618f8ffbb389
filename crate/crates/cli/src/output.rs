//! CSV and JSON artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use dicke_core::model::ModelKind;
use dicke_core::observables::SweepRecord;
use serde::Serialize;

pub const CSV_HEADER: &str = "lambda,epsilon,N,L,energy,gap,gamma1_per_atom_raw,gamma1_per_atom_reduced,gamma2_per_atom,fidelity,dgamma1_dlambda";

pub const INCOMPLETE_TRAILER: &str = "# INCOMPLETE";

/// 17 significant digits, scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn csv_row(r: &SweepRecord) -> String {
    [
        fmt_f64(r.lambda),
        fmt_f64(r.epsilon),
        r.n_atoms.to_string(),
        r.excitation.map(|l| l.to_string()).unwrap_or_default(),
        fmt_f64(r.energy),
        fmt_f64(r.gap),
        fmt_f64(r.gamma1.per_atom_raw),
        fmt_f64(r.gamma1.per_atom_reduced),
        fmt_f64(r.gamma2_per_atom),
        fmt_opt(r.fidelity),
        fmt_opt(r.dgamma1_dlambda),
    ]
    .join(",")
}

pub fn write_csv_to<W: Write>(mut w: W, records: &[SweepRecord], complete: bool) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    if !complete {
        writeln!(w, "{INCOMPLETE_TRAILER}")?;
    }
    w.flush()
}

pub fn write_csv(path: &Path, records: &[SweepRecord], complete: bool) -> std::io::Result<()> {
    write_csv_to(BufWriter::new(File::create(path)?), records, complete)
}

pub fn csv_file_name(model: ModelKind, n_atoms: usize, epsilon: f64) -> String {
    format!("{}_n{n_atoms}_eps{epsilon}.csv", model.name())
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub n_atoms: usize,
    pub epsilon: f64,
    pub csv: String,
    pub points: usize,
    pub complete: bool,
    /// Couplings where the fidelity dropped below the threshold.
    pub transitions: Vec<f64>,
    pub max_ntr: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub model: String,
    pub omega: f64,
    pub omega0: f64,
    pub sweeps: Vec<SweepSummary>,
    pub wall_time_s: f64,
}
