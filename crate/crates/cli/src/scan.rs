//! Resumable case (v) scans written as JSONL, one record per candidate `Δ`.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use dihedrant_core::structure::{case_v_candidates, evaluate_case_v, CaseVRecord};
use dihedrant_core::{DihedralElement, Error, Limits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::order_json;

/// Scans use `pi = 1`; the `pi = 0` graphs are their images under `θ_a`.
pub const SCAN_PI: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

fn io_at(path: &Path) -> impl FnOnce(io::Error) -> ScanError + '_ {
    move |source| ScanError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// `(n, pi, Δ tokens)`, the identity of a scan record.
pub type Key = (usize, u8, Vec<String>);

pub fn key_of(n: usize, pi: u8, delta: &[DihedralElement]) -> Key {
    (n, pi, delta.iter().map(ToString::to_string).collect())
}

fn key_of_record(v: &Value) -> Option<Key> {
    let n = v.get("n")?.as_u64()? as usize;
    let pi = v.get("pi")?.as_u64()? as u8;
    let delta = v
        .get("delta")?
        .as_array()?
        .iter()
        .map(|t| t.as_str().map(str::to_owned))
        .collect::<Option<Vec<_>>>()?;
    Some((n, pi, delta))
}

pub fn record_json(rec: &CaseVRecord) -> Value {
    json!({
        "n": rec.n,
        "pi": rec.pi,
        "delta": rec.delta.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "connected": rec.connected,
        "arc_transitive": rec.arc_transitive,
        "aut_order": order_json(&rec.aut_order),
        "girth": rec.girth,
        "diameter": rec.diameter,
        "error": null,
    })
}

/// A record for a candidate whose evaluation hit a resource cap.
pub fn failed_record_json(n: usize, pi: u8, delta: &[DihedralElement], err: &Error) -> Value {
    json!({
        "n": n,
        "pi": pi,
        "delta": delta.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "connected": null,
        "arc_transitive": null,
        "aut_order": null,
        "girth": null,
        "diameter": null,
        "error": err.to_string(),
    })
}

/// Keys already present in `path`. A trailing partial line left by an
/// interrupted run is cut off so appends start on a fresh line.
pub fn existing_keys(path: &Path) -> Result<HashSet<Key>, ScanError> {
    let content = match fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashSet::new()),
        Err(e) => return Err(io_at(path)(e)),
    };
    let complete = match content.rfind('\n') {
        Some(i) => &content[..=i],
        None => "",
    };
    if complete.len() != content.len() {
        log::warn!("{}: dropping a partial trailing record", path.display());
        fs::write(path, complete).map_err(io_at(path))?;
    }
    let mut keys = HashSet::new();
    for line in complete.lines().filter(|l| !l.trim().is_empty()) {
        match serde_json::from_str::<Value>(line).ok().as_ref().and_then(key_of_record) {
            Some(k) => {
                keys.insert(k);
            }
            None => log::warn!("{}: skipping unreadable line", path.display()),
        }
    }
    Ok(keys)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub candidates: usize,
    pub skipped: usize,
    pub written: usize,
    pub arc_transitive: usize,
    pub errors: usize,
}

/// Scans every `n` in order, appending to `out` (or writing to stdout) and
/// skipping keys already in `out`. Candidates are evaluated in parallel on
/// the current rayon pool, in chunks, and written in enumeration order.
pub fn run_scan(ns: &[usize], out: Option<&Path>, limits: &Limits) -> Result<ScanSummary, ScanError> {
    let done = match out {
        Some(path) => existing_keys(path)?,
        None => HashSet::new(),
    };
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(
            OpenOptions::new().create(true).append(true).open(path).map_err(io_at(path))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let sink_path = out.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf);
    let mut summary = ScanSummary::default();
    let chunk = (rayon::current_num_threads() * 4).max(1);
    for &n in ns {
        let candidates = case_v_candidates(n)?;
        let total = candidates.len();
        let todo: Vec<Vec<DihedralElement>> = candidates
            .into_iter()
            .filter(|d| !done.contains(&key_of(n, SCAN_PI, d)))
            .collect();
        summary.candidates += total;
        summary.skipped += total - todo.len();
        log::info!("n = {n}: {} candidates to evaluate", todo.len());
        for batch in todo.chunks(chunk) {
            let results: Vec<Result<CaseVRecord, Error>> = batch
                .par_iter()
                .map(|delta| evaluate_case_v(n, SCAN_PI, delta, limits))
                .collect();
            for (delta, result) in batch.iter().zip(results) {
                let value = match result {
                    Ok(rec) => {
                        summary.arc_transitive += usize::from(rec.arc_transitive);
                        record_json(&rec)
                    }
                    Err(e) if e.is_resource() => {
                        summary.errors += 1;
                        failed_record_json(n, SCAN_PI, delta, &e)
                    }
                    Err(e) => return Err(e.into()),
                };
                writeln!(sink, "{value}").map_err(io_at(&sink_path))?;
                summary.written += 1;
            }
            sink.flush().map_err(io_at(&sink_path))?;
        }
    }
    Ok(summary)
}

/// Opens `path` for writing, naming it in the error.
pub fn create(path: &Path) -> Result<File, ScanError> {
    File::create(path).map_err(io_at(path))
}
