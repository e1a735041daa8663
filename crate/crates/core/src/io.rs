//! Trajectory persistence: profile snapshots as JSON, the step log as CSV.
//!
//! Snapshot JSON uses shortest round-trip float encoding, so reading back a
//! written file reproduces the in-memory values bit-exactly. The CSV writer
//! prints 17 significant digits, which also round-trips `f64`.

use crate::flow::{Snapshot, StepRecord};
use crate::profile::{AxisInterval, ProfileError, RadiusProfile};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

pub const STEP_LOG_FILE: &str = "steps.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const MONITOR_REPORT_FILE: &str = "monitor_report.json";
pub const FIT_REPORT_FILE: &str = "fit_report.json";
pub const STEP_CSV_HEADER: &str = "t,dt,h,maxA,maxH,minRho,maxVY,maxKoverP,volume";

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("{0}")]
    Format(String),
}

/// Profile snapshot schema:
/// `{"a": .., "b": .., "n_cells": .., "rho": [..], "t": ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnapshotFile {
    pub a: f64,
    pub b: f64,
    pub n_cells: usize,
    pub rho: Vec<f64>,
    pub t: f64,
}

impl SnapshotFile {
    pub fn from_snapshot(snapshot: &Snapshot) -> Self {
        let interval = snapshot.profile.interval();
        Self {
            a: interval.a(),
            b: interval.b(),
            n_cells: snapshot.profile.n_cells(),
            rho: snapshot.profile.rho().to_vec(),
            t: snapshot.t,
        }
    }

    pub fn to_profile(&self) -> Result<(f64, RadiusProfile), ProfileError> {
        let interval = AxisInterval::new(self.a, self.b)?;
        let profile = RadiusProfile::new(interval, self.n_cells, self.rho.clone())?;
        Ok((self.t, profile))
    }
}

/// Rescaled snapshot: the same schema plus the zoom factor and rescaled time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RescaledSnapshotFile {
    pub a: f64,
    pub b: f64,
    pub n_cells: usize,
    pub rho: Vec<f64>,
    pub t: f64,
    pub alpha: f64,
    pub tau: f64,
}

pub fn snapshot_file_name(step: u64) -> String {
    format!("snapshot_{step:08}.json")
}

pub fn parse_snapshot_step(name: &str) -> Option<u64> {
    name.strip_prefix("snapshot_")?
        .strip_suffix(".json")?
        .parse()
        .ok()
}

pub fn write_snapshot(dir: &Path, snapshot: &Snapshot) -> Result<(), IoError> {
    let path = dir.join(snapshot_file_name(snapshot.step));
    let body = serde_json::to_string(&SnapshotFile::from_snapshot(snapshot))?;
    fs::write(path, body)?;
    Ok(())
}

pub fn read_snapshot_file(path: &Path) -> Result<SnapshotFile, IoError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// All snapshots of a trajectory directory, ordered by step index.
pub fn load_snapshots(dir: &Path) -> Result<Vec<Snapshot>, IoError> {
    let mut indexed = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        if let Some(step) = parse_snapshot_step(name) {
            indexed.push((step, entry.path()));
        }
    }
    indexed.sort_by_key(|(step, _)| *step);
    let mut snapshots = Vec::with_capacity(indexed.len());
    for (step, path) in indexed {
        let file = read_snapshot_file(&path)?;
        let (t, profile) = file.to_profile()?;
        snapshots.push(Snapshot { step, t, profile });
    }
    if snapshots.is_empty() {
        return Err(IoError::Format(format!(
            "no snapshots found in {}",
            dir.display()
        )));
    }
    Ok(snapshots)
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_step_log(path: &Path, log: &[StepRecord]) -> Result<(), IoError> {
    let mut out = String::with_capacity(log.len() * 128);
    out.push_str(STEP_CSV_HEADER);
    out.push('\n');
    for r in log {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt17(r.t),
            fmt17(r.dt),
            fmt17(r.h),
            fmt17(r.max_a),
            fmt17(r.max_h),
            fmt17(r.min_rho),
            fmt17(r.max_vy),
            fmt17(r.max_k_over_p),
            fmt17(r.volume),
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_step_log(path: &Path) -> Result<Vec<StepRecord>, IoError> {
    let body = fs::read_to_string(path)?;
    let mut lines = body.lines();
    match lines.next() {
        Some(header) if header == STEP_CSV_HEADER => {}
        other => return Err(IoError::Format(format!("bad step log header: {other:?}"))),
    }
    let mut log = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| IoError::Format(format!("step log row {}: {e}", i + 2)))?;
        if fields.len() != 9 {
            return Err(IoError::Format(format!(
                "step log row {} has {} fields",
                i + 2,
                fields.len()
            )));
        }
        log.push(StepRecord {
            t: fields[0],
            dt: fields[1],
            h: fields[2],
            max_a: fields[3],
            max_h: fields[4],
            min_rho: fields[5],
            max_vy: fields[6],
            max_k_over_p: fields[7],
            volume: fields[8],
        });
    }
    if log.is_empty() {
        return Err(IoError::Format("empty step log".to_string()));
    }
    Ok(log)
}
