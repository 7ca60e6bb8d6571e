//! Batch decomposition of graph files.
//!
//! Items are independent: each is parsed, gated, decomposed and verified on
//! its own, in parallel up to a worker bound, and its certificate is written
//! atomically (temporary file, then rename). Failures are collected; with
//! `fail_fast` items not yet started are skipped after the first one.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cert::NiceDecomposition;
use crate::certify::{verify_nice, verify_plain};
use crate::class_gate::{classify, classify_report, CaseTag};
use crate::decompose::{decompose_21, decompose_nice, DecomposeError, DecomposeOptions};
use crate::graph::PlaneGraph;
use crate::io::{emit_cert, parse_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Nice,
    Plain,
}

#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub inputs: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub mode: Mode,
    /// Require this case instead of accepting any.
    pub case: Option<CaseTag>,
    pub fail_fast: bool,
    /// 0 means one per available core.
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Ok,
    Skipped,
    Failed,
    TheoremViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub input: PathBuf,
    pub status: ItemStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub ok: usize,
    pub failed: usize,
    pub skipped: usize,
    pub items: Vec<ItemReport>,
}

impl BatchSummary {
    /// 0 when every item succeeded, 3 if any hit a theorem violation,
    /// otherwise 1.
    pub fn exit_code(&self) -> i32 {
        let worst = self.items.iter().map(|i| i.status).max();
        match worst {
            None | Some(ItemStatus::Ok) => 0,
            Some(ItemStatus::TheoremViolation) => 3,
            _ => 1,
        }
    }
}

pub fn run_batch(cfg: &BatchConfig) -> std::io::Result<BatchSummary> {
    fs::create_dir_all(&cfg.out_dir)?;
    let stop = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    let items: Vec<ItemReport> = pool.install(|| {
        cfg.inputs
            .par_iter()
            .map(|input| {
                if cfg.fail_fast && stop.load(Ordering::SeqCst) {
                    return ItemReport {
                        input: input.clone(),
                        status: ItemStatus::Skipped,
                        certificate: None,
                        error: None,
                    };
                }
                let r = run_item(cfg, input);
                if r.status != ItemStatus::Ok {
                    stop.store(true, Ordering::SeqCst);
                }
                r
            })
            .collect()
    });
    let count = |s: ItemStatus| items.iter().filter(|i| i.status == s).count();
    Ok(BatchSummary {
        ok: count(ItemStatus::Ok),
        failed: count(ItemStatus::Failed) + count(ItemStatus::TheoremViolation),
        skipped: count(ItemStatus::Skipped),
        items,
    })
}

fn run_item(cfg: &BatchConfig, input: &Path) -> ItemReport {
    let fail =
        |status, msg: String| ItemReport { input: input.to_path_buf(), status, certificate: None, error: Some(msg) };
    let text = match fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return fail(ItemStatus::Failed, format!("read: {e}")),
    };
    let g = match parse_graph(&text) {
        Ok(g) => g,
        Err(e) => return fail(ItemStatus::Failed, format!("parse: {e}")),
    };
    let cert = match certify_one(&g, cfg) {
        Ok(c) => c,
        Err(e) if e.is_theorem_violation() => return fail(ItemStatus::TheoremViolation, e.to_string()),
        Err(e) => return fail(ItemStatus::Failed, e.to_string()),
    };
    let stem = input.file_stem().map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned());
    let target = cfg.out_dir.join(format!("{stem}.cert.json"));
    match write_atomic(&target, emit_cert(&cert).as_bytes()) {
        Ok(()) => {
            ItemReport { input: input.to_path_buf(), status: ItemStatus::Ok, certificate: Some(target), error: None }
        }
        Err(e) => fail(ItemStatus::Failed, format!("write: {e}")),
    }
}

fn certify_one(g: &PlaneGraph, cfg: &BatchConfig) -> Result<NiceDecomposition, DecomposeError> {
    let simple = g.to_simple();
    if let Some(case) = cfg.case {
        if !classify(&simple).contains(&case) {
            return Err(DecomposeError::OutOfClass(Box::new(classify_report(&simple))));
        }
    }
    let opts = DecomposeOptions::default();
    let cert = match cfg.mode {
        Mode::Nice => {
            let e = match g.boundary_edge() {
                Some(e) => e,
                None => {
                    let faces = g.faces();
                    let outer = faces.outer().ok_or(DecomposeError::NoBoundaryEdge)?;
                    *faces.face(outer).walk.first().ok_or(DecomposeError::NoBoundaryEdge)?
                }
            };
            let (c, _) = decompose_nice(g, e, &opts)?;
            let v = verify_nice(&simple, e, &c);
            if !v.is_ok() {
                return Err(DecomposeError::StepRejected { kind: None, verdict: v });
            }
            c
        }
        Mode::Plain => {
            let (c, _) = decompose_21(g, &opts)?;
            let v = verify_plain(&simple, &c);
            if !v.is_ok() {
                return Err(DecomposeError::StepRejected { kind: None, verdict: v });
            }
            c
        }
    };
    Ok(cert)
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let name = path.file_name().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}
