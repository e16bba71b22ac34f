//! Benchmark runner: every algorithm on every instance file of a directory,
//! each run under a wall-clock limit.
//!
//! Runs proceed in batches of the available parallelism. A run that misses
//! its deadline is recorded as a timeout and its thread is left to finish
//! in the background.

use std::path::{Path, PathBuf};
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::format::parse_instance;
use crate::model::{Instance, Money};
use crate::solve::{solve, Algorithm, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub instance: String,
    pub algorithm: String,
    pub status: Status,
    pub wall_us: u64,
    pub cost: Option<Money>,
    pub discount: Option<Money>,
    pub oracle_cost: Option<Money>,
    /// `cost − oracle_cost`, never negative.
    pub gap: Option<Money>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub timeout_secs: f64,
    pub entries: Vec<BenchEntry>,
}

struct Run {
    status: Status,
    wall: Duration,
    cost: Option<Money>,
    discount: Option<Money>,
    error: Option<String>,
}

/// Benchmarks `algorithms` on every regular file of `dir`, in name order.
pub fn run_bench(
    dir: &Path,
    algorithms: &[Algorithm],
    timeout: Duration,
) -> std::io::Result<BenchReport> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    let mut instances: Vec<(String, Result<Arc<Instance>, String>)> = Vec::new();
    for path in &files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_instance(&t).map_err(|e| e.to_string()))
            .map(Arc::new);
        instances.push((name, parsed));
    }

    // the oracle always runs, to supply gaps
    let mut cells: Vec<(usize, Algorithm)> = Vec::new();
    for (i, (_, parsed)) in instances.iter().enumerate() {
        if parsed.is_ok() {
            cells.push((i, Algorithm::Oracle));
            cells.extend(
                algorithms
                    .iter()
                    .filter(|&&a| a != Algorithm::Oracle)
                    .map(|&a| (i, a)),
            );
        }
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut runs: Vec<Run> = Vec::with_capacity(cells.len());
    for batch in cells.chunks(workers) {
        let start = Instant::now();
        let receivers: Vec<_> = batch
            .iter()
            .map(|&(i, algo)| {
                let instance = Arc::clone(instances[i].1.as_ref().expect("parsed"));
                let (tx, rx) = mpsc::channel();
                std::thread::spawn(move || {
                    let t0 = Instant::now();
                    let out = solve(&instance, algo, None, &Limits::default());
                    let _ = tx.send((out, t0.elapsed()));
                });
                rx
            })
            .collect();
        for rx in receivers {
            let left = timeout.saturating_sub(start.elapsed());
            runs.push(match rx.recv_timeout(left) {
                Ok((Ok(out), wall)) => Run {
                    status: Status::Ok,
                    wall,
                    cost: Some(out.result.total_cost),
                    discount: Some(out.result.total_discount),
                    error: None,
                },
                Ok((Err(e), wall)) => Run {
                    status: Status::Error,
                    wall,
                    cost: None,
                    discount: None,
                    error: Some(e.to_string()),
                },
                Err(_) => Run {
                    status: Status::Timeout,
                    wall: timeout,
                    cost: None,
                    discount: None,
                    error: None,
                },
            });
        }
    }

    let oracle_cost = |i: usize| {
        cells
            .iter()
            .zip(&runs)
            .find(|(&(j, a), _)| j == i && a == Algorithm::Oracle)
            .and_then(|(_, r)| r.cost)
    };
    let mut entries = Vec::new();
    for (i, (name, parsed)) in instances.iter().enumerate() {
        if let Err(e) = parsed {
            entries.extend(algorithms.iter().map(|a| BenchEntry {
                instance: name.clone(),
                algorithm: a.name().to_string(),
                status: Status::Error,
                wall_us: 0,
                cost: None,
                discount: None,
                oracle_cost: None,
                gap: None,
                error: Some(e.clone()),
            }));
            continue;
        }
        let best = oracle_cost(i);
        for &algo in algorithms {
            let (_, run) = cells
                .iter()
                .zip(&runs)
                .find(|(&(j, a), _)| j == i && a == algo)
                .expect("every cell ran");
            entries.push(BenchEntry {
                instance: name.clone(),
                algorithm: algo.name().to_string(),
                status: run.status,
                wall_us: run.wall.as_micros() as u64,
                cost: run.cost,
                discount: run.discount,
                oracle_cost: best,
                gap: best.zip(run.cost).map(|(o, c)| c - o),
                error: run.error.clone(),
            });
        }
    }
    Ok(BenchReport {
        timeout_secs: timeout.as_secs_f64(),
        entries,
    })
}
