//! Shared pieces of the `att` command: model loading, corpus coverage and
//! the checker benchmark.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use att_core::{bench_family, check_document, parse_document, Rule};
use att_model::error::ModelError;
use att_model::format::{load_model, Model};
use att_model::shipped;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
    #[error("{0}")]
    Usage(String),
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A shipped model by name, or a model file by path.
pub fn load_model_arg(arg: &str, max_size: usize) -> Result<Model, CliError> {
    if let Some(m) = shipped::all().into_iter().find(|m| m.name == arg) {
        return Ok(m);
    }
    let text = read(Path::new(arg))?;
    load_model(&text, max_size).map_err(|source| CliError::Model {
        path: arg.to_string(),
        source,
    })
}

/// One timed size of the benchmark family.
#[derive(Clone, Debug, Serialize)]
pub struct BenchPoint {
    pub n: usize,
    pub nodes: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
    /// Least-squares slope of `ln seconds` against `ln n`.
    pub exponent: f64,
    pub total_seconds: f64,
}

/// The least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// Stack size for threads running the checker on deeply nested terms.
pub const DEEP_STACK: usize = 1 << 30;

/// Runs `f` on a thread with [`DEEP_STACK`] bytes of stack.
pub fn with_deep_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(DEEP_STACK)
        .spawn(f)
        .expect("spawn a checker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}

/// Checks `bench_family(n)` for each size, keeping the best of `reps` runs.
pub fn bench(sizes: &[usize], reps: usize) -> Result<BenchReport, String> {
    let sizes = sizes.to_vec();
    with_deep_stack(move || bench_on_this_thread(&sizes, reps))
}

fn bench_on_this_thread(sizes: &[usize], reps: usize) -> Result<BenchReport, String> {
    let start = Instant::now();
    let mut points = Vec::new();
    for &n in sizes {
        let doc = bench_family(n);
        let mut best = f64::INFINITY;
        let mut nodes = 0;
        for _ in 0..reps.max(1) {
            let t = Instant::now();
            let reports = check_document(&doc);
            best = best.min(t.elapsed().as_secs_f64());
            nodes = 0;
            for r in reports {
                nodes += r.result.map_err(|e| e.to_string())?.size();
            }
        }
        points.push(BenchPoint {
            n,
            nodes,
            seconds: best,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.seconds.max(1e-9).ln()).collect();
    Ok(BenchReport {
        exponent: slope(&xs, &ys),
        points,
        total_seconds: start.elapsed().as_secs_f64(),
    })
}

/// The `.att` files directly inside a directory, sorted.
pub fn att_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut out: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "att"))
        .collect();
    out.sort();
    Ok(out)
}

/// The expected error fragment of a reject file, from its `-- expect:` line.
pub fn expected_error(src: &str) -> Option<String> {
    src.lines()
        .find_map(|l| l.trim().strip_prefix("-- expect:"))
        .map(|s| s.trim().to_string())
}

/// The outcome of one corpus file.
#[derive(Clone, Debug, Serialize)]
pub struct FileOutcome {
    pub file: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub accept: Vec<FileOutcome>,
    pub reject: Vec<FileOutcome>,
    pub rule_counts: BTreeMap<String, usize>,
    pub missing_rules: Vec<String>,
    pub seconds: f64,
}

impl Coverage {
    pub fn ok(&self) -> bool {
        self.missing_rules.is_empty()
            && self.accept.iter().all(|f| f.ok)
            && self.reject.iter().all(|f| f.ok)
    }
}

fn accept_file(path: &Path, counts: &mut BTreeMap<String, usize>) -> Result<FileOutcome, CliError> {
    let src = read(path)?;
    let file = path.display().to_string();
    let doc = match parse_document(&src) {
        Ok(d) => d,
        Err(e) => {
            return Ok(FileOutcome {
                file,
                ok: false,
                detail: format!("parse error at {e}"),
            })
        }
    };
    let mut failures = Vec::new();
    for r in check_document(&doc) {
        match r.result {
            Ok(c) => {
                for (k, v) in c.rule_counts() {
                    *counts.entry(k.to_string()).or_default() += v;
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    Ok(FileOutcome {
        file,
        ok: failures.is_empty() && !doc.items.is_empty(),
        detail: failures.join("\n"),
    })
}

/// A reject file passes when its last judgment fails with the expected
/// message and every earlier one checks.
fn reject_file(path: &Path) -> Result<FileOutcome, CliError> {
    let src = read(path)?;
    let file = path.display().to_string();
    let Some(expect) = expected_error(&src) else {
        return Ok(FileOutcome {
            file,
            ok: false,
            detail: "missing `-- expect:` line".into(),
        });
    };
    let doc = match parse_document(&src) {
        Ok(d) => d,
        Err(e) => {
            return Ok(FileOutcome {
                file,
                ok: false,
                detail: format!("parse error at {e}"),
            })
        }
    };
    let reports = check_document(&doc);
    let Some((last, rest)) = reports.split_last() else {
        return Ok(FileOutcome {
            file,
            ok: false,
            detail: "no judgments".into(),
        });
    };
    if let Some(e) = rest.iter().find_map(|r| r.result.as_ref().err()) {
        return Ok(FileOutcome {
            file,
            ok: false,
            detail: format!("an earlier judgment fails: {e}"),
        });
    }
    Ok(match &last.result {
        Ok(_) => FileOutcome {
            file,
            ok: false,
            detail: "the last judgment was accepted".into(),
        },
        Err(e) => {
            let msg = e.to_string();
            FileOutcome {
                file,
                ok: msg.contains(&expect),
                detail: msg,
            }
        }
    })
}

/// Checks every accept file under `dir` and every reject file under
/// `dir/reject`, and collects rule coverage.
pub fn coverage(dir: &Path) -> Result<Coverage, CliError> {
    let start = Instant::now();
    let mut counts = BTreeMap::new();
    let accept = att_files(dir)?
        .iter()
        .map(|p| accept_file(p, &mut counts))
        .collect::<Result<Vec<_>, _>>()?;
    let reject = att_files(&dir.join("reject"))?
        .iter()
        .map(|p| reject_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    let seen: BTreeSet<&str> = counts.keys().map(String::as_str).collect();
    let missing_rules = Rule::all_labels()
        .into_iter()
        .filter(|l| !seen.contains(l))
        .map(str::to_string)
        .collect();
    Ok(Coverage {
        accept,
        reject,
        rule_counts: counts,
        missing_rules,
        seconds: start.elapsed().as_secs_f64(),
    })
}
