use std::fs::{self, File};
use std::io::BufWriter;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use viforge_core::problems::{exm3_case_size, DEFAULT_TRUNC_DIM};
use viforge_core::{make_case, run_solver, Algorithm, ProblemId, SolverConfig};

use crate::args::BenchArgs;
use crate::Status;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub problem: String,
    pub case: u32,
    pub algorithm: String,
    pub iterations: usize,
    pub cpu_s: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchMetadata {
    pub version: String,
    pub suite: String,
    pub seed: u64,
    pub eps: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSuiteResult {
    pub rows: Vec<BenchRow>,
    pub metadata: BenchMetadata,
}

fn problem_ids(names: &[String], case: u32) -> Result<Vec<ProblemId>> {
    let mut ids = Vec::new();
    for name in names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        ids.push(match name {
            "exm1" => ProblemId::Exm1,
            "exm2" => ProblemId::Exm2,
            "exm3" => ProblemId::Exm3 {
                m: exm3_case_size(case)?,
            },
            "exm4" => ProblemId::Exm4 { n: DEFAULT_TRUNC_DIM },
            other => bail!("unknown problem '{other}' (expected exm1..exm4)"),
        });
    }
    Ok(ids)
}

pub fn cmd_bench(a: &BenchArgs) -> Result<Status> {
    if problem_ids(&a.problems, 1)?.is_empty() {
        bail!("empty suite selection");
    }
    let mut algorithms = vec![Algorithm::Momentum, Algorithm::SimpleProjection];
    if a.with_baselines {
        algorithms.extend([
            Algorithm::Extragradient,
            Algorithm::Popov,
            Algorithm::SubgradientExtragradient,
            Algorithm::AdaptiveGoldenRatio,
        ]);
    }
    if let Some(dir) = &a.trace_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let mut rows = Vec::new();
    let mut failed = false;
    for (pi, _) in a.problems.iter().filter(|s| !s.trim().is_empty()).enumerate() {
        for case_id in 1..=4 {
            let id = problem_ids(&a.problems, case_id)?[pi];
            let case = make_case(id, case_id, a.seed)?;
            for &alg in &algorithms {
                let cfg = SolverConfig::defaults_for(alg);
                let row = match run_solver(&case.problem, &cfg, (case.v0.clone(), case.v1.clone()), a.seed) {
                    Ok(r) => {
                        if let Some(dir) = &a.trace_dir {
                            let name = format!("{}_c{case_id}_{}.csv", id.key(), alg.id());
                            r.write_trace_csv(BufWriter::new(File::create(dir.join(name))?))?;
                        }
                        BenchRow {
                            problem: id.key().to_string(),
                            case: case_id,
                            algorithm: alg.id().to_string(),
                            iterations: r.iterations,
                            cpu_s: r.elapsed_s,
                            converged: r.converged,
                        }
                    }
                    Err(e) => {
                        eprintln!("{} case {case_id} {}: {e}", id.key(), alg.id());
                        failed = true;
                        BenchRow {
                            problem: id.key().to_string(),
                            case: case_id,
                            algorithm: alg.id().to_string(),
                            iterations: 0,
                            cpu_s: 0.0,
                            converged: false,
                        }
                    }
                };
                rows.push(row);
            }
        }
    }

    let result = BenchSuiteResult {
        rows,
        metadata: BenchMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            suite: "paper".to_string(),
            seed: a.seed,
            eps: SolverConfig::defaults_for(Algorithm::Momentum).eps,
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        },
    };
    let json = File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    serde_json::to_writer_pretty(BufWriter::new(json), &result)?;
    let mut w = csv::Writer::from_path(&a.csv).with_context(|| format!("creating {}", a.csv.display()))?;
    for row in &result.rows {
        w.serialize(row)?;
    }
    w.flush()?;

    for row in &result.rows {
        println!(
            "{:<6} case {} {:<10} {:>5} it  {:.4}s{}",
            row.problem,
            row.case,
            row.algorithm,
            row.iterations,
            row.cpu_s,
            if row.converged { "" } else { "  (not converged)" }
        );
    }
    Ok(if failed { Status::Incomplete } else { Status::Done })
}
