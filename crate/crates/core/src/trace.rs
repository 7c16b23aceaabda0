//! Per-iteration records, run results, and their CSV/JSON forms.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::Algorithm;
use crate::linalg::{norm, Vector};

/// Header of the per-run trace CSV.
pub const TRACE_CSV_HEADER: &str = "iter,tol,lambda,elapsed_s,dist_opt,lyapunov";

/// Number of leading coordinates kept in a run summary.
pub const SUMMARY_POINT_LIMIT: usize = 16;

/// One iteration of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterRecord {
    #[serde(rename = "iter")]
    pub k: usize,
    pub tol: f64,
    pub lambda: f64,
    pub elapsed_s: f64,
    pub dist_opt: Option<f64>,
    pub lyapunov: Option<f64>,
    /// Whether the step-size rule took its shrinking branch on this iteration.
    #[serde(skip)]
    pub step_shrunk: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_point: Vector,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<IterRecord>,
    /// Wall time of the whole iteration loop, seconds.
    pub elapsed_s: f64,
}

impl RunResult {
    pub fn last_tol(&self) -> Option<f64> {
        self.trace.last().map(|r| r.tol)
    }

    /// Writes the trace as CSV with [`TRACE_CSV_HEADER`]; absent optionals are empty fields.
    pub fn write_trace_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if self.trace.is_empty() {
            w.write_record(TRACE_CSV_HEADER.split(','))?;
        }
        for r in &self.trace {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self, algorithm: Algorithm, problem: &str, case: Option<u32>) -> RunSummary {
        RunSummary {
            algorithm: algorithm.id().to_string(),
            problem: problem.to_string(),
            case,
            iterations: self.iterations,
            cpu_s: self.elapsed_s,
            converged: self.converged,
            final_point: self.final_point.iter().take(SUMMARY_POINT_LIMIT).copied().collect(),
            final_norm: norm(self.final_point.view()),
        }
    }
}

/// Reads a trace CSV back into records.
pub fn read_trace_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<IterRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// JSON summary of a single run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub algorithm: String,
    pub problem: String,
    pub case: Option<u32>,
    pub iterations: usize,
    pub cpu_s: f64,
    pub converged: bool,
    pub final_point: Vec<f64>,
    pub final_norm: f64,
}
