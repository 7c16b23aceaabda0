use std::fs::{self, File};
use std::io::BufWriter;

use anyhow::{Context, Result};
use viforge_core::problems::exm3_case_size;
use viforge_core::signal::{default_recovery_init, generate_instance, lasso_vi};
use viforge_core::{make_case, run_solver, Algorithm, ProblemId, SolverConfig, VIProblem, Vector};

use crate::args::{ProblemArg, RunArgs};
use crate::Status;

/// Problem and initial points selected by the `run` flags.
fn build_problem(a: &RunArgs) -> Result<(VIProblem, Vector, Vector)> {
    let id = match a.problem {
        ProblemArg::Exm1 => ProblemId::Exm1,
        ProblemArg::Exm2 => ProblemId::Exm2,
        ProblemArg::Exm3 => ProblemId::Exm3 {
            m: a.m.map_or_else(|| exm3_case_size(a.case), Ok)?,
        },
        ProblemArg::Exm4 => ProblemId::Exm4 { n: a.trunc_dim },
        ProblemArg::Lasso => {
            let inst = generate_instance(1024, 512, 60, 60.0, 1e-3, a.seed)?;
            let (v0, v1) = default_recovery_init(inst.n, inst.seed);
            return Ok((lasso_vi(&inst)?, v0, v1));
        }
    };
    let case = make_case(id, a.case, a.seed)?;
    Ok((case.problem, case.v0, case.v1))
}

pub fn config_from(a: &RunArgs) -> SolverConfig {
    let mut cfg = SolverConfig::defaults_for(Algorithm::from(a.algo));
    cfg.eps = a.eps;
    cfg.max_iter = a.max_iter;
    if let Some(t) = a.theta {
        cfg.theta = t;
    }
    if let Some(s) = a.sigma {
        cfg.sigma = s;
    }
    if let Some(l) = a.lambda0 {
        cfg.lambda0 = l;
        cfg.lambda1 = l;
    }
    cfg
}

pub fn cmd_run(a: &RunArgs) -> Result<Status> {
    let (problem, v0, v1) = build_problem(a)?;
    let cfg = config_from(a);
    let result = run_solver(&problem, &cfg, (v0, v1), a.seed)?;
    let summary = result.summary(cfg.algorithm, problem.name(), Some(a.case));

    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let trace = File::create(dir.join("trace.csv")).context("creating trace.csv")?;
        result.write_trace_csv(BufWriter::new(trace))?;
        let json = File::create(dir.join("summary.json")).context("creating summary.json")?;
        serde_json::to_writer_pretty(BufWriter::new(json), &summary)?;
    }
    println!("{}", serde_json::to_string(&summary)?);
    Ok(if result.converged {
        Status::Done
    } else {
        Status::Incomplete
    })
}
