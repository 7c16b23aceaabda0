use std::fs::{self, File};
use std::io::BufWriter;

use anyhow::{Context, Result};
use serde::Serialize;
use viforge_core::signal::{generate_instance, run_recovery, MSE_TARGET};
use viforge_core::{Algorithm, SolverConfig};

use crate::args::SignalArgs;
use crate::Status;

#[derive(Debug, Serialize)]
struct Recovered {
    algorithm: String,
    iterations: usize,
    converged: bool,
    final_mse: f64,
    cpu_s: f64,
    signal: Vec<f64>,
}

pub fn cmd_signal(a: &SignalArgs) -> Result<Status> {
    let inst = generate_instance(a.n, a.m, a.sparsity, a.l, a.noise, a.seed)?;
    let alg = Algorithm::from(a.algo);
    let r = run_recovery(&inst, &SolverConfig::defaults_for(alg))?;

    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    r.write_mse_csv(BufWriter::new(File::create(a.out.join("mse.csv"))?))?;
    let recovered = Recovered {
        algorithm: alg.id().to_string(),
        iterations: r.run.iterations,
        converged: r.run.converged,
        final_mse: r.final_mse(),
        cpu_s: r.run.elapsed_s,
        signal: r.run.final_point.to_vec(),
    };
    serde_json::to_writer(BufWriter::new(File::create(a.out.join("recovered.json"))?), &recovered)?;
    serde_json::to_writer_pretty(BufWriter::new(File::create(a.out.join("instance.json"))?), &inst.dump())?;

    println!("{} iterations, final MSE {:.3e}", r.run.iterations, r.final_mse());
    Ok(if r.final_mse() < MSE_TARGET {
        Status::Done
    } else {
        Status::Incomplete
    })
}
