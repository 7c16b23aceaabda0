//! Sparse signal recovery posed as an l1-constrained least squares problem.
//!
//! Given `y = B x + noise` with a sparse `x`, solve
//! `min 1/2 ||B p - y||^2  s.t.  ||p||_1 <= l`, i.e. the variational
//! inequality with operator `A p = B^T (B p - y)` over the l1 ball.

use std::io::Write;
use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView1};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::error::{config_err, Result};
use crate::linalg::{dist_sq, norm, Vector};
use crate::problem::VIProblem;
use crate::projections::FeasibleSet;
use crate::runner::run_solver_with_metric;
use crate::trace::RunResult;

/// Recovery stops once the mean square error drops below this value.
pub const MSE_TARGET: f64 = 1e-6;
/// Iteration cap for recovery runs.
pub const MAX_RECOVERY_ITERS: usize = 1000;
/// Power-method iterations for the Lipschitz constant `lambda_max(B^T B)`.
pub const POWER_ITERS: usize = 200;
/// Scale of the random second initial point.
pub const INIT_SCALE: f64 = 0.01;

/// Seeded synthetic recovery instance.
#[derive(Debug, Clone)]
pub struct SignalInstance {
    pub b: Arc<Array2<f64>>,
    pub bt: Arc<Array2<f64>>,
    pub x_true: Vector,
    pub y: Arc<Vector>,
    pub l: f64,
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub noise_scale: f64,
    pub seed: u64,
    pub support: Vec<usize>,
}

/// Draws `B` with standard normal entries, an `s`-sparse signal with `+-1`
/// amplitudes at random positions, and `y = B x + noise_scale * N(0, I)`.
pub fn generate_instance(n: usize, m: usize, s: usize, l: f64, noise_scale: f64, seed: u64) -> Result<SignalInstance> {
    if n == 0 || m == 0 {
        return config_err("signal sizes n and m must be positive");
    }
    if s > n {
        return config_err(format!("sparsity {s} exceeds signal length {n}"));
    }
    if !(l > 0.0) {
        return config_err("l1 radius must be positive");
    }
    if !(noise_scale >= 0.0 && noise_scale.is_finite()) {
        return config_err("noise scale must be finite and >= 0");
    }
    // +-1 amplitudes give ||x||_1 = s
    if (s as f64) > l {
        return config_err(format!("l1 radius {l} is smaller than ||x_true||_1 = {s}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = Array2::from_shape_simple_fn((m, n), || rng.sample::<f64, _>(StandardNormal));
    let mut support = sample(&mut rng, n, s).into_vec();
    support.sort_unstable();
    let mut x_true = Array1::zeros(n);
    for &i in &support {
        x_true[i] = if rng.random::<bool>() { 1.0 } else { -1.0 };
    }
    let noise = Array1::from_shape_simple_fn(m, || noise_scale * rng.sample::<f64, _>(StandardNormal));
    let y = b.dot(&x_true) + noise;
    let bt = b.t().as_standard_layout().into_owned();
    Ok(SignalInstance {
        b: Arc::new(b),
        bt: Arc::new(bt),
        x_true,
        y: Arc::new(y),
        l,
        n,
        m,
        s,
        noise_scale,
        seed,
        support,
    })
}

impl SignalInstance {
    /// Nonzero values of `x_true`, aligned with `support`.
    pub fn amplitudes(&self) -> Vec<f64> {
        self.support.iter().map(|&i| self.x_true[i]).collect()
    }

    pub fn dump(&self) -> InstanceDump {
        InstanceDump {
            n: self.n,
            m: self.m,
            s: self.s,
            l: self.l,
            noise_scale: self.noise_scale,
            seed: self.seed,
            support: self.support.clone(),
            amplitudes: self.amplitudes(),
        }
    }
}

/// Reproducibility record of an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDump {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub l: f64,
    pub noise_scale: f64,
    pub seed: u64,
    pub support: Vec<usize>,
    pub amplitudes: Vec<f64>,
}

/// `B^T (B p - y)`.
pub fn lasso_operator(b: &Array2<f64>, bt: &Array2<f64>, y: &Vector, p: ArrayView1<f64>) -> Vector {
    let r = b.dot(&p) - y;
    bt.dot(&r)
}

/// `1/2 ||B p - y||^2`.
pub fn lasso_objective(instance: &SignalInstance, p: ArrayView1<f64>) -> f64 {
    let r = instance.b.dot(&p) - &*instance.y;
    0.5 * r.dot(&r)
}

/// Largest eigenvalue of `B^T B` by power iteration from a seeded start.
pub fn power_iteration_lambda_max(b: &Array2<f64>, bt: &Array2<f64>, iters: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vector = Array1::from_shape_simple_fn(b.ncols(), || rng.sample::<f64, _>(StandardNormal));
    x /= norm(x.view());
    let mut est = 0.0;
    for _ in 0..iters {
        let bx = b.dot(&x);
        est = bx.dot(&bx);
        let next = bt.dot(&bx);
        let nn = norm(next.view());
        if nn == 0.0 {
            return 0.0;
        }
        x = next / nn;
    }
    let bx = b.dot(&x);
    est.max(bx.dot(&bx))
}

/// The recovery problem as a variational inequality over the l1 ball.
pub fn lasso_vi(instance: &SignalInstance) -> Result<VIProblem> {
    let (b, bt, y) = (
        Arc::clone(&instance.b),
        Arc::clone(&instance.bt),
        Arc::clone(&instance.y),
    );
    let set = FeasibleSet::new_l1_ball(instance.n, instance.l)?;
    let problem = VIProblem::new("lasso", set, move |p| lasso_operator(&b, &bt, &y, p));
    let l = power_iteration_lambda_max(&instance.b, &instance.bt, POWER_ITERS, instance.seed);
    if l > 0.0 {
        problem.with_lipschitz(l)
    } else {
        Ok(problem)
    }
}

pub fn mse(p: ArrayView1<f64>, x_true: ArrayView1<f64>) -> f64 {
    dist_sq(p, x_true) / p.len() as f64
}

/// Zero first point and a small seeded normal second point.
pub fn default_recovery_init(n: usize, seed: u64) -> (Vector, Vector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let v1 = Array1::from_shape_simple_fn(n, || INIT_SCALE * rng.sample::<f64, _>(StandardNormal));
    (Array1::zeros(n), v1)
}

/// One row of the MSE trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MseRecord {
    pub iter: usize,
    pub mse: f64,
    pub elapsed_s: f64,
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub run: RunResult,
    /// Row 0 is the first initial point `v0`, row `k` the iterate after step `k`.
    pub mse_records: Vec<MseRecord>,
}

impl RecoveryResult {
    pub fn mse_trace(&self) -> Vec<f64> {
        self.mse_records.iter().map(|r| r.mse).collect()
    }

    pub fn final_mse(&self) -> f64 {
        self.mse_records.last().map_or(f64::NAN, |r| r.mse)
    }

    /// CSV with header `iter,mse,elapsed_s`.
    pub fn write_mse_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.mse_records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Recovery from the default initial points seeded by the instance seed.
pub fn run_recovery(instance: &SignalInstance, config: &SolverConfig) -> Result<RecoveryResult> {
    let init = default_recovery_init(instance.n, instance.seed);
    run_recovery_from(instance, config, init)
}

/// Runs until the MSE drops below [`MSE_TARGET`] or [`MAX_RECOVERY_ITERS`] steps.
/// Other fields of `config` are used as given.
pub fn run_recovery_from(
    instance: &SignalInstance,
    config: &SolverConfig,
    init: (Vector, Vector),
) -> Result<RecoveryResult> {
    let problem = lasso_vi(instance)?;
    let mut cfg = config.clone();
    cfg.eps = MSE_TARGET;
    cfg.max_iter = MAX_RECOVERY_ITERS;

    let x_true = instance.x_true.view();
    let start_mse = mse(init.0.view(), x_true);
    let mut records = vec![MseRecord {
        iter: 0,
        mse: start_mse,
        elapsed_s: 0.0,
    }];
    if start_mse < MSE_TARGET {
        cfg.max_iter = 0;
    }
    let v0 = init.0.clone();
    let mut run = run_solver_with_metric(&problem, &cfg, init, instance.seed, |v| mse(v, x_true))?;
    if start_mse < MSE_TARGET {
        run.converged = true;
        run.final_point = v0;
    }
    records.extend(run.trace.iter().map(|r| MseRecord {
        iter: r.k,
        mse: r.tol,
        elapsed_s: r.elapsed_s,
    }));
    Ok(RecoveryResult {
        run,
        mse_records: records,
    })
}
