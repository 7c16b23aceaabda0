//! Run orchestration: initialization, iteration, stopping, and trace recording.

use std::time::Instant;

use ndarray::ArrayView1;

use crate::config::{Algorithm, SolverConfig, TolRule};
use crate::diagnostics::{compute_tol_simple, lyapunov_a, natural_residual_with, tol_gamma, LyapunovInputs};
use crate::error::{Result, ViError};
use crate::linalg::{all_finite, Vector};
use crate::problem::{estimate_lipschitz, VIProblem};
use crate::problems::{LIPSCHITZ_PAIRS, LIPSCHITZ_SAFETY};
use crate::solvers::{
    agraal_step, extragradient_step, momentum_step, popov_step, simple_projection_step, subgradient_extragradient_step,
    GoldenRatioState, MomentumState, SimpleProjState, StepBranch,
};
use crate::trace::{IterRecord, RunResult};

/// Lipschitz constant of the problem, or a seeded empirical estimate with safety factor.
pub fn resolve_lipschitz(problem: &VIProblem, seed: u64) -> f64 {
    problem
        .lipschitz()
        .unwrap_or_else(|| estimate_lipschitz(problem, LIPSCHITZ_PAIRS, seed) * LIPSCHITZ_SAFETY)
}

/// Step size of the fixed-step baselines: `0.9 / L`, or `0.9 / (3 L)` for Popov.
pub fn baseline_step(algorithm: Algorithm, lipschitz: f64) -> f64 {
    match algorithm {
        Algorithm::Popov => 0.9 / (3.0 * lipschitz),
        _ => 0.9 / lipschitz,
    }
}

enum Method {
    Momentum(MomentumState),
    Simple(SimpleProjState),
    Extragradient {
        xi: Vector,
        prev: Vector,
        lambda: f64,
        k: usize,
    },
    Popov {
        xi: Vector,
        tau: Vector,
        prev: Vector,
        lambda: f64,
        k: usize,
    },
    Subgradient {
        xi: Vector,
        prev: Vector,
        lambda: f64,
        k: usize,
    },
    GoldenRatio(GoldenRatioState),
}

impl Method {
    fn init(problem: &VIProblem, cfg: &SolverConfig, v0: Vector, v1: Vector, seed: u64) -> Result<Self> {
        let fixed = || {
            cfg.fixed_step
                .unwrap_or_else(|| baseline_step(cfg.algorithm, resolve_lipschitz(problem, seed)))
        };
        Ok(match cfg.algorithm {
            Algorithm::Momentum => {
                let u1 = v1.clone();
                Method::Momentum(MomentumState::new(problem, v0, v1, u1, cfg.lambda0, cfg.lambda1)?)
            }
            Algorithm::SimpleProjection => Method::Simple(SimpleProjState::new(
                problem,
                v0,
                v1,
                cfg.lambda0,
                cfg.lambda1,
                cfg.gamma_seq,
                cfg.sigma,
            )?),
            Algorithm::Extragradient => Method::Extragradient {
                xi: v1,
                prev: v0,
                lambda: fixed(),
                k: 1,
            },
            Algorithm::Popov => Method::Popov {
                xi: v1.clone(),
                tau: v0,
                prev: v1,
                lambda: fixed(),
                k: 1,
            },
            Algorithm::SubgradientExtragradient => Method::Subgradient {
                xi: v1,
                prev: v0,
                lambda: fixed(),
                k: 1,
            },
            Algorithm::AdaptiveGoldenRatio => Method::GoldenRatio(GoldenRatioState::new(
                problem,
                v0,
                v1,
                cfg.lambda0,
                cfg.phi,
                cfg.lambda_bar,
            )?),
        })
    }

    fn step(&mut self, problem: &VIProblem, cfg: &SolverConfig) -> Result<()> {
        match self {
            Method::Momentum(s) => {
                let gamma = cfg.gamma_seq.term(s.k);
                *s = momentum_step(problem, s, cfg.theta, cfg.sigma, gamma)?;
            }
            Method::Simple(s) => *s = simple_projection_step(problem, s)?,
            Method::Extragradient { xi, prev, lambda, k } => {
                let next = extragradient_step(problem, xi.view(), *lambda);
                *prev = std::mem::replace(xi, next);
                *k += 1;
            }
            Method::Popov {
                xi,
                tau,
                prev,
                lambda,
                k,
            } => {
                let (xn, tn) = popov_step(problem, xi.view(), tau.view(), *lambda);
                *prev = std::mem::replace(xi, xn);
                *tau = tn;
                *k += 1;
            }
            Method::Subgradient { xi, prev, lambda, k } => {
                let next = subgradient_extragradient_step(problem, xi.view(), *lambda);
                *prev = std::mem::replace(xi, next);
                *k += 1;
            }
            Method::GoldenRatio(s) => *s = agraal_step(problem, s)?,
        }
        if !all_finite(self.current().view()) {
            return Err(ViError::Numerical {
                iteration: self.k(),
                what: "non-finite iterate".into(),
            });
        }
        Ok(())
    }

    fn k(&self) -> usize {
        match self {
            Method::Momentum(s) => s.k,
            Method::Simple(s) => s.k,
            Method::GoldenRatio(s) => s.k,
            Method::Extragradient { k, .. } | Method::Popov { k, .. } | Method::Subgradient { k, .. } => *k,
        }
    }

    fn current(&self) -> &Vector {
        match self {
            Method::Momentum(s) => &s.v_k,
            Method::Simple(s) => &s.xi_k,
            Method::GoldenRatio(s) => &s.tau_k,
            Method::Extragradient { xi, .. } | Method::Popov { xi, .. } | Method::Subgradient { xi, .. } => xi,
        }
    }

    fn previous(&self) -> &Vector {
        match self {
            Method::Momentum(s) => &s.v_km1,
            Method::Simple(s) => &s.xi_km1,
            Method::GoldenRatio(s) => &s.tau_km1,
            Method::Extragradient { prev, .. } | Method::Popov { prev, .. } | Method::Subgradient { prev, .. } => prev,
        }
    }

    /// Cached `(A current, A previous)`, when the method keeps them.
    fn cached_ops(&self) -> Option<(&Vector, &Vector)> {
        match self {
            Method::Momentum(s) => Some((&s.av_k, &s.av_km1)),
            Method::Simple(s) => Some((&s.axi_k, &s.axi_km1)),
            Method::GoldenRatio(s) => Some((&s.atau_k, &s.atau_km1)),
            _ => None,
        }
    }

    fn lambda(&self) -> f64 {
        match self {
            Method::Momentum(s) => s.lambda_k,
            Method::Simple(s) => s.eta_k,
            Method::GoldenRatio(s) => s.lambda_k,
            Method::Extragradient { lambda, .. }
            | Method::Popov { lambda, .. }
            | Method::Subgradient { lambda, .. } => *lambda,
        }
    }

    fn shrunk(&self) -> bool {
        match self {
            Method::Momentum(s) => s.last_branch == Some(StepBranch::Shrink),
            Method::Simple(s) => s.last_shrunk,
            _ => false,
        }
    }
}

/// Runs `config.algorithm` from `init = (v0, v1)` until `TOL < eps` or `max_iter` steps.
///
/// `seed` is only used when a Lipschitz estimate is needed and the problem
/// carries none.
pub fn run_solver(problem: &VIProblem, config: &SolverConfig, init: (Vector, Vector), seed: u64) -> Result<RunResult> {
    run_inner(problem, config, init, seed, None)
}

/// Like [`run_solver`], but the stopping quantity is `metric(v_k)` instead of
/// the configured tolerance rule.
pub fn run_solver_with_metric<F>(
    problem: &VIProblem,
    config: &SolverConfig,
    init: (Vector, Vector),
    seed: u64,
    mut metric: F,
) -> Result<RunResult>
where
    F: FnMut(ArrayView1<f64>) -> f64,
{
    run_inner(problem, config, init, seed, Some(&mut metric))
}

type Metric<'a> = &'a mut dyn FnMut(ArrayView1<f64>) -> f64;

fn run_inner(
    problem: &VIProblem,
    config: &SolverConfig,
    (v0, v1): (Vector, Vector),
    seed: u64,
    mut metric: Option<Metric<'_>>,
) -> Result<RunResult> {
    config.validate()?;
    problem.check_dim(v0.len())?;
    problem.check_dim(v1.len())?;
    if !all_finite(v0.view()) || !all_finite(v1.view()) {
        return Err(ViError::Config("initial points must be finite".into()));
    }

    let gamma = match (config.tol_rule, metric.is_some()) {
        (TolRule::SimpleResidual, false) => tol_gamma(config.tol_gamma_delta, resolve_lipschitz(problem, seed)),
        _ => 0.0,
    };
    let p_star = match config.algorithm {
        Algorithm::Momentum => problem.known_minty_solutions().first().cloned(),
        _ => None,
    };

    let start = Instant::now();
    let mut method = Method::init(problem, config, v0, v1, seed)?;
    let mut trace = Vec::new();
    let mut converged = false;

    while trace.len() < config.max_iter {
        method.step(problem, config)?;

        let tol = match metric.as_mut() {
            Some(f) => f(method.current().view()),
            None => step_tol(problem, config, &method, gamma),
        };
        if !tol.is_finite() {
            return Err(ViError::Numerical {
                iteration: method.k(),
                what: "non-finite tolerance".into(),
            });
        }
        let lyapunov = match (&method, &p_star) {
            (Method::Momentum(s), Some(p)) => {
                let inputs = LyapunovInputs {
                    v_k: s.v_k.view(),
                    v_km1: s.v_km1.view(),
                    u_k: s.u_k.view(),
                    u_km1: s.u_km1.view(),
                    av_k: s.av_k.view(),
                    av_km1: s.av_km1.view(),
                    lambda_km1: s.lambda_km1,
                };
                Some(lyapunov_a(p.view(), &inputs, config.sigma, config.theta))
            }
            _ => None,
        };
        trace.push(IterRecord {
            k: trace.len() + 1,
            tol,
            lambda: method.lambda(),
            elapsed_s: start.elapsed().as_secs_f64(),
            dist_opt: problem.dist_to_solutions(method.current().view()),
            lyapunov,
            step_shrunk: method.shrunk(),
        });
        if tol < config.eps {
            converged = true;
            break;
        }
    }

    Ok(RunResult {
        final_point: method.current().clone(),
        iterations: trace.len(),
        converged,
        trace,
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

fn step_tol(problem: &VIProblem, config: &SolverConfig, method: &Method, gamma: f64) -> f64 {
    let cur = method.current();
    match config.tol_rule {
        TolRule::SimpleResidual => {
            let prev = method.previous();
            match method.cached_ops() {
                Some((a, b)) => compute_tol_simple(problem, cur.view(), prev.view(), a.view(), b.view(), gamma),
                None => {
                    let a = problem.apply(cur.view());
                    let b = problem.apply(prev.view());
                    compute_tol_simple(problem, cur.view(), prev.view(), a.view(), b.view(), gamma)
                }
            }
        }
        TolRule::NaturalResidual => match method.cached_ops() {
            Some((a, _)) => natural_residual_with(problem, cur.view(), a.view(), 1.0),
            None => natural_residual_with(problem, cur.view(), problem.apply(cur.view()).view(), 1.0),
        },
    }
}
