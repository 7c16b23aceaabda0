//! Projection iteration with two momentum terms and an eventually
//! nondecreasing adaptive step size.
//!
//! One projection and one operator evaluation per iteration:
//!
//! ```text
//! w_k     = v_k / (1 + t) + t u_k / (1 + t)
//! v_{k+1} = P(w_k - lam_k A v_k - lam_{k-1} (A v_k - A v_{k-1}))
//! u_{k+1} = v_{k+1} / (1 + t) + t u_k / (1 + t)
//! ```
//!
//! followed by [`step_size_update`]. No Lipschitz constant is needed.

use ndarray::{ArrayView1, Zip};

use crate::error::{Result, ViError};
use crate::linalg::{all_finite, dist, Vector};
use crate::problem::VIProblem;

/// Which branch of the step-size rule produced the current step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepBranch {
    /// `lam_{k+1} = sigma ||v_k - v_{k+1}|| / ||A v_k - A v_{k+1}||`.
    Shrink,
    /// `lam_{k+1} = (1 + gamma_k) lam_k`.
    Grow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSizeUpdate {
    pub lambda: f64,
    pub branch: StepBranch,
}

/// Next step size.
///
/// Shrinks to `sigma ||dv|| / ||dA||` when `||dA|| > (sigma / lam_k) ||dv||`,
/// otherwise grows by the factor `1 + gamma_k`. The strict inequality keeps
/// the division away from a zero denominator.
pub fn step_size_update(
    v_k: ArrayView1<f64>,
    v_kp1: ArrayView1<f64>,
    av_k: ArrayView1<f64>,
    av_kp1: ArrayView1<f64>,
    lambda_k: f64,
    sigma: f64,
    gamma_k: f64,
) -> StepSizeUpdate {
    let dv = dist(v_k, v_kp1);
    let da = dist(av_k, av_kp1);
    if da > sigma / lambda_k * dv {
        StepSizeUpdate {
            lambda: sigma * dv / da,
            branch: StepBranch::Shrink,
        }
    } else {
        StepSizeUpdate {
            lambda: (1.0 + gamma_k) * lambda_k,
            branch: StepBranch::Grow,
        }
    }
}

/// Iteration state at index `k`, with cached operator values.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    pub k: usize,
    pub v_k: Vector,
    pub v_km1: Vector,
    pub u_k: Vector,
    pub u_km1: Vector,
    pub av_k: Vector,
    pub av_km1: Vector,
    pub lambda_k: f64,
    pub lambda_km1: f64,
    /// Branch that produced `lambda_k`; `None` before the first step.
    pub last_branch: Option<StepBranch>,
}

impl MomentumState {
    /// State at `k = 1`. Evaluates `A v0` and `A v1`; `u_0` is taken equal to `u_1`.
    pub fn new(problem: &VIProblem, v0: Vector, v1: Vector, u1: Vector, lambda0: f64, lambda1: f64) -> Result<Self> {
        for v in [&v0, &v1, &u1] {
            problem.check_dim(v.len())?;
        }
        let av_km1 = problem.apply(v0.view());
        let av_k = problem.apply(v1.view());
        if !all_finite(av_k.view()) || !all_finite(av_km1.view()) {
            return Err(ViError::Numerical {
                iteration: 0,
                what: "operator at initial points".into(),
            });
        }
        Ok(MomentumState {
            k: 1,
            v_k: v1,
            v_km1: v0,
            u_km1: u1.clone(),
            u_k: u1,
            av_k,
            av_km1,
            lambda_k: lambda1,
            lambda_km1: lambda0,
            last_branch: None,
        })
    }
}

/// `w = v / (1 + theta) + theta u / (1 + theta)`.
pub fn momentum_anchor(v: ArrayView1<f64>, u: ArrayView1<f64>, theta: f64) -> Vector {
    let a = 1.0 / (1.0 + theta);
    let b = theta / (1.0 + theta);
    Zip::from(&v).and(&u).map_collect(|&v, &u| a * v + b * u)
}

/// One full iteration: momentum update, projection, step-size rule.
///
/// Performs exactly one operator evaluation, at `v_{k+1}`.
pub fn momentum_step(
    problem: &VIProblem,
    state: &MomentumState,
    theta: f64,
    sigma: f64,
    gamma_k: f64,
) -> Result<MomentumState> {
    let w = momentum_anchor(state.v_k.view(), state.u_k.view(), theta);
    let (lk, lkm1) = (state.lambda_k, state.lambda_km1);
    let inner: Vector = Zip::from(&w)
        .and(&state.av_k)
        .and(&state.av_km1)
        .map_collect(|&w, &a, &b| w - lk * a - lkm1 * (a - b));
    let v_next = problem.project(inner.view());
    let av_next = problem.apply(v_next.view());
    if !all_finite(v_next.view()) || !all_finite(av_next.view()) {
        return Err(ViError::Numerical {
            iteration: state.k + 1,
            what: "non-finite iterate or operator value".into(),
        });
    }
    let u_next = momentum_anchor(v_next.view(), state.u_k.view(), theta);
    let upd = step_size_update(
        state.v_k.view(),
        v_next.view(),
        state.av_k.view(),
        av_next.view(),
        lk,
        sigma,
        gamma_k,
    );
    Ok(MomentumState {
        k: state.k + 1,
        v_km1: state.v_k.clone(),
        v_k: v_next,
        u_km1: state.u_k.clone(),
        u_k: u_next,
        av_km1: state.av_k.clone(),
        av_k: av_next,
        lambda_km1: lk,
        lambda_k: upd.lambda,
        last_branch: Some(upd.branch),
    })
}
