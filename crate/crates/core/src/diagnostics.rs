//! Stopping quantities and runtime certificates shared by all methods.

use ndarray::ArrayView1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{dist, dist_sq, Vector};
use crate::problem::VIProblem;

/// Slack allowed in the Minty spot check.
pub const MINTY_SLACK: f64 = 1e-9;

/// `||v_k - P(v_k - gamma (2 A v_k - A v_{k-1}))|| + ||v_k - v_{k-1}||`.
pub fn compute_tol_simple(
    problem: &VIProblem,
    v_k: ArrayView1<f64>,
    v_km1: ArrayView1<f64>,
    av_k: ArrayView1<f64>,
    av_km1: ArrayView1<f64>,
    gamma: f64,
) -> f64 {
    let inner: Vector = ndarray::Zip::from(&v_k)
        .and(&av_k)
        .and(&av_km1)
        .map_collect(|&v, &a, &b| v - gamma * (2.0 * a - b));
    let p = problem.project(inner.view());
    dist(v_k, p.view()) + dist(v_k, v_km1)
}

/// `||v - P(v - scale * A v)||`; zero exactly at solutions.
pub fn compute_natural_residual(problem: &VIProblem, v: ArrayView1<f64>, scale: f64) -> f64 {
    let av = problem.apply(v);
    natural_residual_with(problem, v, av.view(), scale)
}

/// Natural residual with a precomputed `A v`.
pub fn natural_residual_with(problem: &VIProblem, v: ArrayView1<f64>, av: ArrayView1<f64>, scale: f64) -> f64 {
    let inner = &v - &(&av * scale);
    dist(v, problem.project(inner.view()).view())
}

/// Residual weight `gamma` for [`compute_tol_simple`].
///
/// Midpoint of `(delta, (1 - 2 delta) / L)` when the interval is nonempty,
/// otherwise `delta`.
pub fn tol_gamma(delta: f64, lipschitz: f64) -> f64 {
    let upper = (1.0 - 2.0 * delta) / lipschitz;
    if upper > delta {
        0.5 * (delta + upper)
    } else {
        delta
    }
}

/// Inputs of the Lyapunov energy at iteration `k`.
#[derive(Debug, Clone, Copy)]
pub struct LyapunovInputs<'a> {
    pub v_k: ArrayView1<'a, f64>,
    pub v_km1: ArrayView1<'a, f64>,
    pub u_k: ArrayView1<'a, f64>,
    pub u_km1: ArrayView1<'a, f64>,
    pub av_k: ArrayView1<'a, f64>,
    pub av_km1: ArrayView1<'a, f64>,
    pub lambda_km1: f64,
}

/// Energy of the momentum iteration relative to a Minty solution `p_star`:
///
/// ```text
/// a_k = ||v_k - p||^2 / (1 + t) + t ||u_k - p||^2 + t^2 / (1 + t)^2 ||v_k - u_{k-1}||^2
///     + 2 lam_{k-1} <A v_{k-1} - A v_k, v_k - p> + 3 s / 2 ||v_k - v_{k-1}||^2
/// ```
///
/// with `t = theta`, `s = sigma`. It is nonincreasing once the step size stops shrinking.
pub fn lyapunov_a(p_star: ArrayView1<f64>, x: &LyapunovInputs<'_>, sigma: f64, theta: f64) -> f64 {
    let cross: f64 = x
        .av_km1
        .iter()
        .zip(x.av_k.iter())
        .zip(x.v_k.iter().zip(p_star.iter()))
        .map(|((a, b), (v, p))| (a - b) * (v - p))
        .sum();
    let t1 = dist_sq(x.v_k, p_star) / (1.0 + theta);
    let t2 = theta * dist_sq(x.u_k, p_star);
    let t3 = theta * theta / ((1.0 + theta) * (1.0 + theta)) * dist_sq(x.v_k, x.u_km1);
    let t4 = 2.0 * x.lambda_km1 * cross;
    let t5 = 1.5 * sigma * dist_sq(x.v_k, x.v_km1);
    t1 + t2 + t3 + t4 + t5
}

/// Spot check of the Minty inequality `<A q, q - p> >= 0` on `sample_count`
/// seeded points `q` of the feasible set.
///
/// A `false` answer is a certificate that `p` is not a Minty solution; `true`
/// is only evidence.
pub fn check_minty_membership(problem: &VIProblem, p_star: ArrayView1<f64>, sample_count: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample_count).all(|_| {
        let q = problem.set().sample(&mut rng);
        minty_gap(problem, q.view(), p_star) >= -MINTY_SLACK
    })
}

/// `<A q, q - p>`.
pub fn minty_gap(problem: &VIProblem, q: ArrayView1<f64>, p: ArrayView1<f64>) -> f64 {
    let aq = problem.apply(q);
    aq.dot(&(&q - &p))
}
