//! Fixed-step baselines: extragradient, Popov, and subgradient extragradient.

use ndarray::ArrayView1;

use crate::linalg::Vector;
use crate::problem::VIProblem;

/// `tau = P(x - lam A x)`, then `P(x - lam A tau)`. Two evaluations, two projections.
pub fn extragradient_step(problem: &VIProblem, v_k: ArrayView1<f64>, lambda: f64) -> Vector {
    let a = problem.apply(v_k);
    let tau = problem.project((&v_k - &(a * lambda)).view());
    let at = problem.apply(tau.view());
    problem.project((&v_k - &(at * lambda)).view())
}

/// Returns `(xi_{k+1}, tau_{k+1})`. `A tau_k` is evaluated once and used in both projections.
pub fn popov_step(problem: &VIProblem, xi_k: ArrayView1<f64>, tau_k: ArrayView1<f64>, lambda: f64) -> (Vector, Vector) {
    let step = problem.apply(tau_k) * lambda;
    let xi_next = problem.project((&xi_k - &step).view());
    let tau_next = problem.project((&xi_next - &step).view());
    (xi_next, tau_next)
}

/// Projection onto the half-space `{w : <normal, w - anchor> <= 0}`; the whole
/// space when `normal = 0`.
pub fn project_half_space(z: ArrayView1<f64>, normal: ArrayView1<f64>, anchor: ArrayView1<f64>) -> Vector {
    let nn = normal.dot(&normal);
    let excess = normal.dot(&(&z - &anchor));
    if nn == 0.0 || excess <= 0.0 {
        z.to_owned()
    } else {
        &z - &(&normal * (excess / nn))
    }
}

/// One subgradient extragradient step: the second projection onto `C` is
/// replaced by a closed-form projection onto a half-space containing `C`.
pub fn subgradient_extragradient_step(problem: &VIProblem, xi_k: ArrayView1<f64>, lambda: f64) -> Vector {
    let a = problem.apply(xi_k);
    let trial = &xi_k - &(a * lambda);
    let tau = problem.project(trial.view());
    let normal = &trial - &tau;
    let at = problem.apply(tau.view());
    let z = &xi_k - &(at * lambda);
    project_half_space(z.view(), normal.view(), tau.view())
}
