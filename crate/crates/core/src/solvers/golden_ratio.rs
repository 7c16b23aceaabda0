//! Adaptive golden ratio iteration.
//!
//! ```text
//! lam_k   = min(rho lam_{k-1}, phi th_{k-1} / (4 lam_{k-1}) ||dtau||^2 / ||dA||^2, lam_bar)
//! th_k    = lam_k phi / lam_{k-1}
//! xi_k    = ((phi - 1) tau_k + tau_{k-1}) / phi
//! tau_k+1 = P(xi_k - lam_k A tau_k)
//! ```
//!
//! with `rho = 1/phi + 1/phi^2`. The middle term is skipped when `dA = 0`.

use ndarray::Zip;

use crate::error::{Result, ViError};
use crate::linalg::{all_finite, dist_sq, Vector};
use crate::problem::VIProblem;

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRatioState {
    pub k: usize,
    pub tau_k: Vector,
    pub tau_km1: Vector,
    pub atau_k: Vector,
    pub atau_km1: Vector,
    /// Most recent averaged point.
    pub xi_k: Vector,
    /// Step size used by the most recent step (`lam_{k-1}` for the next one).
    pub lambda_k: f64,
    /// Step size before `lambda_k`.
    pub lambda_km1: f64,
    pub theta_k: f64,
    pub phi: f64,
    pub rho: f64,
    pub lambda_bar: f64,
}

impl GoldenRatioState {
    /// State at `k = 1` with `xi_0 = tau_1` and `theta_0 = 1`.
    pub fn new(
        problem: &VIProblem,
        tau0: Vector,
        tau1: Vector,
        lambda0: f64,
        phi: f64,
        lambda_bar: f64,
    ) -> Result<Self> {
        problem.check_dim(tau0.len())?;
        problem.check_dim(tau1.len())?;
        let atau_km1 = problem.apply(tau0.view());
        let atau_k = problem.apply(tau1.view());
        if !all_finite(atau_k.view()) || !all_finite(atau_km1.view()) {
            return Err(ViError::Numerical {
                iteration: 0,
                what: "operator at initial points".into(),
            });
        }
        Ok(GoldenRatioState {
            k: 1,
            xi_k: tau1.clone(),
            tau_k: tau1,
            tau_km1: tau0,
            atau_k,
            atau_km1,
            lambda_k: lambda0,
            lambda_km1: lambda0,
            theta_k: 1.0,
            phi,
            rho: 1.0 / phi + 1.0 / (phi * phi),
            lambda_bar,
        })
    }
}

/// Step size for the upcoming iteration.
pub fn agraal_step_size(state: &GoldenRatioState) -> f64 {
    let prev = state.lambda_k;
    let mut lam = (state.rho * prev).min(state.lambda_bar);
    let da = dist_sq(state.atau_k.view(), state.atau_km1.view());
    if da > 0.0 {
        let dt = dist_sq(state.tau_k.view(), state.tau_km1.view());
        lam = lam.min(state.phi * state.theta_k / (4.0 * prev) * dt / da);
    }
    lam
}

/// One iteration; evaluates the operator once, at `tau_{k+1}`.
pub fn agraal_step(problem: &VIProblem, state: &GoldenRatioState) -> Result<GoldenRatioState> {
    let phi = state.phi;
    let lam = agraal_step_size(state);
    let theta = lam * phi / state.lambda_k;
    let xi: Vector = Zip::from(&state.tau_k)
        .and(&state.tau_km1)
        .map_collect(|&t, &tp| ((phi - 1.0) * t + tp) / phi);
    let tau_next = problem.project((&xi - &(&state.atau_k * lam)).view());
    let atau_next = problem.apply(tau_next.view());
    if !all_finite(tau_next.view()) || !all_finite(atau_next.view()) {
        return Err(ViError::Numerical {
            iteration: state.k + 1,
            what: "non-finite iterate or operator value".into(),
        });
    }
    Ok(GoldenRatioState {
        k: state.k + 1,
        tau_km1: state.tau_k.clone(),
        tau_k: tau_next,
        atau_km1: state.atau_k.clone(),
        atau_k: atau_next,
        xi_k: xi,
        lambda_km1: state.lambda_k,
        lambda_k: lam,
        theta_k: theta,
        phi,
        rho: state.rho,
        lambda_bar: state.lambda_bar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::exm1_problem;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    #[test]
    fn equal_iterates_use_rho_and_cap() {
        let p = exm1_problem();
        let s = GoldenRatioState::new(&p, array![0.4], array![0.4], 2.0, 1.5, 4.0).unwrap();
        let rho = 1.0 / 1.5 + 1.0 / 2.25;
        assert_abs_diff_eq!(agraal_step_size(&s), (rho * 2.0_f64).min(4.0), epsilon = 1e-15);
        let n = agraal_step(&p, &s).unwrap();
        assert_abs_diff_eq!(n.xi_k[0], 0.4, epsilon = 1e-15);
        let s = GoldenRatioState::new(&p, array![0.4], array![0.4], 10.0, 1.5, 4.0).unwrap();
        assert_eq!(agraal_step_size(&s), 4.0);
    }

    #[test]
    fn averaging_weights_sum_to_one() {
        for phi in [1.0 + 1e-9, 1.2, 1.6] {
            let w = (phi - 1.0) / phi + 1.0 / phi;
            assert_abs_diff_eq!(w, 1.0, epsilon = 1e-15);
        }
        // phi close to 1 puts the averaged point next to tau_{k-1}
        let p = exm1_problem();
        let s = GoldenRatioState::new(&p, array![0.1], array![0.9], 2.0, 1.0 + 1e-9, 4.0).unwrap();
        let n = agraal_step(&p, &s).unwrap();
        assert_abs_diff_eq!(n.xi_k[0], 0.1, epsilon = 1e-8);
    }

    #[test]
    fn two_steps_match_scalar_trace() {
        let a = |m: f64| m * m;
        let (phi, lam_bar) = (1.5_f64, 4.0_f64);
        let rho = 1.0 / phi + 1.0 / (phi * phi);
        let (mut t0, mut t1, mut lam_prev, mut th_prev) = (0.1_f64, 0.9_f64, 2.0_f64, 1.0_f64);
        let mut expected = Vec::new();
        for _ in 0..2 {
            let da = (a(t1) - a(t0)).powi(2);
            let mut lam = (rho * lam_prev).min(lam_bar);
            if da > 0.0 {
                lam = lam.min(phi * th_prev / (4.0 * lam_prev) * (t1 - t0).powi(2) / da);
            }
            let th = lam * phi / lam_prev;
            let xi = ((phi - 1.0) * t1 + t0) / phi;
            let t2 = (xi - lam * a(t1)).clamp(-1.0, 1.0);
            expected.push((t2, lam, xi));
            t0 = t1;
            t1 = t2;
            lam_prev = lam;
            th_prev = th;
        }

        let p = exm1_problem();
        let mut s = GoldenRatioState::new(&p, array![0.1], array![0.9], 2.0, phi, lam_bar).unwrap();
        for (t, lam, xi) in expected {
            s = agraal_step(&p, &s).unwrap();
            assert_abs_diff_eq!(s.tau_k[0], t, epsilon = 1e-14);
            assert_abs_diff_eq!(s.lambda_k, lam, epsilon = 1e-14);
            assert_abs_diff_eq!(s.xi_k[0], xi, epsilon = 1e-14);
            assert!(s.lambda_k <= s.lambda_bar);
        }
    }
}
