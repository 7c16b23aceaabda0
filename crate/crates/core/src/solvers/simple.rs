//! Reflected single-projection method with a summable-increment step size.
//!
//! ```text
//! xi_{k+1}  = P(xi_k - eta_k A xi_k - eta_{k-1} (A xi_k - A xi_{k-1}))
//! eta_{k+1} = min(alpha ||xi_k - xi_{k+1}|| / ||A xi_k - A xi_{k+1}||, eta_k + u_k)
//! ```
//!
//! with `eta_{k+1} = eta_k + u_k` when the operator values coincide.

use ndarray::{ArrayView1, Zip};

use crate::config::SummableSeq;
use crate::error::{Result, ViError};
use crate::linalg::{all_finite, dist, Vector};
use crate::problem::VIProblem;

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleProjState {
    pub k: usize,
    pub xi_k: Vector,
    pub xi_km1: Vector,
    pub axi_k: Vector,
    pub axi_km1: Vector,
    pub eta_k: f64,
    pub eta_km1: f64,
    pub u_seq: SummableSeq,
    pub alpha: f64,
    pub last_shrunk: bool,
}

impl SimpleProjState {
    pub fn new(
        problem: &VIProblem,
        xi0: Vector,
        xi1: Vector,
        eta0: f64,
        eta1: f64,
        u_seq: SummableSeq,
        alpha: f64,
    ) -> Result<Self> {
        problem.check_dim(xi0.len())?;
        problem.check_dim(xi1.len())?;
        let axi_km1 = problem.apply(xi0.view());
        let axi_k = problem.apply(xi1.view());
        if !all_finite(axi_k.view()) || !all_finite(axi_km1.view()) {
            return Err(ViError::Numerical {
                iteration: 0,
                what: "operator at initial points".into(),
            });
        }
        Ok(SimpleProjState {
            k: 1,
            xi_k: xi1,
            xi_km1: xi0,
            axi_k,
            axi_km1,
            eta_k: eta1,
            eta_km1: eta0,
            u_seq,
            alpha,
            last_shrunk: false,
        })
    }
}

/// Projected reflected point `P(x - eta_k a - eta_km1 (a - b))` with `a = A x`, `b = A x_prev`.
pub fn simple_projection_point(
    problem: &VIProblem,
    xi_k: ArrayView1<f64>,
    axi_k: ArrayView1<f64>,
    axi_km1: ArrayView1<f64>,
    eta_k: f64,
    eta_km1: f64,
) -> Vector {
    let inner: Vector = Zip::from(&xi_k)
        .and(&axi_k)
        .and(&axi_km1)
        .map_collect(|&x, &a, &b| x - eta_k * a - eta_km1 * (a - b));
    problem.project(inner.view())
}

/// One iteration; evaluates the operator once, at `xi_{k+1}`.
pub fn simple_projection_step(problem: &VIProblem, state: &SimpleProjState) -> Result<SimpleProjState> {
    let xi_next = simple_projection_point(
        problem,
        state.xi_k.view(),
        state.axi_k.view(),
        state.axi_km1.view(),
        state.eta_k,
        state.eta_km1,
    );
    let axi_next = problem.apply(xi_next.view());
    if !all_finite(xi_next.view()) || !all_finite(axi_next.view()) {
        return Err(ViError::Numerical {
            iteration: state.k + 1,
            what: "non-finite iterate or operator value".into(),
        });
    }
    let grown = state.eta_k + state.u_seq.term(state.k);
    let (eta_next, shrunk) = if state.axi_k != axi_next {
        let da = dist(state.axi_k.view(), axi_next.view());
        let ratio = state.alpha * dist(state.xi_k.view(), xi_next.view()) / da;
        if ratio < grown {
            (ratio, true)
        } else {
            (grown, false)
        }
    } else {
        (grown, false)
    };
    Ok(SimpleProjState {
        k: state.k + 1,
        xi_km1: state.xi_k.clone(),
        xi_k: xi_next,
        axi_km1: state.axi_k.clone(),
        axi_k: axi_next,
        eta_km1: state.eta_k,
        eta_k: eta_next,
        u_seq: state.u_seq,
        alpha: state.alpha,
        last_shrunk: shrunk,
    })
}
