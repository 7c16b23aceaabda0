//! Projection methods for variational inequalities.
//!
//! Given a closed convex set `C` and an operator `A`, find `p` in `C` with
//! `<A p, q - p> >= 0` for every `q` in `C`. The main method is a projection
//! iteration with two momentum terms whose step size adapts to the observed
//! operator variation and stops shrinking after finitely many iterations; it
//! needs one projection and one operator evaluation per step and no Lipschitz
//! constant. Several classical baselines are included for comparison, together
//! with the standard benchmark problems and a sparse signal recovery
//! experiment posed as an l1-constrained least squares problem.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod linalg;
pub mod problem;
pub mod problems;
pub mod projections;
pub mod runner;
pub mod signal;
pub mod solvers;
pub mod trace;

pub use config::{Algorithm, SolverConfig, SummableSeq, TolRule};
pub use error::{Result, ViError};
pub use linalg::Vector;
pub use problem::VIProblem;
pub use problems::{make_case, ProblemCase, ProblemId};
pub use projections::FeasibleSet;
pub use runner::{run_solver, run_solver_with_metric};
pub use trace::{IterRecord, RunResult, RunSummary};
