//! Shared fixtures for the benchmarks.

use viforge_core::signal::{generate_instance, SignalInstance};
use viforge_core::{make_case, ProblemCase, ProblemId, Vector};

/// Deterministic, sign-mixed input of the given length.
pub fn wavy(dim: usize, scale: f64) -> Vector {
    Vector::from_iter((0..dim).map(|i| scale * ((i as f64) * 0.7).sin() + 0.1 * ((i as f64) * 1.3).cos()))
}

pub fn case(id: ProblemId, c: u32) -> ProblemCase {
    make_case(id, c, 0).expect("valid benchmark case")
}

/// The default sparse recovery instance.
pub fn signal_instance() -> SignalInstance {
    generate_instance(1024, 512, 60, 60.0, 1e-3, 7).expect("valid instance")
}
