//! Small dense helpers on top of `ndarray`.

use ndarray::{Array1, ArrayView1};

/// Dense real point of the underlying Hilbert space (finite-dimensional).
pub type Vector = Array1<f64>;

pub fn norm(x: ArrayView1<f64>) -> f64 {
    x.dot(&x).sqrt()
}

pub fn dist(x: ArrayView1<f64>, y: ArrayView1<f64>) -> f64 {
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub fn dist_sq(x: ArrayView1<f64>, y: ArrayView1<f64>) -> f64 {
    x.iter().zip(y.iter()).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub fn all_finite(x: ArrayView1<f64>) -> bool {
    x.iter().all(|v| v.is_finite())
}
