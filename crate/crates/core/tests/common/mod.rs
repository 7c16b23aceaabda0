//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use ndarray::{Array1, ArrayView1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use viforge_core::linalg::{dist, norm};
use viforge_core::signal::{lasso_objective, SignalInstance};
use viforge_core::{FeasibleSet, Vector};

pub const SAMPLES: usize = 10_000;

pub fn gaussian(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Vector {
    Array1::from_shape_simple_fn(dim, || scale * rng.sample::<f64, _>(StandardNormal))
}

pub fn set_kinds() -> Vec<(&'static str, FeasibleSet)> {
    vec![
        (
            "box",
            FeasibleSet::new_box(
                Array1::from(vec![-1.0, 0.0, -2.0, 0.5, -0.3]),
                Array1::from(vec![1.0, 0.0, 3.0, 2.5, 0.7]),
            )
            .unwrap(),
        ),
        (
            "ball",
            FeasibleSet::new_ball(Array1::from(vec![0.5, -1.0, 0.0, 2.0]), 3.0).unwrap(),
        ),
        ("l1", FeasibleSet::new_l1_ball(8, 2.0).unwrap()),
        ("halfspace", FeasibleSet::new_half_space_nonneg(3, 1).unwrap()),
        ("halfdisk", FeasibleSet::HalfDisk),
    ]
}

/// Feasibility, idempotence, nonexpansiveness and the variational
/// characterization on `samples` seeded Gaussian points.
pub fn check_axioms(set: &FeasibleSet, samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = set.dim();
    for i in 0..samples {
        let x = gaussian(&mut rng, dim, 3.0);
        let y = gaussian(&mut rng, dim, 3.0);
        let px = set.project(x.view());
        let py = set.project(y.view());
        if !set.contains(px.view(), 1e-12) {
            return Err(format!("sample {i}: P(x) not feasible"));
        }
        if dist(set.project(px.view()).view(), px.view()) > 1e-12 {
            return Err(format!("sample {i}: not idempotent"));
        }
        if dist(px.view(), py.view()) > dist(x.view(), y.view()) + 1e-12 {
            return Err(format!("sample {i}: expansive"));
        }
        let q = set.sample(&mut rng);
        let lhs = (&x - &px).dot(&(&q - &px));
        if lhs > 1e-9 {
            return Err(format!("sample {i}: characterization violated by {lhs}"));
        }
    }
    Ok(())
}

/// Soft-threshold level found by bisection on `sum (|x_i| - t)_+ = l`.
pub fn l1_by_bisection(x: ArrayView1<f64>, l: f64) -> Vector {
    if x.iter().map(|v| v.abs()).sum::<f64>() <= l {
        return x.to_owned();
    }
    let (mut lo, mut hi) = (0.0, x.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let s: f64 = x.iter().map(|v| (v.abs() - mid).max(0.0)).sum();
        if s > l {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    x.mapv(|v| v.signum() * (v.abs() - t).max(0.0))
}

/// Nearest point among the candidates `x` (if feasible), the flat edge, and the arc.
pub fn half_disk_by_search(x: ArrayView1<f64>) -> Vector {
    if x[0] >= 0.0 && norm(x) <= 1.0 {
        return x.to_owned();
    }
    let edge = Array1::from(vec![0.0, x[1].clamp(-1.0, 1.0)]);
    let arc_at = |t: f64| Array1::from(vec![t.cos(), t.sin()]);
    let (mut a, mut b) = (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if dist(arc_at(m1).view(), x) <= dist(arc_at(m2).view(), x) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let arc = arc_at(0.5 * (a + b));
    if dist(edge.view(), x) <= dist(arc.view(), x) {
        edge
    } else {
        arc
    }
}

/// Central difference of the objective along `d`; exact for a quadratic up to rounding.
pub fn directional_fd(inst: &SignalInstance, p: &Vector, d: &Vector, h: f64) -> f64 {
    let fp = lasso_objective(inst, (p + &(d * h)).view());
    let fm = lasso_objective(inst, (p - &(d * h)).view());
    (fp - fm) / (2.0 * h)
}
