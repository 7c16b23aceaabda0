//! Metric projections onto the feasible sets used by the benchmark problems.
//!
//! Every projection here is exact (closed form or a finite sort-and-scan), so
//! the output `p = P(x)` satisfies `<x - p, q - p> <= 0` for all `q` in the set.

use ndarray::{Array1, ArrayView1, Zip};
use rand::Rng;

use crate::error::{config_err, Result};
use crate::linalg::{norm, Vector};

/// Closed convex set with a known nearest-point map.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleSet {
    /// Coordinatewise box `lo <= x <= hi`.
    Box { lo: Vector, hi: Vector },
    /// Euclidean ball.
    Ball { center: Vector, radius: f64 },
    /// `{x : ||x||_1 <= radius}`.
    L1Ball { dim: usize, radius: f64 },
    /// `{x : x[coord] >= 0}`.
    HalfSpaceNonneg { dim: usize, coord: usize },
    /// Right half of the closed unit disk in the plane, `{x : ||x|| <= 1, x[0] >= 0}`.
    HalfDisk,
}

impl FeasibleSet {
    pub fn new_box(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return config_err("box bounds must be nonempty and of equal length");
        }
        if lo.iter().zip(hi.iter()).any(|(l, h)| !(l <= h)) {
            return config_err("box requires lo <= hi coordinatewise");
        }
        Ok(FeasibleSet::Box { lo, hi })
    }

    /// Box with the same bounds on every coordinate.
    pub fn uniform_box(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new_box(Array1::from_elem(dim, lo), Array1::from_elem(dim, hi))
    }

    pub fn new_ball(center: Vector, radius: f64) -> Result<Self> {
        if center.is_empty() || !(radius > 0.0) {
            return config_err("ball requires a nonempty center and radius > 0");
        }
        Ok(FeasibleSet::Ball { center, radius })
    }

    pub fn new_l1_ball(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 || !(radius > 0.0) {
            return config_err("l1 ball requires dim > 0 and radius > 0");
        }
        Ok(FeasibleSet::L1Ball { dim, radius })
    }

    pub fn new_half_space_nonneg(dim: usize, coord: usize) -> Result<Self> {
        if coord >= dim {
            return config_err(format!("coordinate {coord} out of range for dim {dim}"));
        }
        Ok(FeasibleSet::HalfSpaceNonneg { dim, coord })
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleSet::Box { lo, .. } => lo.len(),
            FeasibleSet::Ball { center, .. } => center.len(),
            FeasibleSet::L1Ball { dim, .. } | FeasibleSet::HalfSpaceNonneg { dim, .. } => *dim,
            FeasibleSet::HalfDisk => 2,
        }
    }

    pub fn project(&self, x: ArrayView1<f64>) -> Vector {
        match self {
            FeasibleSet::Box { lo, hi } => project_box(x, lo.view(), hi.view()),
            FeasibleSet::Ball { center, radius } => project_ball(x, center.view(), *radius),
            FeasibleSet::L1Ball { radius, .. } => project_l1_ball(x, *radius),
            FeasibleSet::HalfSpaceNonneg { coord, .. } => project_half_space_nonneg(x, *coord),
            FeasibleSet::HalfDisk => project_half_disk(x),
        }
    }

    /// Membership up to an absolute slack.
    pub fn contains(&self, x: ArrayView1<f64>, tol: f64) -> bool {
        match self {
            FeasibleSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi.iter()))
                .all(|(v, (l, h))| *v >= l - tol && *v <= h + tol),
            FeasibleSet::Ball { center, radius } => norm((&x - center).view()) <= radius + tol,
            FeasibleSet::L1Ball { radius, .. } => x.iter().map(|v| v.abs()).sum::<f64>() <= radius + tol,
            FeasibleSet::HalfSpaceNonneg { coord, .. } => x[*coord] >= -tol,
            FeasibleSet::HalfDisk => x[0] >= -tol && norm(x) <= 1.0 + tol,
        }
    }

    /// Draws a point of the set: uniform on a bounding box, then projected.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        match self {
            FeasibleSet::Box { lo, hi } => {
                Zip::from(lo)
                    .and(hi)
                    .map_collect(|&l, &h| if l < h { rng.random_range(l..=h) } else { l })
            }
            FeasibleSet::Ball { center, radius } => {
                let raw = center.mapv(|c| c + rng.random_range(-*radius..=*radius));
                self.project(raw.view())
            }
            FeasibleSet::L1Ball { dim, radius } => {
                let raw = Array1::from_shape_fn(*dim, |_| rng.random_range(-*radius..=*radius));
                self.project(raw.view())
            }
            FeasibleSet::HalfSpaceNonneg { dim, .. } => {
                let raw = Array1::from_shape_fn(*dim, |_| rng.random_range(-1.0..=1.0));
                self.project(raw.view())
            }
            FeasibleSet::HalfDisk => {
                let raw = Array1::from_shape_fn(2, |_| rng.random_range(-1.0..=1.0));
                self.project(raw.view())
            }
        }
    }
}

/// Coordinatewise clamp onto `[lo, hi]`.
pub fn project_box(x: ArrayView1<f64>, lo: ArrayView1<f64>, hi: ArrayView1<f64>) -> Vector {
    Zip::from(&x).and(&lo).and(&hi).map_collect(|&v, &l, &h| v.clamp(l, h))
}

/// Radial projection onto the ball of radius `r` around `center`.
pub fn project_ball(x: ArrayView1<f64>, center: ArrayView1<f64>, r: f64) -> Vector {
    let diff = &x - &center;
    let d = norm(diff.view());
    if d <= r {
        x.to_owned()
    } else {
        &center + &(diff * (r / d))
    }
}

/// Projection onto `{x : ||x||_1 <= l}` by soft thresholding.
///
/// The threshold is found by sorting the magnitudes in decreasing order and
/// scanning partial sums, `O(n log n)`.
pub fn project_l1_ball(x: ArrayView1<f64>, l: f64) -> Vector {
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    if l1 <= l {
        return x.to_owned();
    }
    let mut mags: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    mags.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (j, &m) in mags.iter().enumerate() {
        cumsum += m;
        let candidate = (cumsum - l) / (j + 1) as f64;
        if m > candidate {
            tau = candidate;
        } else {
            break;
        }
    }
    x.mapv(|v| v.signum() * (v.abs() - tau).max(0.0))
}

/// Projection onto `{x : x[coord] >= 0}`.
pub fn project_half_space_nonneg(x: ArrayView1<f64>, coord: usize) -> Vector {
    let mut y = x.to_owned();
    if y[coord] < 0.0 {
        y[coord] = 0.0;
    }
    y
}

/// Projection onto the right half of the unit disk.
///
/// Clamp the first coordinate to be nonnegative, then scale radially. This is
/// exact because the bounding line passes through the center of the disk.
pub fn project_half_disk(x: ArrayView1<f64>) -> Vector {
    let first = if x[0] < 0.0 { 0.0 } else { x[0] };
    let mut y = Array1::from(vec![first, x[1]]);
    let r = norm(y.view());
    if r > 1.0 {
        y /= r;
    }
    y
}
