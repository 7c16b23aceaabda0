//! Benchmark problems and their initial points.
//!
//! | id     | set                      | operator                                   |
//! |--------|--------------------------|--------------------------------------------|
//! | `exm1` | `[-1, 1]`                | piecewise, `mu^2` inside the interval      |
//! | `exm2` | right half unit disk     | `(-mu1 e^mu2, mu2)` (not quasimonotone)    |
//! | `exm3` | `[0, 1]^m`               | tridiagonal quadratic                      |
//! | `exm4` | ball of radius 3 in l2   | `(x1 e^{-x1^2}, 0, 0, ...)`, truncated     |

use std::fmt;
use std::str::FromStr;

use ndarray::{array, Array1, ArrayView1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{config_err, Result, ViError};
use crate::linalg::Vector;
use crate::problem::{estimate_lipschitz, VIProblem};
use crate::projections::FeasibleSet;

/// Default truncation dimension for the sequence-space problem.
pub const DEFAULT_TRUNC_DIM: usize = 100;
/// Sizes used for the four cases of `exm3`.
pub const EXM3_SIZES: [usize; 4] = [50, 80, 100, 200];
/// Seeded pairs used for empirical Lipschitz estimates.
pub const LIPSCHITZ_PAIRS: usize = 2000;
/// Multiplier applied to empirical Lipschitz estimates.
pub const LIPSCHITZ_SAFETY: f64 = 1.1;
/// Upper bound for the Lipschitz constant of [`exm3_operator`] on `[0, 1]^m`.
///
/// On the box the Jacobian rows have entries bounded by `2`, `8`, `2`, and
/// the columns likewise, so `||J||_2 <= sqrt(||J||_1 ||J||_inf) <= 12`. Sampled
/// pairs stay well below the value `~11` attained at the all-ones point.
pub const EXM3_LIPSCHITZ: f64 = 12.0;

/// Exact Lipschitz constant of [`exm4_operator`].
pub const EXM4_LIPSCHITZ: f64 = 1.0;
const LIPSCHITZ_SEED: u64 = 20_250_101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Exm1,
    Exm2,
    Exm3 { m: usize },
    Exm4 { n: usize },
}

impl ProblemId {
    pub fn key(&self) -> &'static str {
        match self {
            ProblemId::Exm1 => "exm1",
            ProblemId::Exm2 => "exm2",
            ProblemId::Exm3 { .. } => "exm3",
            ProblemId::Exm4 { .. } => "exm4",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemId::Exm3 { m } => write!(f, "exm3(m={m})"),
            ProblemId::Exm4 { n } => write!(f, "exm4(n={n})"),
            other => f.write_str(other.key()),
        }
    }
}

/// Parses `exm1`..`exm4`; `exm3` defaults to `m = 50`, `exm4` to the default truncation.
impl FromStr for ProblemId {
    type Err = ViError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exm1" => Ok(ProblemId::Exm1),
            "exm2" => Ok(ProblemId::Exm2),
            "exm3" => Ok(ProblemId::Exm3 { m: EXM3_SIZES[0] }),
            "exm4" => Ok(ProblemId::Exm4 { n: DEFAULT_TRUNC_DIM }),
            _ => config_err(format!("unknown problem '{s}'")),
        }
    }
}

pub fn exm1_operator(mu: f64) -> f64 {
    if mu > 1.0 {
        2.0 * mu - 1.0
    } else if mu < -1.0 {
        -2.0 * mu - 1.0
    } else {
        mu * mu
    }
}

pub fn exm2_operator(mu: [f64; 2]) -> [f64; 2] {
    [-mu[0] * mu[1].exp(), mu[1]]
}

/// `h_i = mu_{i-1}^2 + mu_i^2 + mu_{i-1} mu_i + mu_i mu_{i+1} - 2 mu_{i-1} + 4 mu_i + mu_{i+1} - 1`
/// with `mu_0 = mu_{m+1} = 0`.
pub fn exm3_operator(mu: ArrayView1<f64>) -> Vector {
    let m = mu.len();
    Array1::from_shape_fn(m, |i| {
        let prev = if i > 0 { mu[i - 1] } else { 0.0 };
        let next = if i + 1 < m { mu[i + 1] } else { 0.0 };
        let cur = mu[i];
        prev * prev + cur * cur + prev * cur + cur * next - 2.0 * prev + 4.0 * cur + next - 1.0
    })
}

pub fn exm4_operator(x: ArrayView1<f64>) -> Vector {
    let mut out = Array1::zeros(x.len());
    if !x.is_empty() {
        out[0] = x[0] * (-x[0] * x[0]).exp();
    }
    out
}

pub fn exm1_problem() -> VIProblem {
    let set = FeasibleSet::uniform_box(1, -1.0, 1.0).expect("valid box");
    VIProblem::new("exm1", set, |x| array![exm1_operator(x[0])])
        .with_lipschitz(2.0)
        .and_then(|p| p.with_known_solutions(vec![array![-1.0], array![0.0]]))
        .and_then(|p| p.with_known_minty_solutions(vec![array![-1.0]]))
        .expect("exm1 metadata is consistent")
}

fn with_estimated_lipschitz(p: VIProblem) -> Result<VIProblem> {
    let l = estimate_lipschitz(&p, LIPSCHITZ_PAIRS, LIPSCHITZ_SEED) * LIPSCHITZ_SAFETY;
    p.with_lipschitz(l)
}

pub fn exm2_problem() -> VIProblem {
    let p = VIProblem::new("exm2", FeasibleSet::HalfDisk, |x| {
        let [a, b] = exm2_operator([x[0], x[1]]);
        array![a, b]
    });
    with_estimated_lipschitz(p)
        .and_then(|p| p.with_known_solutions(vec![array![1.0, 0.0], array![0.0, 0.0]]))
        .and_then(|p| p.with_known_minty_solutions(vec![array![1.0, 0.0]]))
        .expect("exm2 metadata is consistent")
}

pub fn exm3_problem(m: usize) -> Result<VIProblem> {
    if m == 0 {
        return config_err("exm3 requires m >= 1");
    }
    let set = FeasibleSet::uniform_box(m, 0.0, 1.0)?;
    VIProblem::new("exm3", set, exm3_operator).with_lipschitz(EXM3_LIPSCHITZ)
}

pub fn exm4_problem(n: usize) -> Result<VIProblem> {
    if n == 0 {
        return config_err("exm4 requires a truncation dimension >= 1");
    }
    let set = FeasibleSet::new_ball(Array1::zeros(n), 3.0)?;
    // The Jacobian has rank one, so sampled pairs in high dimension badly
    // underestimate the constant. `d/dt t exp(-t^2)` peaks at 1 for t = 0.
    VIProblem::new("exm4", set, exm4_operator).with_lipschitz(EXM4_LIPSCHITZ)
}

/// Ratios `(r0, r1)` such that case `c` of `exm4` starts from `v0 = (r0^k)`, `v1 = (r1^k)`, `k >= 1`.
pub fn exm4_ratios(case_id: u32) -> Result<(f64, f64)> {
    match case_id {
        1 => Ok((1.0 / 3.0, 2.0 / 3.0)),
        2 => Ok((0.5, 0.2)),
        3 => Ok((0.8, 0.5)),
        4 => Ok((1.0 / 8.0, 1.0 / 7.0)),
        _ => config_err(format!("unknown case {case_id} (expected 1..4)")),
    }
}

/// `(r^k)_{k = 1..n}`.
pub fn geometric_sequence(r: f64, n: usize) -> Vector {
    Array1::from_shape_fn(n, |i| r.powi(i as i32 + 1))
}

/// Norm of the discarded tail `(r^k)_{k > n}`.
pub fn geometric_tail_norm(r: f64, n: usize) -> f64 {
    (r.powi(2 * (n as i32 + 1)) / (1.0 - r * r)).sqrt()
}

/// A problem together with the initial points of one case.
#[derive(Debug, Clone)]
pub struct ProblemCase {
    pub id: ProblemId,
    pub case_id: u32,
    pub problem: VIProblem,
    pub v0: Vector,
    pub v1: Vector,
}

/// Builds `problem_id` with the initial points of `case_id` (1..4).
///
/// `exm3` draws both initial points uniformly from `[0, 1]^m` using `seed`;
/// the other problems ignore the seed.
pub fn make_case(id: ProblemId, case_id: u32, seed: u64) -> Result<ProblemCase> {
    if !(1..=4).contains(&case_id) {
        return config_err(format!("unknown case {case_id} (expected 1..4)"));
    }
    let (problem, v0, v1) = match id {
        ProblemId::Exm1 => {
            let (a, b) = [(0.1, 0.9), (0.8, 0.1), (0.1, 0.5), (-0.1, 0.2)][case_id as usize - 1];
            (exm1_problem(), array![a], array![b])
        }
        ProblemId::Exm2 => {
            let (a, b) = [
                ([0.3, 0.1], [0.1, 0.5]),
                ([0.1, 0.1], [0.1, 0.7]),
                ([0.1, -0.5], [0.1, 0.3]),
                ([0.3, -0.7], [0.2, -0.5]),
            ][case_id as usize - 1];
            (exm2_problem(), Array1::from(a.to_vec()), Array1::from(b.to_vec()))
        }
        ProblemId::Exm3 { m } => {
            let p = exm3_problem(m)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v0 = Array1::from_shape_fn(m, |_| rng.random::<f64>());
            let v1 = Array1::from_shape_fn(m, |_| rng.random::<f64>());
            (p, v0, v1)
        }
        ProblemId::Exm4 { n } => {
            let (r0, r1) = exm4_ratios(case_id)?;
            (exm4_problem(n)?, geometric_sequence(r0, n), geometric_sequence(r1, n))
        }
    };
    Ok(ProblemCase {
        id,
        case_id,
        problem,
        v0,
        v1,
    })
}

/// `exm3` case `c` uses the `c`-th entry of [`EXM3_SIZES`].
pub fn exm3_case_size(case_id: u32) -> Result<usize> {
    EXM3_SIZES
        .get((case_id as usize).wrapping_sub(1))
        .copied()
        .ok_or_else(|| ViError::Config(format!("unknown case {case_id} (expected 1..4)")))
}
