use std::fmt;
use std::sync::Arc;

use ndarray::ArrayView1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{config_err, Result, ViError};
use crate::linalg::{dist, Vector};
use crate::projections::FeasibleSet;

/// Operator `A : H -> H` of a variational inequality.
pub type OperatorFn = dyn Fn(ArrayView1<f64>) -> Vector + Send + Sync;

/// Variational inequality: find `p` in `C` with `<A p, q - p> >= 0` for all `q` in `C`.
///
/// The operator must be pure; problems are cheap to clone and can be shared
/// across threads.
#[derive(Clone)]
pub struct VIProblem {
    name: String,
    operator: Arc<OperatorFn>,
    set: FeasibleSet,
    lipschitz: Option<f64>,
    known_solutions: Vec<Vector>,
    known_minty_solutions: Vec<Vector>,
}

impl fmt::Debug for VIProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VIProblem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("set", &self.set)
            .field("lipschitz", &self.lipschitz)
            .field("known_solutions", &self.known_solutions.len())
            .field("known_minty_solutions", &self.known_minty_solutions.len())
            .finish()
    }
}

impl VIProblem {
    pub fn new<F>(name: impl Into<String>, set: FeasibleSet, operator: F) -> Self
    where
        F: Fn(ArrayView1<f64>) -> Vector + Send + Sync + 'static,
    {
        VIProblem {
            name: name.into(),
            operator: Arc::new(operator),
            set,
            lipschitz: None,
            known_solutions: Vec::new(),
            known_minty_solutions: Vec::new(),
        }
    }

    pub fn with_lipschitz(mut self, l: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return config_err(format!("Lipschitz constant must be positive, got {l}"));
        }
        self.lipschitz = Some(l);
        Ok(self)
    }

    /// Attaches known elements of the solution set. Each must be feasible.
    pub fn with_known_solutions(mut self, sols: Vec<Vector>) -> Result<Self> {
        self.check_feasible(&sols)?;
        self.known_solutions = sols;
        Ok(self)
    }

    /// Attaches known elements of the Minty (dual) solution set.
    pub fn with_known_minty_solutions(mut self, sols: Vec<Vector>) -> Result<Self> {
        self.check_feasible(&sols)?;
        self.known_minty_solutions = sols;
        Ok(self)
    }

    fn check_feasible(&self, sols: &[Vector]) -> Result<()> {
        for s in sols {
            self.check_dim(s.len())?;
            if dist(self.project(s.view()).view(), s.view()) > 1e-12 {
                return config_err(format!("known solution {s} of {} is not feasible", self.name));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn set(&self) -> &FeasibleSet {
        &self.set
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn known_solutions(&self) -> &[Vector] {
        &self.known_solutions
    }

    pub fn known_minty_solutions(&self) -> &[Vector] {
        &self.known_minty_solutions
    }

    /// Evaluates the operator.
    pub fn apply(&self, x: ArrayView1<f64>) -> Vector {
        (self.operator)(x)
    }

    pub fn project(&self, x: ArrayView1<f64>) -> Vector {
        self.set.project(x)
    }

    pub fn check_dim(&self, actual: usize) -> Result<()> {
        if actual != self.dim() {
            return Err(ViError::DimensionMismatch {
                expected: self.dim(),
                actual,
            });
        }
        Ok(())
    }

    /// Smallest distance from `x` to a known solution, if any are known.
    pub fn dist_to_solutions(&self, x: ArrayView1<f64>) -> Option<f64> {
        self.known_solutions
            .iter()
            .map(|s| dist(x, s.view()))
            .min_by(f64::total_cmp)
    }

    /// Wraps the operator so that every evaluation increments `counter`.
    pub fn instrumented(&self, counter: Arc<std::sync::atomic::AtomicUsize>) -> Self {
        let inner = Arc::clone(&self.operator);
        let mut p = self.clone();
        p.operator = Arc::new(move |x| {
            counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            inner(x)
        });
        p
    }
}

/// Largest observed ratio `||A p - A q|| / ||p - q||` over `pairs` seeded pairs drawn from `C`.
///
/// This is a lower estimate of the true constant; callers apply their own safety factor.
pub fn estimate_lipschitz(problem: &VIProblem, pairs: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0_f64;
    for _ in 0..pairs {
        let p = problem.set().sample(&mut rng);
        let q = problem.set().sample(&mut rng);
        let d = dist(p.view(), q.view());
        if d > 0.0 {
            let r = dist(problem.apply(p.view()).view(), problem.apply(q.view()).view()) / d;
            if r.is_finite() {
                best = best.max(r);
            }
        }
    }
    best
}
