use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result, ViError};

/// Iteration scheme used by a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Projection with two momentum terms and an eventually nondecreasing step size.
    Momentum,
    /// Reflected single-projection method with summable step increments.
    #[serde(rename = "simpleproj")]
    SimpleProjection,
    #[serde(rename = "eg")]
    Extragradient,
    Popov,
    #[serde(rename = "seg")]
    SubgradientExtragradient,
    #[serde(rename = "agraal")]
    AdaptiveGoldenRatio,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Momentum,
        Algorithm::SimpleProjection,
        Algorithm::Extragradient,
        Algorithm::Popov,
        Algorithm::SubgradientExtragradient,
        Algorithm::AdaptiveGoldenRatio,
    ];

    /// Short identifier used on the command line and in output files.
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Momentum => "momentum",
            Algorithm::SimpleProjection => "simpleproj",
            Algorithm::Extragradient => "eg",
            Algorithm::Popov => "popov",
            Algorithm::SubgradientExtragradient => "seg",
            Algorithm::AdaptiveGoldenRatio => "agraal",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = ViError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| ViError::Config(format!("unknown algorithm '{s}'")))
    }
}

/// Nonnegative sequence `c / (k + 1)^p`; summable when `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummableSeq {
    pub scale: f64,
    pub power: f64,
}

impl SummableSeq {
    pub fn new(scale: f64, power: f64) -> Result<Self> {
        let s = SummableSeq { scale, power };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale >= 0.0 && self.scale.is_finite()) {
            return config_err("summable sequence scale must be finite and >= 0");
        }
        if !(self.power > 1.0) {
            return config_err(format!("summable sequence needs power > 1, got {}", self.power));
        }
        Ok(())
    }

    pub fn term(&self, k: usize) -> f64 {
        self.scale / ((k + 1) as f64).powf(self.power)
    }
}

/// Quantity compared against `eps` after every iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TolRule {
    /// `||v_k - P(v_k - g (2 A v_k - A v_{k-1}))|| + ||v_k - v_{k-1}||`.
    SimpleResidual,
    /// `||v - P(v - A v)||`.
    NaturalResidual,
}

/// Parameters of a solver run.
///
/// Field meaning depends on the algorithm for the adaptive methods:
///
/// | field       | Momentum      | SimpleProjection | AdaptiveGoldenRatio |
/// |-------------|---------------|------------------|---------------------|
/// | `theta`     | momentum      | unused           | unused              |
/// | `sigma`     | step factor   | step factor      | unused              |
/// | `lambda0/1` | initial steps | initial steps    | `lambda0` initial   |
/// | `gamma_seq` | growth terms  | increments       | unused              |
///
/// The fixed-step baselines take `fixed_step`, or derive it from the
/// problem's Lipschitz constant when it is `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub theta: f64,
    pub sigma: f64,
    pub lambda0: f64,
    pub lambda1: f64,
    pub gamma_seq: SummableSeq,
    pub eps: f64,
    pub max_iter: usize,
    pub tol_rule: TolRule,
    pub tol_gamma_delta: f64,
    pub fixed_step: Option<f64>,
    pub phi: f64,
    pub lambda_bar: f64,
}

/// The golden ratio, upper bound for `phi`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

impl SolverConfig {
    /// Parameter recipe from the benchmark protocol for `algorithm`, with `eps = 1e-5`.
    pub fn defaults_for(algorithm: Algorithm) -> Self {
        let theta = 0.01;
        let base = SolverConfig {
            algorithm,
            theta,
            sigma: 0.4 / (2.0 + 2.0 * theta),
            lambda0: 0.01,
            lambda1: 0.01,
            gamma_seq: SummableSeq {
                scale: 100.0,
                power: 1.1,
            },
            eps: 1e-5,
            max_iter: 5000,
            tol_rule: TolRule::SimpleResidual,
            tol_gamma_delta: 0.17,
            fixed_step: None,
            phi: 1.5,
            lambda_bar: 4.0,
        };
        match algorithm {
            Algorithm::Momentum => base,
            Algorithm::SimpleProjection => SolverConfig {
                theta: 0.0,
                sigma: 0.26,
                lambda0: 0.1,
                lambda1: 0.01,
                ..base
            },
            Algorithm::Extragradient | Algorithm::Popov | Algorithm::SubgradientExtragradient => SolverConfig {
                theta: 0.0,
                tol_rule: TolRule::NaturalResidual,
                ..base
            },
            Algorithm::AdaptiveGoldenRatio => SolverConfig {
                theta: 0.0,
                lambda0: 2.0,
                lambda1: 2.0,
                tol_rule: TolRule::NaturalResidual,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                config_err(format!("{name} must be positive and finite, got {v}"))
            }
        };
        positive("eps", self.eps)?;
        positive("lambda0", self.lambda0)?;
        positive("lambda1", self.lambda1)?;
        self.gamma_seq.validate()?;
        match self.algorithm {
            Algorithm::Momentum => {
                if !(self.theta >= 0.0 && self.theta.is_finite()) {
                    return config_err(format!("theta must be >= 0, got {}", self.theta));
                }
                if !(self.sigma > 0.0 && self.sigma < 1.0) {
                    return config_err(format!("sigma must lie in (0, 1), got {}", self.sigma));
                }
                let bound = 1.0 / (3.0 * (1.0 + self.theta));
                if !(self.sigma < bound) {
                    return config_err(format!(
                        "sigma must be below 1/(3(1+theta)) = {bound}, got {}",
                        self.sigma
                    ));
                }
            }
            Algorithm::SimpleProjection => {
                if !(self.sigma > 0.0 && self.sigma < 1.0) {
                    return config_err(format!("alpha must lie in (0, 1), got {}", self.sigma));
                }
            }
            Algorithm::AdaptiveGoldenRatio => {
                if !(self.phi > 1.0 && self.phi < GOLDEN_RATIO) {
                    return config_err(format!("phi must lie in (1, golden ratio), got {}", self.phi));
                }
                positive("lambda_bar", self.lambda_bar)?;
            }
            Algorithm::Extragradient | Algorithm::Popov | Algorithm::SubgradientExtragradient => {}
        }
        if let Some(s) = self.fixed_step {
            positive("fixed_step", s)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_presets_are_valid() {
        for a in Algorithm::ALL {
            SolverConfig::defaults_for(a).validate().unwrap();
        }
    }

    #[test]
    fn momentum_sigma_bound_enforced() {
        let mut c = SolverConfig::defaults_for(Algorithm::Momentum);
        c.theta = 1.0;
        c.sigma = 1.0 / 6.0;
        assert!(c.validate().is_err());
        c.sigma = 0.16;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn non_summable_sequence_rejected() {
        assert!(SummableSeq::new(1.0, 1.0).is_err());
        assert!(SummableSeq::new(1.0, 1.01).is_ok());
        let mut c = SolverConfig::defaults_for(Algorithm::Momentum);
        c.gamma_seq.power = 0.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn algorithm_ids_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.id().parse::<Algorithm>().unwrap(), a);
        }
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn gamma_terms() {
        let g = SummableSeq::new(100.0, 1.1).unwrap();
        assert!((g.term(0) - 100.0).abs() < 1e-12);
        assert!((g.term(1) - 100.0 / 2f64.powf(1.1)).abs() < 1e-12);
    }
}
