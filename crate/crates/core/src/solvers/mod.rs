//! Step implementations of every supported method.

pub mod extragradient;
pub mod golden_ratio;
pub mod momentum;
pub mod simple;

pub use extragradient::{extragradient_step, popov_step, project_half_space, subgradient_extragradient_step};
pub use golden_ratio::{agraal_step, agraal_step_size, GoldenRatioState};
pub use momentum::{momentum_anchor, momentum_step, step_size_update, MomentumState, StepBranch, StepSizeUpdate};
pub use simple::{simple_projection_point, simple_projection_step, SimpleProjState};
