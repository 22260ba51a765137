//! The charge system and the field it generates: exact inputs, rigorous
//! interval enclosures of the field components, the generalized kernels and
//! their closed-form partial derivatives.

pub mod dyadic;
pub mod eval;
pub mod interval;
pub mod slopes;
pub mod system;

pub use dyadic::{Dyadic, Round};
pub use eval::{
    eval_field, eval_kernel, eval_kernel_partials, eval_moment_kernels, field_with_jacobian_box,
    kernel_box, kernel_f64, kernel_partials_box, moment_kernels_box, ChargeData,
    EvalPoint, FieldValue, KernelPartials, DEFAULT_PRECISION, MIN_PRECISION,
};
pub use interval::{DyadicInterval, Endpoint, F64Interval, Interval};
pub use slopes::{gradient_cosine, implicit_tangent_slopes, NextKernelCondition, Slope, TangentSlopes};
pub use system::{Charge, ChargeSystem};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    X,
    Y,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("a charge system needs at least one charge")]
    EmptySystem,
    #[error("charge {index} has zero amplitude")]
    ZeroAmplitude { index: usize },
    #[error("charge {index} repeats the position of the previous charge")]
    DuplicatePosition { index: usize },
    #[error("charge {index} is not to the right of the previous charge")]
    NotIncreasing { index: usize },
    #[error("charge {index} is not at a positive position")]
    NonPositivePosition { index: usize },
    #[error("evaluation point coincides with charge {index}")]
    SingularPoint { index: usize },
    #[error("precision {0} is below the 64-bit minimum")]
    PrecisionTooLow(u32),
    #[error("evaluation point is not finite")]
    NonFinitePoint,
    #[error("kernel index must be at least 1")]
    KernelIndex,
    #[error("point is not a zero of the field (X = {x:e}, Y = {y:e})")]
    NotAZero { x: f64, y: f64 },
    #[error("both partial derivatives of {component:?} vanish")]
    DegenerateJacobian { component: Component },
}
