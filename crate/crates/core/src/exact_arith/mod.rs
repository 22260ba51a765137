//! Exact rational arithmetic: scalars, dense univariate and sparse bivariate
//! polynomials, Sturm root isolation and resultants. No floating point is
//! used for any decision made here.

pub mod bipoly;
pub mod rational;
pub mod resultant;
pub mod sturm;
pub mod unipoly;

pub use bipoly::{bi_evaluate, BiPoly};
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use sturm::{
    isolate_real_roots, same_root, separate, sturm_isolate, IsolatingInterval, SturmChain,
};
pub use unipoly::{uni_arith, uni_differentiate, uni_gcd, UniOp, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial is not squarefree on the requested interval")]
    NotSquarefree,
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("cannot parse rational number {0:?}")]
    Parse(String),
}
