//! Exact arithmetic foundation.
//!
//! The coefficient field everywhere is the Gaussian rationals Q(i): every
//! formula in the geometric modules mixes `i` with rational constants, and
//! keeping the field fixed lets every downstream check assert exact zero.
//!
//! Values are immutable after construction and all operations are pure
//! functions, so everything here is `Send + Sync` for free.

mod gauss;
mod gcd;
mod mpoly;
mod ratfunc;
mod series;
pub mod text;

pub use gauss::{gauss_sqrt, rat, rat_sqrt, GaussRat, Rat};
pub use gcd::{mpoly_exact_div, mpoly_gcd, mpoly_sqrt};
pub use mpoly::{MPoly, Term};
pub use ratfunc::RatFunc;
pub use series::TSeries;

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SymError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at pole")]
    Pole,
    #[error("series not a unit: {0}")]
    NotAUnit(String),
    #[error("variable `{0}` missing from evaluation point")]
    MissingVariable(String),
    #[error("not a perfect square")]
    NotASquare,
    #[error("parse error: {0}")]
    Parse(String),
}
