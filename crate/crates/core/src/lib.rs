//! Exact decision procedures for semipositive and minimally semipositive
//! matrices, constructive witness builders, and checkers for linear maps of
//! the form `A -> X A Y` that preserve those classes.
//!
//! Every computation is carried out over arbitrary-precision rationals.

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod construct;
pub mod error;
pub mod genfuzz;
pub mod lp;
pub mod preserver;
pub mod ratmat;

pub use error::{Error, Result};
pub use ratmat::{RatMatrix, RatVector, Rational, SignProfile};
