//! Exact arithmetic for probabilistic degenerate derangement polynomials and
//! their relatives, with generating-function oracles and an identity verifier.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod moments;
pub mod prob;
pub mod rational;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
