//! Bi-confluent Heun solutions through expansions in Hermite functions of
//! real order, series termination, and the exactly solvable half-line well
//! V(x) = 55ħ²/(72m x²) + V₂x^{−2/3} + V₀ + (9mV₂²/8ħ²) x^{2/3}.
//!
//! Every closed form has an independent brute-force counterpart in
//! [`oracle`].

// `!(a < b)` is deliberate wherever NaN must fail a check.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bch;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod n3well;
pub mod oracle;
pub mod schrod;
pub mod specfun;

pub use error::{Error, Result};
