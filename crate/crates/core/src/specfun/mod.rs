//! Gamma, Kummer's confluent hypergeometric function and Hermite functions of
//! real order.

mod dd;
mod gamma;
mod hermite;
mod kummer;

pub use gamma::{gamma, log_gamma, rgamma, sin_pi};
pub use hermite::{
    hermite_deriv, hermite_fn, hermite_fn_with_method, hermite_poly, hermite_raise, Method, HERMITE_RTOL, NU_MAX,
    NU_MIN, W2_MAX,
};
pub use kummer::{kummer_m, CANCELLATION_GUARD, EXTENDED_RTOL, KUMMER_MAX_TERMS, KUMMER_X_MAX};

use serde::{Deserialize, Serialize};

/// Order ν of a Hermite function; any finite real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteOrder {
    pub nu: f64,
}

impl HermiteOrder {
    pub fn new(nu: f64) -> Self {
        HermiteOrder { nu }
    }
}

impl From<f64> for HermiteOrder {
    fn from(nu: f64) -> Self {
        HermiteOrder { nu }
    }
}

/// A value with a non-negative absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
}
