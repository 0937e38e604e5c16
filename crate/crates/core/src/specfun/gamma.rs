use super::dd::{gamma_pos, ln_gamma_stirling, rgamma_dd, Dd, PI};
use crate::error::{Error, Result};

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
pub fn log_gamma(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma of non-finite {x}")));
    }
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x == 1.0 || x == 2.0 {
        return Ok((0.0, 1.0));
    }
    let (l, s) = log_gamma_dd(Dd::from_f64(x));
    Ok((l.to_f64(), s))
}

fn ln_gamma_pos(x: Dd) -> Dd {
    if x.hi >= 26.0 {
        return ln_gamma_stirling(x);
    }
    let mut z = x;
    let mut prod = Dd::ONE;
    while z.hi < 26.0 {
        prod = prod * z;
        z = z.add_f64(1.0);
    }
    ln_gamma_stirling(z) - prod.ln()
}

pub(crate) fn log_gamma_dd(x: Dd) -> (Dd, f64) {
    if x.hi >= 0.5 {
        return (ln_gamma_pos(x), 1.0);
    }
    // Γ(x)Γ(1-x) = π / sin(πx)
    let s = x.sin_pi();
    let l = PI.ln() - s.abs().ln() - ln_gamma_pos(Dd::ONE - x);
    (l, s.hi.signum())
}

/// `Γ(x)`; overflows to ±inf for large arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if (0.5..171.0).contains(&x) {
        return Ok(gamma_pos(Dd::from_f64(x)).to_f64());
    }
    let (l, s) = log_gamma(x)?;
    Ok(s * l.exp())
}

/// `1/Γ(x)`, an entire function: exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x > 170.0 {
        return 0.0;
    }
    if x < -170.0 {
        if is_pole(x) {
            return 0.0;
        }
        let (l, s) = log_gamma_dd(Dd::from_f64(x));
        return s * (-l.to_f64()).exp();
    }
    rgamma_dd(Dd::from_f64(x)).to_f64()
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    Dd::from_f64(x).sin_pi().to_f64()
}
