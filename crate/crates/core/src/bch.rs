//! The bi-confluent Heun equation
//!
//! u'' + (γ/z + δ + εz) u' + ((αz − q)/z) u = 0
//!
//! and its power-series solution about z = 0 with exponent 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BchParams {
    pub gamma: f64,
    pub delta: f64,
    pub eps: f64,
    pub alpha: f64,
    pub q: f64,
}

impl BchParams {
    pub fn new(gamma: f64, delta: f64, eps: f64, alpha: f64, q: f64) -> Self {
        BchParams { gamma, delta, eps, alpha, q }
    }

    pub fn is_finite(&self) -> bool {
        [self.gamma, self.delta, self.eps, self.alpha, self.q].iter().all(|v| v.is_finite())
    }

    /// Coefficients (p, r) of u'' + p u' + r u = 0 at z.
    pub fn coefficients(&self, z: f64) -> (f64, f64) {
        (self.gamma / z + self.delta + self.eps * z, (self.alpha * z - self.q) / z)
    }
}

pub(crate) fn is_nonpositive_int(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Truncated Taylor series u(z) = Σ a_k z^k with a₀ = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSolution {
    pub params: BchParams,
    pub coeffs: Vec<f64>,
    pub trunc_order: usize,
}

/// Value of a series solution with its derivatives and a tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub u: f64,
    pub du: f64,
    pub ddu: f64,
    pub tail: f64,
}

/// Relative size of the tail beyond which `series_eval` refuses.
pub const SERIES_TAIL_TOL: f64 = 1e-10;

/// Taylor coefficients from
/// (k+1)(k+γ) a_{k+1} = −(δk − q) a_k − (ε(k−1) + α) a_{k−1}.
pub fn frobenius_series(params: BchParams, trunc_order: usize) -> Result<SeriesSolution> {
    if !params.is_finite() {
        return Err(Error::Domain("non-finite BCH parameter".into()));
    }
    if is_nonpositive_int(params.gamma) {
        return Err(Error::Indicial(params.gamma));
    }
    if trunc_order < 2 {
        return Err(Error::Domain(format!("trunc_order must be at least 2, got {trunc_order}")));
    }
    let BchParams { gamma, delta, eps, alpha, q } = params;
    let mut a = Vec::with_capacity(trunc_order + 1);
    a.push(1.0);
    a.push(q / gamma);
    for k in 1..trunc_order {
        let kf = k as f64;
        let next = -((delta * kf - q) * a[k] + (eps * (kf - 1.0) + alpha) * a[k - 1]) / ((kf + 1.0) * (kf + gamma));
        a.push(next);
    }
    Ok(SeriesSolution { params, coeffs: a, trunc_order })
}

fn tail_estimate(terms: &[f64]) -> f64 {
    // geometric extrapolation from the last ten terms, five at a time
    let n = terms.len();
    if n < 10 {
        return f64::INFINITY;
    }
    let last = terms[n - 5..].iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let prev = terms[n - 10..n - 5].iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if last == 0.0 {
        return 0.0;
    }
    let r = (last / prev).powf(0.2);
    if !(r < 1.0) {
        return f64::INFINITY;
    }
    last * r / (1.0 - r)
}

/// u, u', u'' by Horner's rule, with the tail estimate of the truncated sum.
pub fn series_eval_full(sol: &SeriesSolution, z: f64) -> SeriesValue {
    let a = &sol.coeffs;
    let n = a.len();
    let (mut u, mut du, mut ddu) = (0.0, 0.0, 0.0);
    for k in (0..n).rev() {
        ddu = ddu * z + 2.0 * du;
        du = du * z + u;
        u = u * z + a[k];
    }
    let mut zk = 1.0;
    let terms: Vec<f64> = a
        .iter()
        .map(|c| {
            let t = c * zk;
            zk *= z;
            t
        })
        .collect();
    SeriesValue { u, du, ddu, tail: tail_estimate(&terms) }
}

/// (u, u') at z; fails when the tail is not below 1e−10·max(1, |u|).
pub fn series_eval(sol: &SeriesSolution, z: f64) -> Result<(f64, f64)> {
    let v = series_eval_full(sol, z);
    let tol = SERIES_TAIL_TOL * v.u.abs().max(1.0);
    if !(v.tail <= tol) {
        return Err(Error::Truncation { estimate: v.tail, tolerance: tol });
    }
    Ok((v.u, v.du))
}

/// Evaluate the exponent-0 solution at z, doubling the truncation order
/// until the tail is certified.
pub fn frobenius_eval(params: BchParams, z: f64) -> Result<SeriesValue> {
    let mut order = 32;
    loop {
        let sol = frobenius_series(params, order)?;
        let v = series_eval_full(&sol, z);
        let tol = SERIES_TAIL_TOL * 1e-3 * v.u.abs().max(1.0);
        if v.tail <= tol {
            return Ok(v);
        }
        if order >= 8192 {
            return Err(Error::Truncation { estimate: v.tail, tolerance: tol });
        }
        order *= 2;
    }
}

/// Left-hand side of the equation, not normalized.
pub fn bch_residual_raw(params: &BchParams, u: f64, du: f64, ddu: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Err(Error::Singularity);
    }
    let (p, r) = params.coefficients(z);
    Ok(ddu + p * du + r * u)
}

/// Residual divided by max(|u''|, |each term|, 1).
pub fn bch_residual(params: &BchParams, u: f64, du: f64, ddu: f64, z: f64) -> Result<f64> {
    let raw = bch_residual_raw(params, u, du, ddu, z)?;
    let BchParams { gamma, delta, eps, alpha, q } = *params;
    let scale = [
        ddu,
        gamma / z * du,
        delta * du,
        eps * z * du,
        alpha * u,
        q / z * u,
        1.0,
    ]
    .iter()
    .fold(0.0f64, |m, t| m.max(t.abs()));
    Ok(raw / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let s = frobenius_series(BchParams::new(2.0, 0.0, 1.0, 0.0, 0.0), 5).unwrap();
        assert_eq!(&s.coeffs[..2], &[1.0, 0.0]);
        let s = frobenius_series(BchParams::new(2.0, 1.0, 1.0, 0.0, 3.0), 5).unwrap();
        assert_eq!(s.coeffs[1], 1.5);
        // a₂ from the z¹ balance: 2(1+γ)a₂ + (δ − q)a₁ + α = 0
        let p = BchParams::new(0.7, -1.2, 0.4, 2.5, 0.9);
        let s = frobenius_series(p, 5).unwrap();
        let a2 = -((p.delta - p.q) * s.coeffs[1] + p.alpha) / (2.0 * (1.0 + p.gamma));
        assert!((s.coeffs[2] - a2).abs() < 1e-15);
    }

    #[test]
    fn constant_solution() {
        let p = BchParams::new(1.3, 2.0, -1.0, 0.0, 0.0);
        let s = frobenius_series(p, 20).unwrap();
        assert!(s.coeffs[1..].iter().all(|&c| c == 0.0));
        assert_eq!(series_eval(&s, 7.3).unwrap(), (1.0, 0.0));
        assert_eq!(bch_residual(&p, 1.0, 0.0, 0.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn origin_values() {
        let p = BchParams::new(2.5, 1.0, -0.5, 0.3, 1.7);
        let s = frobenius_series(p, 40).unwrap();
        assert_eq!(series_eval(&s, 0.0).unwrap(), (1.0, 1.7 / 2.5));
    }

    #[test]
    fn indicial_and_singularity_errors() {
        let p = BchParams::new(-2.0, 1.0, 1.0, 1.0, 1.0);
        assert_eq!(frobenius_series(p, 10).unwrap_err(), Error::Indicial(-2.0));
        assert_eq!(bch_residual(&p, 1.0, 1.0, 1.0, 0.0).unwrap_err(), Error::Singularity);
    }

    #[test]
    fn series_solves_the_equation() {
        let p = BchParams::new(1.7, -0.8, -1.4, 0.6, 2.2);
        let v = frobenius_eval(p, 0.3).unwrap();
        let r = bch_residual(&p, v.u, v.du, v.ddu, 0.3).unwrap();
        assert!(r.abs() < 1e-12, "{r}");
    }

    #[test]
    fn perturbation_is_visible() {
        let p = BchParams::new(1.7, -0.8, -1.4, 0.6, 2.2);
        let z = 0.3;
        let v = frobenius_eval(p, z).unwrap();
        let raw = bch_residual_raw(&p, v.u + 0.1, v.du, v.ddu, z).unwrap();
        let expect = (p.alpha * z - p.q) / z * 0.1;
        assert!((raw - expect).abs() < 1e-10);
    }

    #[test]
    fn short_series_is_refused() {
        let p = BchParams::new(1.2, 2.0, -2.0, 1.0, 1.0);
        let s = frobenius_series(p, 6).unwrap();
        assert!(matches!(series_eval(&s, 1.9), Err(Error::Truncation { .. })));
    }
}
