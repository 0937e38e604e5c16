//! Expansion of bi-confluent Heun solutions in Hermite functions
//!
//! u(z) = Σ c_n H_{α₀+n}(s₀(z + z₀)),  α₀ = γ − α/ε,  s₀ = ±√(−ε/2),  z₀ = δ/ε,
//!
//! with the three-term recurrence R_n c_n + Q_{n−1} c_{n−1} + P_{n−2} c_{n−2} = 0.

mod qpoly;

pub use qpoly::{q_polynomial, q_roots, QPolynomial, QRoot, QRoots};

use serde::{Deserialize, Serialize};

use crate::bch::{bch_residual, BchParams};
use crate::error::{Error, Result};
use crate::specfun::{hermite_fn, HermiteOrder};

/// Branch of the scale s₀ = sign·√(−ε/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = Error;
    fn try_from(v: i32) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!("sign must be +1 or -1, got {v}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermiteExpansion {
    pub params: BchParams,
    pub alpha0: f64,
    pub s0: f64,
    pub z0: f64,
    pub sign: Sign,
    pub coeffs: Vec<f64>,
    /// Set when the coefficients beyond index N vanish.
    pub n_terminate: Option<usize>,
}

/// (R_n, Q_n, P_n) of the recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCoeffs {
    pub r: f64,
    pub q: f64,
    pub p: f64,
}

fn check_eps(params: &BchParams) -> Result<()> {
    if !params.is_finite() {
        return Err(Error::Domain("non-finite BCH parameter".into()));
    }
    if !(params.eps < 0.0) {
        return Err(Error::Domain(format!(
            "the Hermite expansion needs eps < 0 for a real argument, got eps = {}",
            params.eps
        )));
    }
    Ok(())
}

/// Base order α₀ = γ − α/ε fixed by R₀ = 0.
pub fn base_order(params: &BchParams) -> f64 {
    params.gamma - params.alpha / params.eps
}

/// R_n, Q_n and P_n at index n. For the minus branch the sign of Q_n flips.
pub fn recurrence_coeffs(params: &BchParams, alpha0: f64, n: i64, sign: Sign) -> Result<RecurrenceCoeffs> {
    check_eps(params)?;
    let BchParams { gamma, delta, eps, alpha, q } = *params;
    let an = alpha0 + n as f64;
    let r = (2.0 / -eps).sqrt() * an * (alpha + (an - gamma) * eps);
    let qn = -sign.value() * (alpha * delta + (q + an * delta) * eps) / eps;
    let p = (alpha + an * eps) / (-2.0 * eps).sqrt();
    Ok(RecurrenceCoeffs { r, q: qn, p })
}

/// Relative size below which R_n counts as zero.
const RESONANCE_TOL: f64 = 1e-12;

fn coeffs_from(params: &BchParams, alpha0: f64, sign: Sign, n_max: usize) -> Result<Vec<f64>> {
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(1.0);
    for n in 1..=n_max {
        let rn = recurrence_coeffs(params, alpha0, n as i64, sign)?;
        let an = alpha0 + n as f64;
        if an.abs() <= RESONANCE_TOL * alpha0.abs().max(1.0) || rn.r == 0.0 {
            return Err(Error::Resonance { n });
        }
        let q1 = recurrence_coeffs(params, alpha0, n as i64 - 1, sign)?.q;
        let mut acc = q1 * c[n - 1];
        if n >= 2 {
            acc += recurrence_coeffs(params, alpha0, n as i64 - 2, sign)?.p * c[n - 2];
        }
        c.push(-acc / rn.r);
    }
    Ok(c)
}

/// c₀ = 1, c₁ = −Q₀/R₁, c_n = −(Q_{n−1}c_{n−1} + P_{n−2}c_{n−2})/R_n up to n_max.
pub fn expansion_coeffs(params: BchParams, sign: Sign, n_max: usize) -> Result<HermiteExpansion> {
    check_eps(&params)?;
    let alpha0 = base_order(&params);
    expansion_with_base(params, alpha0, sign, n_max)
}

/// As [`expansion_coeffs`] with an explicit root α₀ of R₀ = 0. The root
/// α₀ = 0 (the polynomial branch) is recognised and refused.
pub fn expansion_with_base(params: BchParams, alpha0: f64, sign: Sign, n_max: usize) -> Result<HermiteExpansion> {
    check_eps(&params)?;
    if alpha0 == 0.0 {
        return Err(Error::PolynomialBranch);
    }
    let r0 = recurrence_coeffs(&params, alpha0, 0, sign)?.r;
    let scale = (2.0 / -params.eps).sqrt() * alpha0.abs() * (params.alpha.abs() + (alpha0.abs() + params.gamma.abs()) * -params.eps);
    if r0.abs() > 1e-10 * scale.max(1.0) {
        return Err(Error::Domain(format!("alpha0 = {alpha0} is not a root of R_0 = 0")));
    }
    let coeffs = coeffs_from(&params, alpha0, sign, n_max)?;
    let s0 = sign.value() * (-params.eps / 2.0).sqrt();
    Ok(HermiteExpansion { params, alpha0, s0, z0: params.delta / params.eps, sign, coeffs, n_terminate: None })
}

/// Tolerances of [`check_termination`].
pub const GAMMA_INT_TOL: f64 = 1e-10;
pub const TAIL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Termination {
    pub is_terminating: bool,
    pub n: Option<usize>,
    /// max(|c_{N+1}|, |c_{N+2}|) / max |c_{0..N}| when γ = −N.
    pub c_tail: Option<f64>,
}

/// Whether the series stops at n = N: γ = −N and c_{N+1} = c_{N+2} = 0.
pub fn check_termination(params: &BchParams, sign: Sign) -> Result<Termination> {
    check_eps(params)?;
    let nf = (-params.gamma).round();
    if nf < 0.0 || (params.gamma + nf).abs() > GAMMA_INT_TOL {
        return Ok(Termination { is_terminating: false, n: None, c_tail: None });
    }
    let n = nf as usize;
    let alpha0 = base_order(params);
    let c = match coeffs_from(params, alpha0, sign, n + 2) {
        Ok(c) => c,
        Err(Error::Resonance { .. }) => return Ok(Termination { is_terminating: false, n: None, c_tail: None }),
        Err(e) => return Err(e),
    };
    let head = c[..=n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail = c[n + 1].abs().max(c[n + 2].abs()) / head;
    let ok = tail <= TAIL_TOL;
    Ok(Termination { is_terminating: ok, n: ok.then_some(n), c_tail: Some(tail) })
}

/// The finite expansion when the series terminates; `None` otherwise.
pub fn terminated_expansion(params: BchParams, sign: Sign) -> Result<Option<HermiteExpansion>> {
    let t = check_termination(&params, sign)?;
    match t.n {
        Some(n) if t.is_terminating => {
            let mut e = expansion_coeffs(params, sign, n)?;
            e.n_terminate = Some(n);
            Ok(Some(e))
        }
        _ => Ok(None),
    }
}

/// u, u', u'' of a (finite) Hermite sum with an absolute error bound on u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumValue {
    pub u: f64,
    pub du: f64,
    pub ddu: f64,
    pub abs_err: f64,
}

impl HermiteExpansion {
    /// Argument s₀(z + z₀) of the Hermite functions.
    pub fn argument(&self, z: f64) -> f64 {
        self.s0 * (z + self.z0)
    }

    /// Sum over all stored coefficients.
    pub fn eval_full(&self, z: f64) -> Result<SumValue> {
        let w = self.argument(z);
        let nterms = self.coeffs.len();
        // H at orders α₀−1, α₀, …, α₀+N
        let mut h = Vec::with_capacity(nterms + 1);
        let mut err = Vec::with_capacity(nterms + 1);
        for k in 0..=nterms {
            let nu = self.alpha0 + k as f64 - 1.0;
            if k == 0 && self.alpha0 == 0.0 {
                h.push(0.0);
                err.push(0.0);
                continue;
            }
            let r = hermite_fn(HermiteOrder::new(nu), w)?;
            h.push(r.value);
            err.push(r.abs_err);
        }
        let (mut u, mut du, mut sum_au, mut abs_err) = (0.0, 0.0, 0.0, 0.0);
        for (n, &c) in self.coeffs.iter().enumerate() {
            let an = self.alpha0 + n as f64;
            u += c * h[n + 1];
            du += c * 2.0 * self.s0 * an * h[n];
            sum_au += c * an * h[n + 1];
            abs_err += (c * err[n + 1]).abs();
        }
        let eps = self.params.eps;
        let ddu = -eps * ((z + self.z0) * du - sum_au);
        Ok(SumValue { u, du, ddu, abs_err })
    }
}

/// (u, u') of the finite sum Σ_{n≤N} c_n H_{α₀+n}(s₀(z+z₀)).
pub fn finite_sum_eval(exp: &HermiteExpansion, z: f64) -> Result<(f64, f64)> {
    if exp.n_terminate.is_none() {
        return Err(Error::Domain("finite_sum_eval needs a terminated expansion; see truncation_study".into()));
    }
    let v = exp.eval_full(z)?;
    Ok((v.u, v.du))
}

/// Normalised residual of the equation for a finite sum at z.
pub fn sum_residual(exp: &HermiteExpansion, z: f64) -> Result<f64> {
    let v = exp.eval_full(z)?;
    bch_residual(&exp.params, v.u, v.du, v.ddu, z)
}

/// Residuals of the partial sums of a (possibly infinite) expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationStudy {
    /// (number of terms − 1, max |normalised residual| over the z points)
    pub rows: Vec<(usize, f64)>,
    pub monotone: bool,
}

/// Evaluate partial sums with 0..=n_max terms; flags whether the residual
/// decreases monotonically. Non-terminating series are an exploratory
/// feature: no convergence claim is attached.
pub fn truncation_study(params: BchParams, sign: Sign, z_points: &[f64], n_max: usize) -> Result<TruncationStudy> {
    let full = expansion_coeffs(params, sign, n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut part = full.clone();
        part.coeffs.truncate(n + 1);
        let mut worst = 0.0f64;
        for &z in z_points {
            worst = worst.max(sum_residual(&part, z)?.abs());
        }
        rows.push((n, worst));
    }
    let monotone = rows.windows(2).all(|w| w[1].1 <= w[0].1);
    Ok(TruncationStudy { rows, monotone })
}
