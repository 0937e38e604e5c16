//! Hermite functions H_ν(w) of real order.
//!
//! The defining representation is the two-term Kummer formula
//!
//! H_ν(w) = 2^ν √π [ M(−ν/2, 1/2, w²)/Γ((1−ν)/2) − 2w M((1−ν)/2, 3/2, w²)/Γ(−ν/2) ].
//!
//! Evaluation tries, in order: the polynomial recurrence (ν ∈ ℕ₀), the Kummer
//! formula in double precision, the integral
//! H_ν(w) = Γ(−ν)⁻¹ ∫₀^∞ e^{−t²−2wt} t^{−ν−1} dt (ν < 0) followed by the upward
//! order recurrence for w > 0, and the Kummer formula in double-double.

use super::dd::{rgamma_dd, Dd};
use super::gamma::rgamma;
use super::kummer::{check_args, series_dd, series_f64, CANCELLATION_GUARD};
use super::{EvalResult, HermiteOrder};
use crate::error::{Error, Result};

pub const NU_MIN: f64 = -40.0;
pub const NU_MAX: f64 = 60.0;
/// |w|² bound of the validated envelope.
pub const W2_MAX: f64 = 130.0;
/// Relative error every accepted evaluation must certify.
pub const HERMITE_RTOL: f64 = 1e-13;

const U: f64 = f64::EPSILON / 2.0;
const SQRT_PI: f64 = 1.772453850905516;
const SQRT_PI_DD: Dd = Dd::new(1.772453850905516, -7.666586499825799e-17);
const LN2_DD: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);

/// Which evaluation path produced a value; exposed for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Polynomial,
    Kummer,
    Integral,
    KummerExtended,
}

fn check_envelope(nu: f64, w: f64, nu_lo: f64) -> Result<()> {
    if !nu.is_finite() || !w.is_finite() {
        return Err(Error::Domain(format!("non-finite Hermite argument (nu={nu}, w={w})")));
    }
    if nu < nu_lo || nu > NU_MAX || w * w > W2_MAX {
        return Err(Error::Range(format!(
            "(nu={nu}, w={w}) outside nu in [{NU_MIN}, {NU_MAX}], w^2 <= {W2_MAX}"
        )));
    }
    Ok(())
}

/// Hermite polynomial H_n(w) by the three-term recurrence.
pub fn hermite_poly(n: usize, w: f64) -> f64 {
    poly_with_err(n, w).value
}

fn poly_with_err(n: usize, w: f64) -> EvalResult {
    let (mut h0, mut h1) = (1.0f64, 2.0 * w);
    let (mut e0, mut e1) = (0.0f64, U * h1.abs());
    if n == 0 {
        return EvalResult { value: 1.0, abs_err: 0.0 };
    }
    for k in 1..n {
        let kf = k as f64;
        let a = 2.0 * w * h1;
        let b = 2.0 * kf * h0;
        let h2 = a - b;
        let e2 = 2.0 * w.abs() * e1 + 2.0 * kf * e0 + 2.0 * U * (a.abs() + b.abs());
        h0 = h1;
        h1 = h2;
        e0 = e1;
        e1 = e2;
    }
    EvalResult { value: h1, abs_err: e1 }
}

fn certified(r: &EvalResult, scale: f64) -> bool {
    r.value.is_finite() && r.abs_err <= HERMITE_RTOL * r.value.abs().max(1e-12 * scale)
}

/// Double-precision Kummer formula. Returns the value and the magnitude of
/// the larger of the two terms.
fn kummer_f64(nu: f64, w: f64) -> Result<(EvalResult, f64)> {
    let x = w * w;
    check_args(0.0, 0.5, x)?;
    // (1−ν)/2 is rounded in f64; its exact value feeds Γ and the error term
    let half_1mnu = (Dd::ONE - Dd::from_f64(nu)).mul_f64(0.5);
    let a2 = half_1mnu.to_f64();
    let da2 = (half_1mnu - Dd::from_f64(a2)).to_f64().abs();
    let pre = (nu * std::f64::consts::LN_2).exp() * SQRT_PI;
    let g1 = rgamma_dd(half_1mnu).to_f64();
    let g2 = rgamma(-0.5 * nu);
    let (mut a, mut ea) = (0.0, 0.0);
    if g1 != 0.0 {
        let m1 = series_f64(-0.5 * nu, 0.5, x)?;
        a = pre * g1 * m1.sum;
        ea = (pre * g1).abs() * m1.abs_err();
    }
    let (mut b, mut eb) = (0.0, 0.0);
    if g2 != 0.0 && w != 0.0 {
        let m2 = series_f64(a2, 1.5, x)?;
        b = pre * g2 * 2.0 * w * m2.sum;
        eb = (pre * g2 * 2.0 * w).abs() * (m2.abs_err() + da2 * m2.da_weight);
    }
    let h = a - b;
    // 2^ν via exp(ν ln 2) carries about |ν ln 2| ulps
    let err = ea + eb + (8.0 + nu.abs()) * U * (a.abs() + b.abs()) + U * h.abs();
    Ok((EvalResult { value: h, abs_err: err }, a.abs().max(b.abs())))
}

/// Double-double Kummer formula.
fn kummer_dd(nu: f64, w: f64) -> Result<(EvalResult, f64)> {
    let wd = Dd::from_f64(w);
    let xd = wd * wd;
    let half_1mnu = (Dd::ONE - Dd::from_f64(nu)).mul_f64(0.5);
    let half_mnu = Dd::from_f64(-0.5 * nu);
    let pre = (LN2_DD.mul_f64(nu)).exp() * SQRT_PI_DD;
    let g1 = rgamma_dd(half_1mnu);
    let g2 = rgamma_dd(half_mnu);
    let (mut a, mut ea) = (Dd::ZERO, 0.0);
    if g1.hi != 0.0 {
        let s = series_dd(half_mnu, 0.5, xd)?;
        a = pre * g1 * s.sum;
        ea = (pre.hi * g1.hi).abs() * s.abs_err();
    }
    let (mut b, mut eb) = (Dd::ZERO, 0.0);
    if g2.hi != 0.0 && w != 0.0 {
        let s = series_dd(half_1mnu, 1.5, xd)?;
        b = pre * g2 * wd.mul_f64(2.0) * s.sum;
        eb = (pre.hi * g2.hi * 2.0 * w).abs() * s.abs_err();
    }
    let h = a - b;
    let v = h.to_f64();
    let scale = a.hi.abs().max(b.hi.abs());
    let err = ea + eb + 1e-30 * scale + U * v.abs();
    Ok((EvalResult { value: v, abs_err: err }, scale))
}

/// ∫₀^∞ t^m e^{−t²−2wt} dt / Γ(m+1) = H_{−m−1}(w), m > 0, by exp-sinh
/// quadrature centred on the peak of the integrand.
fn integral_rep(nu: f64, w: f64) -> Result<EvalResult> {
    let m = -nu - 1.0;
    debug_assert!(m > 0.0);
    let tstar = 0.5 * (-w + (w * w + 2.0 * m).sqrt());
    let c = tstar.max(1.0 / (2.0 * w.abs() + 2.0));
    let g = |t: f64| m * t.ln() - t * t - 2.0 * w * t;
    let gpeak = g(tstar);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let term = |tau: f64| -> f64 {
        let e = half_pi * tau.sinh();
        let t = c * e.exp();
        if t == 0.0 || !t.is_finite() {
            return 0.0;
        }
        let lg = g(t) - gpeak;
        if lg < -745.0 {
            return 0.0;
        }
        lg.exp() * t * half_pi * tau.cosh()
    };
    let tau_max = 5.0;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut j = 1;
    while (j as f64) * h <= tau_max {
        let tau = j as f64 * h;
        sum += term(tau) + term(-tau);
        j += 1;
    }
    let mut prev = sum * h;
    for _level in 0..8 {
        h *= 0.5;
        let mut add = 0.0;
        let mut j = 1;
        while (j as f64) * h <= tau_max {
            let tau = j as f64 * h;
            add += term(tau) + term(-tau);
            j += 2;
        }
        sum += add;
        let cur = sum * h;
        let diff = (cur - prev).abs();
        if diff <= 1e-15 * cur {
            // exp(gpeak) / Γ(m+1) applied in log space to dodge overflow
            let lg = super::gamma::log_gamma(m + 1.0)?.0;
            let scale = (gpeak - lg).exp();
            let value = cur * scale;
            let exponent_mag = (m * tstar.ln()).abs() + tstar * tstar + 2.0 * (w * tstar).abs() + lg.abs();
            let rel = diff / cur + 8.0 * U + 2.0 * U * exponent_mag;
            return Ok(EvalResult { value, abs_err: rel * value.abs() });
        }
        prev = cur;
    }
    Err(Error::Quadrature(format!("exp-sinh rule did not settle for nu={nu}, w={w}")))
}

/// Integral start at orders ν₀ ∈ [−3, −2) and ν₀+1, then upward recurrence.
fn integral_recurrence(nu: f64, w: f64) -> Result<EvalResult> {
    if nu < -2.0 {
        return integral_rep(nu, w);
    }
    let nu0 = nu - nu.floor() - 3.0;
    let steps = (nu - nu0).round() as usize;
    let r0 = integral_rep(nu0, w)?;
    let r1 = integral_rep(nu0 + 1.0, w)?;
    let (mut h0, mut h1) = (r0.value, r1.value);
    let (mut e0, mut e1) = (r0.abs_err, r1.abs_err);
    for k in 1..steps {
        let v = nu0 + k as f64;
        let a = 2.0 * w * h1;
        let b = 2.0 * v * h0;
        let h2 = a - b;
        let e2 = 2.0 * w.abs() * e1 + 2.0 * v.abs() * e0 + 2.0 * U * (a.abs() + b.abs());
        h0 = h1;
        h1 = h2;
        e0 = e1;
        e1 = e2;
    }
    Ok(EvalResult { value: h1, abs_err: e1 })
}

/// Evaluate H_ν(w) and report which path delivered the value.
pub fn hermite_fn_with_method(nu: HermiteOrder, w: f64) -> Result<(EvalResult, Method)> {
    check_envelope(nu.nu, w, NU_MIN)?;
    eval(nu.nu, w)
}

fn eval(nu: f64, w: f64) -> Result<(EvalResult, Method)> {
    if nu >= 0.0 && nu.fract() == 0.0 {
        return Ok((poly_with_err(nu as usize, w), Method::Polynomial));
    }
    let mut scale = 0.0f64;
    if let Ok((r, big)) = kummer_f64(nu, w) {
        scale = big;
        if certified(&r, big) && big <= CANCELLATION_GUARD * r.value.abs() {
            return Ok((r, Method::Kummer));
        }
    }
    if w > 0.0 || nu < -2.0 {
        if let Ok(r) = integral_recurrence(nu, w) {
            if certified(&r, scale.max(r.value.abs())) {
                return Ok((r, Method::Integral));
            }
        }
    }
    let (r, big) = kummer_dd(nu, w)?;
    if certified(&r, big) {
        return Ok((r, Method::KummerExtended));
    }
    Err(Error::PrecisionLoss(format!(
        "H_{nu}({w}): estimated relative error {:e} after extended-precision retry",
        r.abs_err / r.value.abs()
    )))
}

/// H_ν(w) with an absolute error estimate.
pub fn hermite_fn(nu: HermiteOrder, w: f64) -> Result<EvalResult> {
    hermite_fn_with_method(nu, w).map(|(r, _)| r)
}

/// dH_ν/dw = 2ν H_{ν−1}(w).
pub fn hermite_deriv(nu: HermiteOrder, w: f64) -> Result<EvalResult> {
    check_envelope(nu.nu, w, NU_MIN)?;
    if nu.nu == 0.0 {
        return Ok(EvalResult { value: 0.0, abs_err: 0.0 });
    }
    let (h, _) = eval(nu.nu - 1.0, w)?;
    let f = 2.0 * nu.nu;
    Ok(EvalResult { value: f * h.value, abs_err: (f * h.abs_err).abs() + U * (f * h.value).abs() })
}

/// H_{ν+1}(w) = 2w H_ν(w) − 2ν H_{ν−1}(w).
pub fn hermite_raise(nu: HermiteOrder, w: f64, h_nu_minus_1: f64, h_nu: f64) -> f64 {
    2.0 * w * h_nu - 2.0 * nu.nu * h_nu_minus_1
}
