use super::dd::{Dd, DD_EPS};
use super::EvalResult;
use crate::error::{Error, Result};

/// Largest |x| accepted by the direct series.
pub const KUMMER_X_MAX: f64 = 130.0;
pub const KUMMER_MAX_TERMS: usize = 5000;
/// Ratio of the largest term to the result above which the double-precision
/// sum is redone in double-double.
pub const CANCELLATION_GUARD: f64 = 1e8;
/// Relative error a double-double retry must certify.
pub const EXTENDED_RTOL: f64 = 1e-13;

const U: f64 = f64::EPSILON / 2.0;

fn is_nonpositive_int(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Summed series with bookkeeping for the error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum<T> {
    pub sum: T,
    /// Σ (c k + d) |t_k|, the rounding-error weight of the terms
    pub weighted: f64,
    pub largest: f64,
    pub tail: f64,
    /// Σ |∂t_k/∂a|, the sensitivity to a perturbation of `a`
    pub da_weight: f64,
}

/// Uniform bound on the term ratio for all indices ≥ k, or None while the
/// ratio can still exceed one.
fn ratio_bound(a: f64, b: f64, x: f64, k: usize) -> Option<f64> {
    let bk = b + k as f64;
    if bk <= 0.0 {
        return None;
    }
    let r = (1.0 + (a - b).abs() / bk) * x.abs() / (k as f64 + 1.0);
    (r < 1.0).then_some(r)
}

pub(crate) fn series_f64(a: f64, b: f64, x: f64) -> Result<SeriesSum<f64>> {
    let terminating = is_nonpositive_int(a);
    let mut psi = 0.0f64;
    let mut da_weight = 0.0f64;
    let n_stop = if terminating { (-a) as usize } else { KUMMER_MAX_TERMS };
    let mut t = 1.0f64;
    let mut s = 1.0f64;
    let mut comp = 0.0f64;
    let mut weighted = 4.0;
    let mut largest = 1.0f64;
    let mut k = 0usize;
    loop {
        if k >= n_stop {
            return Ok(SeriesSum { sum: s + comp, weighted, largest, tail: 0.0, da_weight });
        }
        let kf = k as f64;
        t *= (a + kf) / (b + kf) * x / (kf + 1.0);
        psi += 1.0 / (a + kf).abs();
        da_weight += t.abs() * psi;
        k += 1;
        // Neumaier summation
        let ns = s + t;
        if s.abs() >= t.abs() {
            comp += (s - ns) + t;
        } else {
            comp += (t - ns) + s;
        }
        s = ns;
        let at = t.abs();
        largest = largest.max(at);
        weighted += (6.0 * k as f64 + 4.0) * at;
        if !terminating && k > 1 {
            if let Some(r) = ratio_bound(a, b, x, k) {
                let tail = at * r / (1.0 - r);
                if tail <= 1e-3 * U * (s + comp).abs() || tail == 0.0 {
                    return Ok(SeriesSum { sum: s + comp, weighted, largest, tail, da_weight });
                }
            }
        }
        if !t.is_finite() {
            return Err(Error::NonConvergence(format!("Kummer series overflow at a={a}, b={b}, x={x}")));
        }
        if k >= KUMMER_MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "Kummer series not converged after {KUMMER_MAX_TERMS} terms at a={a}, b={b}, x={x}"
            )));
        }
    }
}

pub(crate) fn series_dd(ad: Dd, b: f64, xd: Dd) -> Result<SeriesSum<Dd>> {
    let a = ad.to_f64();
    let terminating = ad.is_integer() && a <= 0.0;
    let n_stop = if terminating { (-a) as usize } else { KUMMER_MAX_TERMS };
    let x = xd.to_f64();
    let mut t = Dd::ONE;
    let mut s = Dd::ONE;
    let mut weighted = 16.0;
    let mut largest = 1.0f64;
    let mut k = 0usize;
    loop {
        if k >= n_stop {
            return Ok(SeriesSum { sum: s, weighted, largest, tail: 0.0, da_weight: 0.0 });
        }
        let kf = k as f64;
        let num = ad.add_f64(kf) * xd;
        let den = Dd::from_f64(b).add_f64(kf).mul_f64(kf + 1.0);
        t = t * num / den;
        k += 1;
        s = s + t;
        let at = t.hi.abs();
        largest = largest.max(at);
        weighted += (16.0 * k as f64 + 16.0) * at;
        if !terminating && k > 1 {
            if let Some(r) = ratio_bound(a, b, x, k) {
                let tail = at * r / (1.0 - r);
                if tail <= 1e-3 * DD_EPS * s.hi.abs() || tail == 0.0 {
                    return Ok(SeriesSum { sum: s, weighted, largest, tail, da_weight: 0.0 });
                }
            }
        }
        if !t.is_finite() {
            return Err(Error::NonConvergence(format!("Kummer series overflow at a={a}, b={b}, x={x}")));
        }
        if k >= KUMMER_MAX_TERMS {
            return Err(Error::NonConvergence(format!(
                "Kummer series not converged after {KUMMER_MAX_TERMS} terms at a={a}, b={b}, x={x}"
            )));
        }
    }
}

impl SeriesSum<f64> {
    pub(crate) fn abs_err(&self) -> f64 {
        U * self.weighted + 2.0 * U * self.sum.abs() + self.tail
    }
}

impl SeriesSum<Dd> {
    pub(crate) fn abs_err(&self) -> f64 {
        DD_EPS * self.weighted + 2.0 * DD_EPS * self.sum.hi.abs() + self.tail
    }
}

pub(crate) fn check_args(a: f64, b: f64, x: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!("non-finite Kummer argument ({a}, {b}, {x})")));
    }
    if is_nonpositive_int(b) {
        return Err(Error::Domain(format!("Kummer M undefined for b = {b}")));
    }
    if x.abs() > KUMMER_X_MAX {
        return Err(Error::Range(format!("|x| = {} exceeds {KUMMER_X_MAX}", x.abs())));
    }
    Ok(())
}

/// Confluent hypergeometric function M(a, b, x) = 1F1(a; b; x).
///
/// Direct series for |x| ≤ 130. Negative x goes through Kummer's
/// transformation M(a,b,x) = eˣ M(b−a,b,−x) unless the series terminates.
/// A sum whose largest term dwarfs the result is redone in double-double.
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<EvalResult> {
    check_args(a, b, x)?;
    let (aa, xx, pref) = if x < 0.0 && !is_nonpositive_int(a) {
        (b - a, -x, x.exp())
    } else {
        (a, x, 1.0)
    };
    let s = series_f64(aa, b, xx)?;
    let value = pref * s.sum;
    let da = if pref == 1.0 { 0.0 } else { (Dd::from_f64(b) - Dd::from_f64(a) - Dd::from_f64(aa)).to_f64().abs() };
    let abs_err = pref * (s.abs_err() + da * s.da_weight) + 2.0 * U * value.abs();
    if s.largest <= CANCELLATION_GUARD * s.sum.abs() && value.is_finite() {
        return Ok(EvalResult { value, abs_err });
    }
    let ad = if pref == 1.0 { Dd::from_f64(a) } else { Dd::from_f64(b) - Dd::from_f64(a) };
    let sd = series_dd(ad, b, Dd::from_f64(xx))?;
    let pref_dd = if pref == 1.0 { Dd::ONE } else { Dd::from_f64(x).exp() };
    let v = (pref_dd * sd.sum).to_f64();
    let err = pref * sd.abs_err() + pref * sd.sum.hi.abs() * 1e-30 + U * v.abs();
    if !v.is_finite() {
        return Err(Error::PrecisionLoss(format!("M({a}, {b}, {x}) overflows")));
    }
    if err > EXTENDED_RTOL * v.abs() {
        return Err(Error::PrecisionLoss(format!(
            "M({a}, {b}, {x}): cancellation leaves relative error {:e}",
            err / v.abs()
        )));
    }
    Ok(EvalResult { value: v, abs_err: err })
}
