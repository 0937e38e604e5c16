//! Accessory-parameter polynomials for γ = −N and their roots.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{recurrence_coeffs, Sign};
use crate::bch::BchParams;
use crate::error::{Error, Result};

/// Monic polynomial in q; `coeffs[k]` multiplies q^k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QPolynomial {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl QPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * q + c)
    }

    fn eval_c(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }
}

fn poly_mul_linear(p: &[f64], c0: f64, c1: f64) -> Vec<f64> {
    // (c0 + c1 q)·p(q)
    let mut out = vec![0.0; p.len() + 1];
    for (k, &v) in p.iter().enumerate() {
        out[k] += c0 * v;
        out[k + 1] += c1 * v;
    }
    out
}

fn poly_axpy(acc: &mut Vec<f64>, a: f64, p: &[f64]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (k, &v) in p.iter().enumerate() {
        acc[k] += a * v;
    }
}

/// The degree-(N+1) polynomial whose roots make the expansion stop at n = N
/// for γ = −N. Built from the recurrence scaled by R₁⋯R_n, so that
/// ĉ_n = −(Q_{n−1} ĉ_{n−1} + P_{n−2} R_{n−1} ĉ_{n−2}) is a polynomial in q.
pub fn q_polynomial(n: usize, delta: f64, eps: f64, alpha: f64) -> Result<QPolynomial> {
    if !(delta.is_finite() && eps.is_finite() && alpha.is_finite()) {
        return Err(Error::Domain("non-finite BCH parameter".into()));
    }
    let base = BchParams::new(-(n as f64), delta, eps, alpha, 0.0);
    let alpha0 = base.gamma - alpha / eps;
    // Q_k(q) = Q_k(0) + dq·q
    let dq = -1.0;
    let mut prev: Vec<f64> = vec![];
    let mut cur: Vec<f64> = vec![1.0];
    for k in 1..=n + 1 {
        let q0 = recurrence_coeffs(&base, alpha0, k as i64 - 1, Sign::Plus)?.q;
        let mut next = poly_mul_linear(&cur, -q0, -dq);
        if k >= 2 {
            let pr = recurrence_coeffs(&base, alpha0, k as i64 - 2, Sign::Plus)?.p
                * recurrence_coeffs(&base, alpha0, k as i64 - 1, Sign::Plus)?.r;
            poly_axpy(&mut next, -pr, &prev);
        }
        prev = cur;
        cur = next;
    }
    let lead = *cur.last().unwrap();
    let coeffs = cur.iter().map(|c| c / lead).collect();
    Ok(QPolynomial { n, coeffs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QRoot {
    pub q: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QRoots {
    /// Real roots in increasing order.
    pub real: Vec<QRoot>,
    /// Roots with a significant imaginary part; not admissible for real q.
    pub complex: Vec<Complex64>,
}

const ABERTH_MAX_ITER: usize = 500;
const CLUSTER_TOL: f64 = 1e-6;
const IMAG_TOL: f64 = 1e-8;

/// Simultaneous Aberth–Ehrlich iteration on all roots.
fn aberth(p: &QPolynomial) -> Result<Vec<Complex64>> {
    let d = p.degree();
    if d == 0 {
        return Ok(vec![]);
    }
    // Cauchy bound on the root moduli
    let bound = 1.0 + p.coeffs[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..ABERTH_MAX_ITER {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (pv, dp) = p.eval_c(z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            moved = moved.max(w.norm() / z[k].norm().max(1.0));
        }
        if moved <= 4.0 * f64::EPSILON {
            return Ok(z);
        }
    }
    // clustered roots converge slowly; accept if the residuals are small
    let scale: f64 = p.coeffs.iter().map(|c| c.abs()).sum();
    if z.iter().all(|&r| p.eval_c(r).0.norm() <= 1e-10 * scale * r.norm().max(1.0).powi(d as i32)) {
        return Ok(z);
    }
    Err(Error::NonConvergence(format!("Aberth iteration on a degree-{d} polynomial")))
}

/// Roots of a q-polynomial. Nearby approximations are merged into one root
/// of higher multiplicity (their mean is far more accurate than each one).
pub fn q_roots(p: &QPolynomial) -> Result<QRoots> {
    let z = aberth(p)?;
    let mut used = vec![false; z.len()];
    let mut clusters: Vec<(Complex64, usize)> = vec![];
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        let tol = CLUSTER_TOL * z[i].norm().max(1.0);
        let members: Vec<usize> = (i..z.len()).filter(|&j| !used[j] && (z[j] - z[i]).norm() <= tol).collect();
        let mean = members.iter().map(|&j| z[j]).sum::<Complex64>() / members.len() as f64;
        for &j in &members {
            used[j] = true;
        }
        clusters.push((mean, members.len()));
    }
    let mut real = vec![];
    let mut complex = vec![];
    for (c, m) in clusters {
        if c.im.abs() <= IMAG_TOL * c.re.abs().max(1.0) {
            real.push(QRoot { q: polish(p, c.re, m), multiplicity: m });
        } else {
            complex.extend(std::iter::repeat_n(c, m));
        }
    }
    real.sort_by(|a, b| a.q.total_cmp(&b.q));
    complex.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(QRoots { real, complex })
}

/// A couple of Newton steps for simple real roots.
fn polish(p: &QPolynomial, mut q: f64, multiplicity: usize) -> f64 {
    if multiplicity > 1 {
        return q;
    }
    for _ in 0..3 {
        let (v, d) = p.eval_c(Complex64::new(q, 0.0));
        if d.re == 0.0 {
            break;
        }
        let step = v.re / d.re;
        if !step.is_finite() {
            break;
        }
        q -= step;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12 * y.abs().max(1.0))
    }

    #[test]
    fn low_order_polynomials() {
        let (d, e, a) = (1.3, -0.7, 0.45);
        assert_eq!(q_polynomial(0, d, e, a).unwrap().coeffs, vec![0.0, 1.0]);
        assert!(close(&q_polynomial(1, d, e, a).unwrap().coeffs, &[a, -d, 1.0]));
        let p2 = q_polynomial(2, d, e, a).unwrap();
        let want = [-4.0 * a * d, 2.0 * (d * d + e + 2.0 * a), -3.0 * d, 1.0];
        assert!(close(&p2.coeffs, &want), "{:?}", p2.coeffs);
        let p3 = q_polynomial(3, d, e, a).unwrap();
        let want = [
            9.0 * a * (2.0 * d * d + 2.0 * e + a),
            -6.0 * d * (d * d + 3.0 * e + 5.0 * a),
            11.0 * d * d + 10.0 * e + 10.0 * a,
            -6.0 * d,
            1.0,
        ];
        assert!(close(&p3.coeffs, &want), "{:?}", p3.coeffs);
    }

    #[test]
    fn roots_of_small_cases() {
        let p = q_polynomial(0, 1.0, -1.0, 0.3).unwrap();
        let r = q_roots(&p).unwrap();
        assert_eq!(r.real.len(), 1);
        assert!(r.real[0].q.abs() < 1e-15);
        // q² − 2q + 1: a double root
        let p = q_polynomial(1, 2.0, -1.0, 1.0).unwrap();
        let r = q_roots(&p).unwrap();
        assert_eq!(r.real.len(), 1);
        assert_eq!(r.real[0].multiplicity, 2);
        assert!((r.real[0].q - 1.0).abs() < 1e-10);
        // q² + 1: complex pair
        let p = q_polynomial(1, 0.0, -1.0, 1.0).unwrap();
        let r = q_roots(&p).unwrap();
        assert!(r.real.is_empty());
        assert_eq!(r.complex.len(), 2);
    }
}
