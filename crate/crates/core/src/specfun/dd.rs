//! Double-double arithmetic (about 106 significant bits).
//!
//! Only what the extended-precision Kummer and reciprocal-Gamma paths need:
//! the four field operations, `exp`, `ln`, `sin(pi x)` and Gamma via a
//! shifted Stirling series. Algorithms follow the usual QD-library recipes.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const DD_EPS: f64 = 4.93038065763132e-32; // 2^-104

pub(crate) const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd::new(0.0, 0.0);
    pub const ONE: Dd = Dd::new(1.0, 0.0);

    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// Nearest integer (ties away from zero).
    pub fn round(self) -> Self {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else {
            if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
                // exact tie in hi broken by the sign of lo
                let hi = if (self.lo > 0.0) == (hi > self.hi) { hi } else { hi - (hi - self.hi).signum() };
                return Dd { hi, lo: 0.0 };
            }
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn is_integer(self) -> bool {
        self.hi.fract() == 0.0 && self.lo.fract() == 0.0
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        // Taylor series of exp(r) - 1 for |r| < 2^-10 * ln2 / 2
        let mut term = r;
        let mut sum = r;
        for n in 2..=14 {
            term = (term * r) / Dd::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        // undo the 2^-10 scaling: (1+s)^2 - 1 = 2s + s^2
        for _ in 0..10 {
            sum = sum.mul_f64(2.0) + sum.sqr();
        }
        (sum + Dd::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// sin(pi x), exactly zero at integers.
    pub fn sin_pi(self) -> Self {
        if self.is_integer() {
            return Dd::ZERO;
        }
        // reduce to r in [-1, 1] with sin(pi x) = sin(pi r)
        let two = Dd::from_f64(2.0);
        let n = (self / two).round();
        let mut r = self - n * two;
        // fold to [-1/2, 1/2]: sin(pi r) = sin(pi (1 - r))
        if r.hi > 0.5 {
            r = Dd::ONE - r;
        } else if r.hi < -0.5 {
            r = -Dd::ONE - r;
        }
        if r.hi.abs() <= 0.25 {
            sin_taylor(PI * r)
        } else {
            // sin(pi r) = sign(r) cos(pi (1/2 - |r|))
            let s = r.hi.signum();
            let t = Dd::from_f64(0.5) - r.abs();
            cos_taylor(PI * t).mul_f64(s)
        }
    }
}

fn sin_taylor(t: Dd) -> Dd {
    let t2 = t.sqr();
    let mut term = t;
    let mut sum = t;
    let mut k = 1.0;
    loop {
        term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
        sum = sum + term;
        k += 2.0;
        if term.hi.abs() < 1e-33 * sum.hi.abs().max(1e-300) || k > 60.0 {
            break;
        }
    }
    sum
}

fn cos_taylor(t: Dd) -> Dd {
    let t2 = t.sqr();
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 0.0;
    loop {
        term = -(term * t2) / Dd::from_f64((k + 1.0) * (k + 2.0));
        sum = sum + term;
        k += 2.0;
        if term.hi.abs() < 1e-33 || k > 60.0 {
            break;
        }
    }
    sum
}

// B_{2k} / (2k (2k - 1)) as exact integer ratios
const STIRLING: [(f64, f64); 14] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
    (77683.0, 5796.0),
    (-236364091.0, 1506960.0),
    (657931.0, 300.0),
    (-3392780147.0, 93960.0),
];

pub(crate) fn ln_gamma_stirling(z: Dd) -> Dd {
    let lnz = z.ln();
    let mut sum = (z - Dd::from_f64(0.5)) * lnz - z + HALF_LN_2PI;
    let inv = Dd::ONE / z;
    let inv2 = inv.sqr();
    let mut pow = inv;
    for &(num, den) in STIRLING.iter() {
        sum = sum + Dd::from_f64(num) / Dd::from_f64(den) * pow;
        pow = pow * inv2;
    }
    sum
}

/// Gamma(x) for x >= 1/2.
pub(crate) fn gamma_pos(x: Dd) -> Dd {
    let mut z = x;
    let mut prod = Dd::ONE;
    while z.hi < 26.0 {
        prod = prod * z;
        z = z.add_f64(1.0);
    }
    ln_gamma_stirling(z).exp() / prod
}

/// 1/Gamma(x) in double-double; exactly zero at the poles.
pub fn rgamma_dd(x: Dd) -> Dd {
    if x.hi <= 0.0 && x.is_integer() {
        return Dd::ZERO;
    }
    if x.hi < 0.5 {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        x.sin_pi() * gamma_pos(Dd::ONE - x) / PI
    } else {
        Dd::ONE / gamma_pos(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd::new(q1, q2).add_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}
