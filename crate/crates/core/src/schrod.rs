//! Reduction of ψ″ + (2m/ħ²)(E − V(x))ψ = 0 to the bi-confluent Heun
//! equation for the five potential classes with ρ = dz/dx = z^{m₁}/σ.
//!
//! ψ = z^{α₀} e^{α₁z + α₂z²} u(z), where u solves the Heun equation with
//! γ = 2α₀ + m₁, δ = 2α₁, ε = 4α₂.

use serde::{Deserialize, Serialize};

use crate::bch::{frobenius_eval, BchParams};
use crate::error::{Error, Result};
use crate::expansion::{terminated_expansion, Sign};

/// Exponent m₁ of the coordinate map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum M1 {
    MinusOne,
    MinusHalf,
    Zero,
    Half,
    One,
}

impl M1 {
    pub const ALL: [M1; 5] = [M1::MinusOne, M1::MinusHalf, M1::Zero, M1::Half, M1::One];

    pub fn value(self) -> f64 {
        match self {
            M1::MinusOne => -1.0,
            M1::MinusHalf => -0.5,
            M1::Zero => 0.0,
            M1::Half => 0.5,
            M1::One => 1.0,
        }
    }

    /// Power of z carried by V'ᵢ in the z-representation.
    fn powers(self) -> [i32; 5] {
        match self {
            M1::MinusOne => [0, -1, -2, -3, -4],
            M1::MinusHalf => [0, 1, -1, -2, -3],
            M1::Zero => [0, 1, 2, -1, -2],
            M1::Half => [0, 1, 2, 3, -1],
            M1::One => [0, 1, 2, 3, 4],
        }
    }

    /// Index 2 − 2m₁ of the only nonzero rᵢ.
    fn r_index(self) -> usize {
        (2.0 - 2.0 * self.value()) as usize
    }
}

impl TryFrom<f64> for M1 {
    type Error = Error;
    fn try_from(v: f64) -> Result<M1> {
        M1::ALL
            .into_iter()
            .find(|m| m.value() == v)
            .ok_or_else(|| Error::Domain(format!("m1 must be one of -1, -1/2, 0, 1/2, 1; got {v}")))
    }
}

/// A potential in the z-representation V(z) = Σ V'ᵢ z^{pᵢ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialClass {
    pub m1: M1,
    pub coeffs: [f64; 5],
    pub sigma: f64,
    pub x0: f64,
}

impl PotentialClass {
    pub fn new(m1: M1, coeffs: [f64; 5]) -> Self {
        PotentialClass { m1, coeffs, sigma: 1.0, x0: 0.0 }
    }

    /// Build from the coefficients Vᵢ of the x-representation, e.g. for
    /// m₁ = −1/2: V₀ + V₁X^{2/3} + V₂X^{−2/3} + V₃X^{−4/3} + V₄X^{−2}, X = (x − x₀)/σ.
    pub fn from_x_representation(m1: M1, v: [f64; 5], sigma: f64, x0: f64) -> Self {
        let f: [f64; 5] = match m1 {
            M1::MinusOne => [1.0, 2f64.sqrt(), 2.0, 2.0 * 2f64.sqrt(), 4.0],
            M1::MinusHalf => {
                let c = 1.5f64.powf(2.0 / 3.0);
                [1.0, 1.0 / c, c, c * c, 2.25]
            }
            M1::Zero | M1::One => [1.0; 5],
            M1::Half => [1.0, 4.0, 16.0, 64.0, 0.25],
        };
        let mut coeffs = [0.0; 5];
        for i in 0..5 {
            coeffs[i] = f[i] * v[i];
        }
        PotentialClass { m1, coeffs, sigma, x0 }
    }

    fn validate(&self) -> Result<()> {
        if self.sigma == 0.0 || !self.sigma.is_finite() || !self.x0.is_finite() || self.coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("potential class needs finite coefficients and sigma != 0".into()));
        }
        Ok(())
    }

    pub fn potential_z(&self, z: f64) -> f64 {
        self.coeffs.iter().zip(self.m1.powers()).map(|(c, p)| c * z.powi(p)).sum()
    }

    pub fn potential_x(&self, x: f64) -> Result<f64> {
        Ok(self.potential_z(coordinate_map(self, x)?))
    }

    /// ρ = dz/dx = z^{m₁}/σ.
    pub fn rho(&self, z: f64) -> f64 {
        z.powf(self.m1.value()) / self.sigma
    }
}

/// Coefficients of z²/ρ² = Σ rᵢzⁱ and V z²/ρ² = Σ vᵢzⁱ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvCoeffs {
    pub r: [f64; 5],
    pub v: [f64; 5],
}

pub fn rv_coeffs(pc: &PotentialClass) -> RvCoeffs {
    let s2 = pc.sigma * pc.sigma;
    let shift = pc.m1.r_index() as i32;
    let mut r = [0.0; 5];
    r[shift as usize] = s2;
    let mut v = [0.0; 5];
    for (c, p) in pc.coeffs.iter().zip(pc.m1.powers()) {
        v[(p + shift) as usize] += s2 * c;
    }
    RvCoeffs { r, v }
}

/// z(x) with X = (x − x₀)/σ.
pub fn coordinate_map(pc: &PotentialClass, x: f64) -> Result<f64> {
    pc.validate()?;
    let xx = (x - pc.x0) / pc.sigma;
    let z = match pc.m1 {
        M1::MinusOne if xx >= 0.0 => (2.0 * xx).sqrt(),
        M1::MinusHalf if xx >= 0.0 => (1.5 * xx).powf(2.0 / 3.0),
        M1::MinusOne | M1::MinusHalf => {
            return Err(Error::Domain(format!("(x - x0)/sigma = {xx} must be non-negative for m1 = {}", pc.m1.value())))
        }
        M1::Zero => xx,
        M1::Half => 0.25 * xx * xx,
        M1::One => xx.exp(),
    };
    Ok(z)
}

/// x(z); for m₁ = 1/2 the branch x − x₀ ≥ 0 is returned.
pub fn inverse_map(pc: &PotentialClass, z: f64) -> Result<f64> {
    pc.validate()?;
    let xx = match pc.m1 {
        M1::MinusOne | M1::MinusHalf | M1::Half if z < 0.0 => {
            return Err(Error::Domain(format!("z = {z} must be non-negative for m1 = {}", pc.m1.value())))
        }
        M1::One if z <= 0.0 => return Err(Error::Domain(format!("z = {z} must be positive for m1 = 1"))),
        M1::MinusOne => 0.5 * z * z,
        M1::MinusHalf => z.powf(1.5) / 1.5,
        M1::Zero => z,
        M1::Half => 2.0 * z.sqrt(),
        M1::One => z.ln(),
    };
    Ok(pc.x0 + pc.sigma * xx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub bch: BchParams,
    pub energy: f64,
    pub mass: f64,
    pub hbar: f64,
}

/// Exponents and Heun parameters for energy E. `branch_a0` picks the root
/// of α₀(α₀ + m₁ − 1) + 2m(Er₀ − v₀)/ħ² = 0 (+1: larger), and
/// α₂ = −branch_a2·√(−m(Er₄ − v₄)/(2ħ²)).
pub fn reduce(pc: &PotentialClass, energy: f64, mass: f64, hbar: f64, branch_a0: i32, branch_a2: i32) -> Result<Reduction> {
    pc.validate()?;
    if !(mass > 0.0 && hbar > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("need mass, hbar > 0 and finite E; got m={mass}, hbar={hbar}, E={energy}")));
    }
    let b0 = Sign::try_from(branch_a0)?.value();
    let b2 = Sign::try_from(branch_a2)?.value();
    let RvCoeffs { r, v } = rv_coeffs(pc);
    let m1 = pc.m1.value();
    let kk = 2.0 * mass / (hbar * hbar);
    let f = |i: usize| energy * r[i] - v[i];

    let rad2 = -kk * f(4) / 4.0;
    if rad2 < 0.0 {
        return Err(Error::ComplexBranch(format!("alpha2^2 = {rad2} < 0")));
    }
    let a2 = -b2 * rad2.sqrt();
    let forcing = -kk * f(3) / 4.0;
    let a1 = if a2 != 0.0 {
        forcing / a2
    } else if forcing == 0.0 {
        0.0
    } else {
        return Err(Error::Degenerate(format!("alpha2 = 0 but alpha1*alpha2 must equal {forcing}")));
    };
    let disc = (m1 - 1.0) * (m1 - 1.0) - 4.0 * kk * f(0);
    if disc < 0.0 {
        return Err(Error::ComplexBranch(format!("discriminant {disc} < 0 for alpha0")));
    }
    let a0 = 0.5 * ((1.0 - m1) + b0 * disc.sqrt());
    let gamma = 2.0 * a0 + m1;
    let bch = BchParams {
        gamma,
        delta: 2.0 * a1,
        eps: 4.0 * a2,
        alpha: a1 * a1 + 2.0 * a2 * (gamma + 1.0) + kk * f(2),
        q: -a1 * gamma - kk * f(1),
    };
    Ok(Reduction { a0, a1, a2, bch, energy, mass, hbar })
}

impl Reduction {
    /// Normalised residuals of the six defining relations (γδε, α, q, α₀, α₁, α₂).
    pub fn equation_residuals(&self, pc: &PotentialClass) -> [f64; 6] {
        let RvCoeffs { r, v } = rv_coeffs(pc);
        let m1 = pc.m1.value();
        let kk = 2.0 * self.mass / (self.hbar * self.hbar);
        let f = |i: usize| self.energy * r[i] - v[i];
        let (a0, a1, a2) = (self.a0, self.a1, self.a2);
        let p = self.bch;
        let rel = |terms: &[f64]| {
            let s: f64 = terms.iter().sum();
            s.abs() / terms.iter().fold(1e-300f64, |m, t| m.max(t.abs()))
        };
        [
            rel(&[p.gamma, -2.0 * a0, -m1])
                .max(rel(&[p.delta, -2.0 * a1]))
                .max(rel(&[p.eps, -4.0 * a2])),
            rel(&[p.alpha, -a1 * a1, -2.0 * a2 * (2.0 * a0 + m1 + 1.0), -kk * f(2)]),
            rel(&[p.q, a1 * (2.0 * a0 + m1), kk * f(1)]),
            rel(&[a0 * a0, a0 * (m1 - 1.0), kk * f(0)]),
            rel(&[a1 * a2, kk * f(3) / 4.0]),
            rel(&[a2 * a2, kk * f(4) / 4.0]),
        ]
    }

    /// Residuals at z of the two balance conditions: the first-derivative
    /// coefficient (times z) and the zeroth-order coefficient (times z²).
    pub fn balance_residuals(&self, pc: &PotentialClass, z: f64) -> (f64, f64) {
        let m1 = pc.m1.value();
        let p = self.bch;
        let lphi = self.a0 / z + self.a1 + 2.0 * self.a2 * z;
        let lrho = m1 / z;
        let first = [2.0 * self.a0, 2.0 * self.a1 * z, 4.0 * self.a2 * z * z, m1, -p.gamma, -p.delta * z, -p.eps * z * z];
        // φ_zz/φ = (φ_z/φ)′ + (φ_z/φ)²
        let phizz = -self.a0 / (z * z) + 2.0 * self.a2 + lphi * lphi;
        let kk = 2.0 * self.mass / (self.hbar * self.hbar);
        let z2_over_rho2 = z * z / (pc.rho(z) * pc.rho(z));
        let second = [
            z * z * phizz,
            z * z * lrho * lphi,
            kk * self.energy * z2_over_rho2,
            -kk * pc.potential_z(z) * z2_over_rho2,
            -p.alpha * z * z,
            p.q * z,
        ];
        let norm = |t: &[f64]| t.iter().sum::<f64>().abs() / t.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        (norm(&first), norm(&second))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solver {
    Frobenius,
    FiniteSum,
}

/// ψ and its first two x-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiValue {
    pub psi: f64,
    pub dpsi_dx: f64,
    pub d2psi_dx2: f64,
}

/// ψ(z) = z^{α₀}e^{α₁z+α₂z²}u(z) with derivatives taken through ρ = dz/dx.
pub fn psi_eval_full(red: &Reduction, pc: &PotentialClass, z: f64, solver: Solver, sign: Sign) -> Result<PsiValue> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("psi needs z > 0, got {z}")));
    }
    let (u, du, ddu) = match solver {
        Solver::Frobenius => {
            let v = frobenius_eval(red.bch, z)?;
            (v.u, v.du, v.ddu)
        }
        Solver::FiniteSum => {
            let exp = terminated_expansion(red.bch, sign)?
                .ok_or_else(|| Error::Domain("finite_sum solver needs a terminating expansion".into()))?;
            let v = exp.eval_full(z)?;
            (v.u, v.du, v.ddu)
        }
    };
    let phi = z.powf(red.a0) * (red.a1 * z + red.a2 * z * z).exp();
    let lphi = red.a0 / z + red.a1 + 2.0 * red.a2 * z;
    let phizz = -red.a0 / (z * z) + 2.0 * red.a2 + lphi * lphi;
    let psi = phi * u;
    let psi_z = phi * (lphi * u + du);
    let psi_zz = phi * (phizz * u + 2.0 * lphi * du + ddu);
    let rho = pc.rho(z);
    let rho_z = pc.m1.value() / z * rho;
    Ok(PsiValue { psi, dpsi_dx: rho * psi_z, d2psi_dx2: rho * rho * psi_zz + rho * rho_z * psi_z })
}

/// (ψ, dψ/dx) at z.
pub fn psi_eval(red: &Reduction, pc: &PotentialClass, z: f64, solver: Solver, sign: Sign) -> Result<(f64, f64)> {
    let v = psi_eval_full(red, pc, z, solver, sign)?;
    Ok((v.psi, v.dpsi_dx))
}

/// Normalised residual of ψ″ + (2m/ħ²)(E − V)ψ at z.
pub fn schrodinger_residual(red: &Reduction, pc: &PotentialClass, z: f64, solver: Solver, sign: Sign) -> Result<f64> {
    let v = psi_eval_full(red, pc, z, solver, sign)?;
    let kk = 2.0 * red.mass / (red.hbar * red.hbar);
    let (te, tv) = (kk * red.energy * v.psi, -kk * pc.potential_z(z) * v.psi);
    let scale = v.d2psi_dx2.abs().max(te.abs()).max(tv.abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((v.d2psi_dx2 + te + tv) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rv_examples() {
        let pc = PotentialClass::new(M1::MinusHalf, [1.0, 2.0, 3.0, 4.0, 5.0]);
        let rv = rv_coeffs(&pc);
        assert_eq!(rv.r, [0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(rv.v, [5.0, 4.0, 3.0, 1.0, 2.0]);
        assert_eq!(rv_coeffs(&PotentialClass::new(M1::Zero, [0.0; 5])).r, [0.0, 0.0, 1.0, 0.0, 0.0]);
        let pc = PotentialClass { sigma: 2.0, ..PotentialClass::new(M1::One, [0.0; 5]) };
        assert_eq!(rv_coeffs(&pc).r, [4.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn map_examples() {
        let z = coordinate_map(&PotentialClass::new(M1::MinusHalf, [0.0; 5]), 2.0 / 3.0).unwrap();
        assert!((z - 1.0).abs() < 1e-15);
        assert_eq!(coordinate_map(&PotentialClass::new(M1::One, [0.0; 5]), 0.0).unwrap(), 1.0);
        assert_eq!(coordinate_map(&PotentialClass::new(M1::MinusOne, [0.0; 5]), 0.5).unwrap(), 1.0);
        assert!(coordinate_map(&PotentialClass::new(M1::MinusOne, [0.0; 5]), -0.5).is_err());
        for m1 in M1::ALL {
            let pc = PotentialClass { sigma: 1.3, x0: 0.2, ..PotentialClass::new(m1, [0.0; 5]) };
            let x = 1.7;
            let back = inverse_map(&pc, coordinate_map(&pc, x).unwrap()).unwrap();
            assert!((back - x).abs() < 1e-14, "{m1:?}");
        }
    }

    #[test]
    fn x_representation_matches() {
        for m1 in M1::ALL {
            let v = [0.3, -0.7, 1.1, 0.4, 0.9];
            let pc = PotentialClass::from_x_representation(m1, v, 1.0, 0.0);
            let x: f64 = 0.8;
            let want = match m1 {
                M1::MinusOne => v[0] + v[1] / x.sqrt() + v[2] / x + v[3] / x.powf(1.5) + v[4] / (x * x),
                M1::MinusHalf => {
                    v[0] + v[1] * x.powf(2.0 / 3.0) + v[2] / x.powf(2.0 / 3.0) + v[3] / x.powf(4.0 / 3.0) + v[4] / (x * x)
                }
                M1::Zero => v[0] + v[1] * x + v[2] * x * x + v[3] / x + v[4] / (x * x),
                M1::Half => v[0] + v[1] * x.powi(2) + v[2] * x.powi(4) + v[3] * x.powi(6) + v[4] / (x * x),
                M1::One => (0..5).map(|i| v[i] * (i as f64 * x).exp()).sum(),
            };
            assert!((pc.potential_x(x).unwrap() - want).abs() < 1e-13 * want.abs().max(1.0), "{m1:?}");
        }
    }

    #[test]
    fn free_class_exponents() {
        let pc = PotentialClass::new(M1::MinusHalf, [0.0; 5]);
        let mut roots: Vec<f64> = [1, -1].iter().map(|&b| reduce(&pc, 0.0, 1.0, 1.0, b, 1).unwrap().a0).collect();
        roots.sort_by(f64::total_cmp);
        assert_eq!(roots, vec![0.0, 1.5]);
    }

    #[test]
    fn sextic_alpha2() {
        let pc = PotentialClass::from_x_representation(M1::Half, [0.0, 1.0, 0.5, 2.0, 0.0], 1.0, 0.0);
        let v4 = rv_coeffs(&pc).v[4];
        for b in [1, -1] {
            let red = reduce(&pc, 0.37, 1.0, 1.0, 1, b).unwrap();
            assert!((red.a2 + b as f64 * (v4 / 2.0).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn branch_errors() {
        // negative v₄ with r₄ = 0 makes α₂ complex
        let pc = PotentialClass::new(M1::One, [0.0, 0.0, 0.0, 0.0, -1.0]);
        assert!(matches!(reduce(&pc, 1.0, 1.0, 1.0, 1, 1), Err(Error::ComplexBranch(_))));
        // α₂ = 0 with an x³-type forcing term
        let pc = PotentialClass::new(M1::One, [0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(matches!(reduce(&pc, 1.0, 1.0, 1.0, 1, 1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn round_trip_and_balance() {
        for m1 in M1::ALL {
            let pc = PotentialClass::new(m1, [0.4, 0.6, -0.3, 0.2, 0.5]);
            for (b0, b2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let e = if m1 == M1::One { 0.3 } else { -0.8 };
                let Ok(red) = reduce(&pc, e, 1.0, 1.0, b0, b2) else { continue };
                assert!(red.equation_residuals(&pc).iter().all(|r| *r < 1e-12), "{m1:?}");
                for z in [0.3, 0.9, 2.0] {
                    let (a, b) = red.balance_residuals(&pc, z);
                    assert!(a < 1e-12 && b < 1e-12, "{m1:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn constant_heun_factor() {
        // choose V so that α = q = 0: m₁ = 0, harmonic V'₂ with matching E
        let pc = PotentialClass::new(M1::Zero, [0.0, 0.0, 0.5, 0.0, 0.0]);
        // α₂ = −1/2, α₁ = 0, α₀ = 1: α = 2α₂(γ + 1) + 2E vanishes at E = 3/2
        let red = reduce(&pc, 1.5, 1.0, 1.0, 1, 1).unwrap();
        assert_eq!((red.a0, red.bch.alpha, red.bch.q), (1.0, 0.0, 0.0));
        let (psi, _) = psi_eval(&red, &pc, 1.2, Solver::Frobenius, Sign::Plus).unwrap();
        assert!((psi - 1.2 * (-0.5f64 * 1.44).exp()).abs() < 1e-15);
    }
}
