//! Brute-force validators that share no closed forms with the rest of the crate.

mod diff;
mod ode;
mod shoot;

pub use diff::{fd_derivative, wronskian};
pub use ode::{dopri5, dopri5_fixed, integrate, integrate_fixed, OdeProblem, OdeSolution, Rhs};
pub use shoot::{power_start, HalfLine, ShootingConfig, ShotLevel};

use crate::bch::BchParams;
use crate::error::{Error, Result};
use crate::n3well::N3Well;

/// Start point of [`bch_ode_solution`].
pub const BCH_Z_START: f64 = 1e-4;

/// Exponent-0 solution of the bi-confluent Heun equation at z > 0 by direct
/// integration from z = 10⁻⁴. The start data come from the local balance
/// u = 1 + a₁z + a₂z² + a₃z³. Only γ > 0 is well conditioned: for γ < 0 the
/// second solution z^{1−γ} cannot be kept out in double precision.
pub fn bch_ode_solution(params: &BchParams, z: f64, tol: f64) -> Result<OdeSolution> {
    let BchParams { gamma, delta, eps, alpha, q } = *params;
    if gamma <= 0.0 && gamma.fract() == 0.0 {
        return Err(Error::Indicial(gamma));
    }
    if !(z > BCH_Z_START) {
        return Err(Error::Domain(format!("z = {z} must exceed the start point {BCH_Z_START}")));
    }
    // z^k balance: (k+1)(k+γ)a_{k+1} + (δk − q)a_k + (ε(k−1) + α)a_{k−1} = 0
    let a1 = q / gamma;
    let a2 = -((delta - q) * a1 + alpha) / (2.0 * (1.0 + gamma));
    let a3 = -((2.0 * delta - q) * a2 + (eps + alpha) * a1) / (3.0 * (2.0 + gamma));
    let z0 = BCH_Z_START;
    let u0 = 1.0 + z0 * (a1 + z0 * (a2 + z0 * a3));
    let du0 = a1 + z0 * (2.0 * a2 + 3.0 * z0 * a3);
    let p = |x: f64| gamma / x + delta + eps * x;
    let r = |x: f64| (alpha * x - q) / x;
    let prob = OdeProblem { p: &p, r: &r, domain: (0.0, f64::INFINITY), z_start: z0, initial: (u0, du0) };
    integrate(&prob, z, tol)
}

/// First `n_max` levels of the half-line well in [e_lo, e_hi] by shooting on
/// x − x₀, started from ψ ≈ x^λ(1 + (3KV₂/16)x^{4/3}).
pub fn shoot_spectrum(well: &N3Well, e_range: (f64, f64), n_max: usize, cfg: &ShootingConfig) -> Result<Vec<f64>> {
    Ok(shoot_levels(well, e_range, n_max, cfg)?.into_iter().map(|l| l.e).collect())
}

pub fn shoot_levels(well: &N3Well, e_range: (f64, f64), n_max: usize, cfg: &ShootingConfig) -> Result<Vec<ShotLevel>> {
    well.validate()?;
    let (m, h) = (well.mass, well.hbar);
    let k = 2.0 * m / (h * h);
    let v2 = well.v2;
    let v0 = well.v0;
    let v = move |x: f64| {
        let x23 = x.powf(2.0 / 3.0);
        55.0 * h * h / (72.0 * m * x * x) + v2 / x23 + v0 + 9.0 * m * v2 * v2 / (8.0 * h * h) * x23
    };
    let start = power_start(cfg.local_exponent, 3.0 * k * v2 / 16.0, 4.0 / 3.0);
    HalfLine { v: &v, k, start: &start }.levels(e_range.0, e_range.1, n_max, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_solution() {
        let p = BchParams::new(1.5, 0.3, -1.0, 0.0, 0.0);
        let s = bch_ode_solution(&p, 2.0, 1e-10).unwrap();
        assert_eq!((s.u, s.du), (1.0, 0.0));
    }

    #[test]
    fn spherical_bessel() {
        // δ = ε = q = 0, γ = 2, α = 1: u = sin z / z
        let (g, a) = (2.0f64, 1.0f64);
        let p = BchParams::new(g, 0.0, 0.0, a, 0.0);
        let z = 2.0f64;
        let s = bch_ode_solution(&p, z, 1e-12).unwrap();
        assert!((s.u - z.sin() / z).abs() < 1e-10, "{}", s.u - z.sin() / z);
    }
}
