//! The half-line well
//!
//! V(x) = 55ħ²/(72m x²) + V₂x^{−2/3} + V₀ + (9mV₂²/(8ħ²)) x^{2/3},
//!
//! whose solutions are sums of four Hermite functions, and its bound states.

mod quad;

pub use quad::integrate as gauss_kronrod;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::Sign;
use crate::oracle::{shoot_spectrum, ShootingConfig};
use crate::schrod::{PotentialClass, M1};
use crate::specfun::{hermite_fn, HermiteOrder, W2_MAX};

/// Local exponent of the regular solution at the origin.
pub const LOCAL_EXPONENT: f64 = 11.0 / 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct N3Well {
    pub v0: f64,
    pub v2: f64,
    pub mass: f64,
    pub hbar: f64,
    pub x0: f64,
}

impl N3Well {
    pub fn new(v0: f64, v2: f64, mass: f64, hbar: f64) -> Self {
        N3Well { v0, v2, mass, hbar, x0: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0 && self.hbar > 0.0) {
            return Err(Error::Domain(format!("mass and hbar must be positive, got {} and {}", self.mass, self.hbar)));
        }
        if ![self.v0, self.v2, self.mass, self.hbar, self.x0].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("non-finite well parameter".into()));
        }
        Ok(())
    }

    fn require_well(&self) -> Result<()> {
        self.validate()?;
        if self.v2 == 0.0 {
            return Err(Error::Domain("V2 = 0: the potential is not a well".into()));
        }
        Ok(())
    }

    /// 2m/ħ².
    pub fn k(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }

    /// Energy scale √(9m|V₂|³/(2ħ²)).
    pub fn energy_scale(&self) -> f64 {
        (9.0 * self.mass * self.v2.abs().powi(3) / (2.0 * self.hbar * self.hbar)).sqrt()
    }

    /// Length scale (ħ²/(m|V₂|))^{3/4}.
    pub fn length_scale(&self) -> f64 {
        (self.hbar * self.hbar / (self.mass * self.v2.abs())).powf(0.75)
    }

    /// The branch s = −sign(V₂) that carries the bound states.
    pub fn bound_s(&self) -> i32 {
        if self.v2 > 0.0 {
            -1
        } else {
            1
        }
    }

    /// The same potential as a member of the m₁ = −1/2 class.
    pub fn to_potential_class(&self) -> PotentialClass {
        let (m, h) = (self.mass, self.hbar);
        let v = [self.v0, 9.0 * m * self.v2 * self.v2 / (8.0 * h * h), self.v2, 0.0, 55.0 * h * h / (72.0 * m)];
        PotentialClass::from_x_representation(M1::MinusHalf, v, 1.0, self.x0)
    }

    fn z_of(&self, x: f64) -> Result<f64> {
        let xx = x - self.x0;
        if !(xx > 0.0) {
            return Err(Error::Domain(format!("x = {x} must exceed x0 = {}", self.x0)));
        }
        Ok((1.5 * xx).powf(2.0 / 3.0))
    }
}

/// The four terms of the potential at x.
fn potential_terms(well: &N3Well, xx: f64) -> [f64; 4] {
    let (m, h) = (well.mass, well.hbar);
    let x23 = xx.powf(2.0 / 3.0);
    [55.0 * h * h / (72.0 * m * xx * xx), well.v2 / x23, well.v0, 9.0 * m * well.v2 * well.v2 / (8.0 * h * h) * x23]
}

pub fn potential_v(well: &N3Well, x: f64) -> Result<f64> {
    well.validate()?;
    let xx = x - well.x0;
    if !(xx > 0.0) {
        return Err(Error::Domain(format!("x = {x} must exceed x0 = {}", well.x0)));
    }
    Ok(potential_terms(well, xx).iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyState {
    pub e: f64,
    pub s: i32,
    pub a: f64,
    pub a1: f64,
    pub a2: f64,
    pub y0: f64,
    pub c: [f64; 4],
}

impl EnergyState {
    /// √(−2α₂).
    pub fn beta(&self) -> f64 {
        (-2.0 * self.a2).sqrt()
    }

    /// y = √(−2α₂)(z + α₁/(2α₂)).
    pub fn y_of_z(&self, z: f64) -> f64 {
        self.beta() * (z + self.a1 / (2.0 * self.a2))
    }
}

pub fn energy_state(well: &N3Well, e: f64, s: i32) -> Result<EnergyState> {
    well.require_well()?;
    let sf = Sign::try_from(s)?.value();
    if !e.is_finite() {
        return Err(Error::Domain(format!("non-finite energy {e}")));
    }
    let (m, h) = (well.mass, well.hbar);
    let a2 = 1.5f64.powf(2.0 / 3.0) * m * well.v2 * sf / (2.0 * h * h);
    if !(a2 < 0.0) {
        return Err(Error::Domain(format!("s = {s} with V2 = {} gives alpha2 = {a2} >= 0", well.v2)));
    }
    let a1 = (2.0f64 / 3.0).powf(2.0 / 3.0) * (well.v0 - e) / (well.v2 * sf);
    let a = 1.0 + sf - a1 * a1 / (4.0 * a2);
    let beta = (-2.0 * a2).sqrt();
    let c = [
        8.0 * beta * a * (a - 1.0) * (a - 2.0),
        12.0 * a1 * a * (a - 1.0),
        6.0 * beta * a * (2.0 * a - 3.0 - sf),
        a1 * (2.0 * a - 1.0 + sf),
    ];
    Ok(EnergyState { e, s, a, a1, a2, y0: -a1 / beta, c })
}

/// ψ and its first two x-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiDerivs {
    pub psi: f64,
    pub dpsi: f64,
    pub d2psi: f64,
}

fn h(nu: f64, w: f64) -> Result<f64> {
    Ok(hermite_fn(HermiteOrder::new(nu), w)?.value)
}

/// ψ_F = z^{−5/4}e^{−y²/2} Σ c_k H_{a−3+k}(y). With `branch` = Minus the
/// Hermite argument is −y and c_k picks up (−1)^k, which gives a second,
/// independent solution at the same energy.
pub fn fundamental_psi_full(well: &N3Well, st: &EnergyState, x: f64, branch: Sign) -> Result<PsiDerivs> {
    let z = well.z_of(x)?;
    let y = st.y_of_z(z);
    let b = branch.value();
    let w = b * y;
    if w * w > W2_MAX {
        return Err(Error::Range(format!("y = {y} beyond the Hermite envelope")));
    }
    let a = st.a;
    let hv: Vec<f64> = (0..5).map(|k| h(a - 4.0 + k as f64, w)).collect::<Result<_>>()?;
    let (mut s, mut sy, mut syy) = (0.0, 0.0, 0.0);
    let mut sign = 1.0;
    for k in 0..4 {
        let d = st.c[k] * sign;
        let nu = a - 3.0 + k as f64;
        let hk = hv[k + 1];
        let dk = 2.0 * nu * hv[k];
        s += d * hk;
        sy += b * d * dk;
        syy += d * (2.0 * w * dk - 2.0 * nu * hk);
        sign *= b;
    }
    let beta = st.beta();
    let ef = z.powf(-1.25) * (-0.5 * y * y).exp();
    let fz = -1.25 / z - y * beta;
    let fzz = 1.25 / (z * z) - beta * beta;
    let psi = ef * s;
    let psi_z = ef * (fz * s + beta * sy);
    let psi_zz = ef * ((fzz + fz * fz) * s + 2.0 * fz * beta * sy + beta * beta * syy);
    // ρ = dz/dx = z^{−1/2}, ρρ_z = −1/(2z²)
    let rho = z.powf(-0.5);
    Ok(PsiDerivs { psi, dpsi: rho * psi_z, d2psi: rho * rho * psi_zz - 0.5 / (z * z) * psi_z })
}

pub fn fundamental_psi(well: &N3Well, e: f64, s: i32, x: f64) -> Result<f64> {
    let st = energy_state(well, e, s)?;
    Ok(fundamental_psi_full(well, &st, x, Sign::Plus)?.psi)
}

/// Normalised residual of ψ″ + (2m/ħ²)(E − V)ψ at x.
pub fn schrodinger_residual(well: &N3Well, st: &EnergyState, x: f64, branch: Sign) -> Result<f64> {
    let d = fundamental_psi_full(well, st, x, branch)?;
    let kk = well.k();
    let terms = potential_terms(well, x - well.x0);
    let v: f64 = terms.iter().sum();
    let raw = d.d2psi + kk * (st.e - v) * d.psi;
    let scale = terms.iter().fold(d.d2psi.abs().max((kk * st.e * d.psi).abs()), |m, t| m.max((kk * t * d.psi).abs()));
    Ok(if scale == 0.0 { 0.0 } else { raw / scale })
}

/// (A₁, A₂) of the two-term form of the boundary condition at y₀.
pub fn two_term_reduction(st: &EnergyState) -> (f64, f64) {
    let (a, y0) = (st.a, st.y0);
    let [c0, c1, c2, c3] = st.c;
    let a1 = 2.0 * (a - 2.0) * (c1 * y0 + (a - 1.0) * c2) + c0 * (1.0 - a + 2.0 * y0 * y0);
    let a2 = c0 * y0 + (a - 2.0) * c1 - 2.0 * (2.0 - 3.0 * a + a * a) * c3;
    (a1, a2)
}

/// Σ c_k H_{a−3+k}(y₀).
pub fn four_term_sum(st: &EnergyState) -> Result<f64> {
    (0..4).try_fold(0.0, |acc, k| Ok(acc + st.c[k] * h(st.a - 3.0 + k as f64, st.y0)?))
}

/// The four-term sum rebuilt from (A₁, A₂):
/// (A₁H_{a−1}(y₀) − A₂H_a(y₀)) / (2(a−1)(a−2)).
pub fn two_term_sum(st: &EnergyState) -> Result<f64> {
    let (a1, a2) = two_term_reduction(st);
    let a = st.a;
    Ok((a1 * h(a - 1.0, st.y0)? - a2 * h(a, st.y0)?) / (2.0 * (a - 1.0) * (a - 2.0)))
}

/// Zeros in E are the bound-state energies: H_{a−1}(−√(2(a−2))) for V₂ < 0
/// and H_{a−2}(−√(2a)) for V₂ > 0, with a from the s = −sign(V₂) branch.
pub fn spectrum_fn(well: &N3Well, e: f64) -> Result<f64> {
    well.require_well()?;
    if !(e > well.v0) {
        return Err(Error::Range(format!("spectrum function needs E > V0 = {}, got {e}", well.v0)));
    }
    let st = energy_state(well, e, well.bound_s())?;
    let a = st.a;
    if well.v2 < 0.0 {
        h(a - 1.0, -(2.0 * (a - 2.0)).sqrt())
    } else {
        h(a - 2.0, -(2.0 * a).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub e: f64,
    pub a: f64,
    pub spectrum_fn_residual: f64,
    /// Shooting value; NaN when not compared.
    pub e_oracle: f64,
    pub oracle_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub levels: Vec<Level>,
}

/// Relative agreement required between closed-form and shooting levels.
pub const ORACLE_RTOL: f64 = 1e-6;

/// Local level spacing predicted by the large-n form E ≈ V₀ + P√(n+1).
fn scan_step(well: &N3Well, e: f64) -> f64 {
    let p = well.energy_scale();
    0.25 * p / (2.0 * ((e - well.v0) / p).max(1.0))
}

fn illinois(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut f_lo: f64, mut f_hi: f64, tol: f64) -> Result<f64> {
    let mut side = 0;
    for _ in 0..300 {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == (f_lo > 0.0) {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::NonConvergence(format!("root refinement stalled in [{lo}, {hi}]")))
}

/// First `n_max` zeros of [`spectrum_fn`] without the oracle comparison.
pub fn spectrum_roots(well: &N3Well, n_max: usize) -> Result<Vec<Level>> {
    well.require_well()?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let p = well.energy_scale();
    let f = |e: f64| spectrum_fn(well, e);
    let mut e = well.v0 + 1e-3 * p;
    let mut fe = f(e)?;
    let mut out = vec![];
    let e_stop = well.v0 + p * (n_max as f64 + 10.0);
    while out.len() < n_max {
        let e_next = e + scan_step(well, e);
        if e_next > e_stop {
            return Err(Error::Bracketing(format!("found {} of {n_max} levels below E = {e_stop}", out.len())));
        }
        let f_next = f(e_next)?;
        if f_next == 0.0 || (fe > 0.0) != (f_next > 0.0) {
            let tol = 1e-13 * e_next.abs().max(p);
            let root = if f_next == 0.0 { e_next } else { illinois(&f, e, e_next, fe, f_next, tol)? };
            let dh = 1e-6 * p;
            let slope = (f(root + dh)? - f(root - dh)?) / (2.0 * dh);
            let st = energy_state(well, root, well.bound_s())?;
            out.push(Level {
                n: out.len() + 1,
                e: root,
                a: st.a,
                spectrum_fn_residual: f(root)?.abs() / (slope.abs() * root.abs().max(1.0)),
                e_oracle: f64::NAN,
                oracle_gap: f64::NAN,
            });
        }
        e = e_next;
        fe = f_next;
    }
    Ok(out)
}

/// Shooting configuration used to validate the closed-form levels.
pub fn oracle_config(well: &N3Well) -> ShootingConfig {
    ShootingConfig { x_min: 1e-4 * well.length_scale(), local_exponent: LOCAL_EXPONENT, ..Default::default() }
}

/// Closed-form levels, each checked against the shooting oracle.
pub fn bound_states(well: &N3Well, n_max: usize) -> Result<SpectrumResult> {
    let mut levels = spectrum_roots(well, n_max)?;
    let last = levels.last().unwrap().e;
    let e_hi = last + 2.0 * scan_step(well, last);
    let e_lo = potential_minimum(well)?.1 - 1e-3 * well.energy_scale();
    let shot = shoot_spectrum(well, (e_lo, e_hi), n_max, &oracle_config(well))?;
    for (i, lv) in levels.iter_mut().enumerate() {
        let Some(&es) = shot.get(i) else {
            return Err(Error::OracleMismatch { level: lv.n, closed: lv.e, oracle: f64::NAN });
        };
        lv.e_oracle = es;
        lv.oracle_gap = (lv.e - es).abs() / lv.e.abs().max(f64::MIN_POSITIVE);
        if !(lv.oracle_gap <= ORACLE_RTOL) {
            return Err(Error::OracleMismatch { level: lv.n, closed: lv.e, oracle: es });
        }
    }
    Ok(SpectrumResult { levels })
}

/// dV/dx at x.
pub fn potential_slope(well: &N3Well, x: f64) -> Result<f64> {
    well.validate()?;
    let xx = x - well.x0;
    if !(xx > 0.0) {
        return Err(Error::Domain(format!("x = {x} must exceed x0 = {}", well.x0)));
    }
    let (m, h) = (well.mass, well.hbar);
    Ok(-110.0 * h * h / (72.0 * m * xx.powi(3)) - 2.0 / 3.0 * well.v2 * xx.powf(-5.0 / 3.0)
        + 2.0 / 3.0 * 9.0 * m * well.v2 * well.v2 / (8.0 * h * h) * xx.powf(-1.0 / 3.0))
}

/// Location and value of the single minimum of V for V₂ ≠ 0, from dV/dx = 0.
pub fn potential_minimum(well: &N3Well) -> Result<(f64, f64)> {
    well.require_well()?;
    let l = well.length_scale();
    let slope = |t: f64| potential_slope(well, well.x0 + l * t);
    // dV/dx < 0 near the barrier, > 0 far out
    let (mut lo, mut hi) = (1e-3, 1e3);
    if !(slope(lo)? < 0.0 && slope(hi)? > 0.0) {
        return Err(Error::Bracketing("dV/dx does not change sign".into()));
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if slope(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let x = well.x0 + l * 0.5 * (lo + hi);
    Ok((x, potential_v(well, x)?))
}

/// Normalisation data of ψ_F for a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    /// C_N = (∫ψ_F² dx)^{−1/2}.
    pub c_n: f64,
    pub integral: f64,
    /// ψ_F is treated as zero beyond x₀ + x_cut.
    pub x_cut: f64,
    /// Below x₀ + x_inner the regular local form ψ ∝ x^{11/6} is integrated exactly.
    pub x_inner: f64,
}

fn x_of_y(well: &N3Well, st: &EnergyState, y: f64) -> f64 {
    let z = y / st.beta() - st.a1 / (2.0 * st.a2);
    well.x0 + z.powf(1.5) / 1.5
}

/// Outer cutoff where e^{−y²}(2y)^{2a} drops below e^{−69}, capped by the
/// Hermite envelope.
fn y_cut(st: &EnergyState) -> f64 {
    let cap = W2_MAX.sqrt() * 0.9999;
    let mut y = 1.0f64.max(st.y0);
    while y < cap && y * y < 69.0 + 2.0 * st.a.max(0.0) * (2.0 * y).ln() {
        y += 0.01;
    }
    y.min(cap)
}

pub fn normalization(well: &N3Well, st: &EnergyState) -> Result<Normalization> {
    let x_cut = x_of_y(well, st, y_cut(st));
    let x_inner = well.x0 + 1e-2 * well.length_scale();
    let psi = |x: f64| fundamental_psi_full(well, st, x, Sign::Plus).map(|d| d.psi);
    let p_in = psi(x_inner)?;
    let inner = p_in * p_in * (x_inner - well.x0) * 3.0 / 14.0;
    // split at the classical region so the adaptive rule sees the oscillations
    let mut pieces = vec![x_inner];
    let n = 16;
    for k in 1..=n {
        pieces.push(x_inner + (x_cut - x_inner) * k as f64 / n as f64);
    }
    let mut total = inner;
    for w in pieces.windows(2) {
        let (v, _) = gauss_kronrod(&mut |x| psi(x).map(|p| p * p), w[0], w[1], 1e-12, 0.0)?;
        total += v;
    }
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Quadrature(format!("norm integral {total}")));
    }
    Ok(Normalization { c_n: total.powf(-0.5), integral: total, x_cut, x_inner })
}

/// ∫(C_Nψ_F)² recomputed on a finer split than [`normalization`] uses.
pub fn norm_check(well: &N3Well, st: &EnergyState) -> Result<f64> {
    let nrm = normalization(well, st)?;
    let psi = |x: f64| fundamental_psi_full(well, st, x, Sign::Plus).map(|d| nrm.c_n * d.psi);
    let p_in = psi(nrm.x_inner)?;
    let mut total = p_in * p_in * (nrm.x_inner - well.x0) * 3.0 / 14.0;
    let n = 40;
    for k in 0..n {
        let a = nrm.x_inner + (nrm.x_cut - nrm.x_inner) * k as f64 / n as f64;
        let b = nrm.x_inner + (nrm.x_cut - nrm.x_inner) * (k + 1) as f64 / n as f64;
        total += gauss_kronrod(&mut |x| psi(x).map(|p| p * p), a, b, 1e-13, 0.0)?.0;
    }
    Ok(total)
}

/// Normalised bound-state wave function C_N ψ_F on `x_grid`; zero at x ≤ x₀
/// and beyond the cutoff.
pub fn bound_wavefunction(well: &N3Well, level: &EnergyState, x_grid: &[f64]) -> Result<Vec<f64>> {
    let nrm = normalization(well, level)?;
    x_grid
        .iter()
        .map(|&x| {
            if x <= well.x0 || x >= nrm.x_cut {
                Ok(0.0)
            } else {
                Ok(nrm.c_n * fundamental_psi_full(well, level, x, Sign::Plus)?.psi)
            }
        })
        .collect()
}

/// Interior sign changes of ψ_F between the inner point and the cutoff.
pub fn count_nodes(well: &N3Well, st: &EnergyState) -> Result<usize> {
    let nrm = normalization(well, st)?;
    let m = 4000;
    let vals: Vec<f64> = (0..=m)
        .map(|k| {
            let x = nrm.x_inner + (nrm.x_cut - nrm.x_inner) * k as f64 / m as f64;
            fundamental_psi_full(well, st, x, Sign::Plus).map(|d| d.psi)
        })
        .collect::<Result<_>>()?;
    let big = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut last = 0.0;
    let mut nodes = 0;
    for v in vals {
        if v.abs() <= 1e-8 * big {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = v;
    }
    Ok(nodes)
}

/// Transition-layer form of H_ν(w), up to a constant factor:
/// 2^{(1+ν)/2} e^{(w²−ν+ν ln ν)/2} (1 − w²/2ν)^{−1/4} cos(πν/2 − w√(ν/2 − w²/4) − (ν+½) arcsin(w/√(2ν))).
pub fn szego_approx(nu: f64, w: f64) -> Result<f64> {
    if !(nu > 0.0) || !(w * w < 2.0 * nu) {
        return Err(Error::Domain(format!("transition-layer form needs nu > 0 and w^2 < 2 nu, got nu={nu}, w={w}")));
    }
    Ok(2f64.powf(0.5 * (1.0 + nu))
        * (0.5 * (w * w - nu + nu * nu.ln())).exp()
        * (1.0 - w * w / (2.0 * nu)).powf(-0.25)
        * szego_phase(nu, w).cos())
}

/// Cosine argument of [`szego_approx`].
pub fn szego_phase(nu: f64, w: f64) -> f64 {
    let pi = std::f64::consts::PI;
    pi * nu / 2.0 - w * (nu / 2.0 - w * w / 4.0).sqrt() - (2.0 * nu + 1.0) / 2.0 * (w / (2.0 * nu).sqrt()).asin()
}

/// Large-n level formula: V₀ + P(√(n+1) − 7/(8√(n+1))) for V₂ < 0 and
/// V₀ + P(√(n+1) + 1/(64√(n+1))) for V₂ > 0, P = √(9m|V₂|³/(2ħ²)).
pub fn asymptotic_energy(well: &N3Well, n: usize) -> Result<f64> {
    well.require_well()?;
    if n == 0 {
        return Err(Error::Domain("level index starts at 1".into()));
    }
    let r = (n as f64 + 1.0).sqrt();
    let f = if well.v2 < 0.0 { r - 7.0 / (8.0 * r) } else { r + 1.0 / (64.0 * r) };
    Ok(well.v0 + well.energy_scale() * f)
}

/// Energy of level n from the transition-layer quantisation condition
/// phase(ν, w) = −π/2 + πk with ν = a − 1, w = −√(2(a−2)) (V₂ < 0).
/// k = 1 is satisfied by the trivial a = 2, so level n takes k = n + 1.
/// For V₂ > 0 the pairing ν = a − 2, w = −√(2a) always has w² > 2ν, outside
/// the layer, and a domain error is returned.
pub fn phase_equation_solve(well: &N3Well, n: usize) -> Result<f64> {
    well.require_well()?;
    if n == 0 {
        return Err(Error::Domain("level index starts at 1".into()));
    }
    if well.v2 > 0.0 {
        return Err(Error::Domain("for V2 > 0 the Hermite arguments lie outside the transition layer".into()));
    }
    let target = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (n + 1) as f64;
    let g = |a: f64| szego_phase(a - 1.0, -(2.0 * (a - 2.0)).sqrt()) - target;
    let mut lo = 2.0;
    let mut g_lo = g(lo);
    let mut hi = lo;
    let mut g_hi = g_lo;
    for _ in 0..100_000 {
        hi += 0.05;
        g_hi = g(hi);
        if (g_hi > 0.0) != (g_lo > 0.0) {
            break;
        }
        lo = hi;
        g_lo = g_hi;
    }
    if (g_hi > 0.0) == (g_lo > 0.0) {
        return Err(Error::NonConvergence(format!("no root of the phase condition for n = {n}")));
    }
    let a = illinois(&|a| Ok(g(a)), lo, hi, g_lo, g_hi, 1e-14 * hi)?;
    Ok(well.v0 + well.energy_scale() * (a - 2.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_examples() {
        assert!((potential_v(&N3Well::new(0.0, 0.0, 1.0, 1.0), 1.0).unwrap() - 55.0 / 72.0).abs() < 1e-15);
        let v = potential_v(&N3Well::new(0.0, -5.0, 1.0, 1.0), 1.0).unwrap();
        assert!((v - (55.0 / 72.0 - 5.0 + 225.0 / 8.0)).abs() < 1e-13);
        assert!(potential_v(&N3Well::new(0.0, -5.0, 1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn energy_state_invariants() {
        let well = N3Well::new(0.0, -5.0, 1.0, 1.0);
        let st = energy_state(&well, 18.0, 1).unwrap();
        assert!((st.a - (2.0 - st.a1 * st.a1 / (4.0 * st.a2))).abs() < 1e-12 * st.a);
        assert!((st.y0 + (2.0 * (st.a - 2.0)).sqrt()).abs() < 1e-10);
        assert!(matches!(energy_state(&well, 18.0, -1), Err(Error::Domain(_))));
        // a = 2 at E = V₀: c₀ vanishes
        let st = energy_state(&well, 0.0, 1).unwrap();
        assert_eq!(st.c[0], 0.0);
    }

    #[test]
    fn a2_identity_and_two_term_form() {
        let well = N3Well::new(0.3, -2.0, 1.0, 1.0);
        for e in [1.0, 4.0, 9.5] {
            let st = energy_state(&well, e, 1).unwrap();
            let (a1, a2) = two_term_reduction(&st);
            let scale = st.c.iter().fold(a1.abs(), |m, c| m.max(c.abs() * st.a * st.a));
            assert!(a2.abs() < 1e-12 * scale, "{a2} {scale}");
            let four = four_term_sum(&st).unwrap();
            let two = two_term_sum(&st).unwrap();
            assert!((four - two).abs() < 1e-9 * four.abs(), "{four} {two}");
        }
    }

    #[test]
    fn solves_the_equation() {
        for (v2, e) in [(-5.0, 18.0), (5.0, 30.0), (3.5, 7.0)] {
            let well = N3Well::new(0.0, v2, 1.0, 1.0);
            let st = energy_state(&well, e, well.bound_s()).unwrap();
            for k in 1..=20 {
                let x = 0.1 * k as f64;
                let Ok(r) = schrodinger_residual(&well, &st, x, Sign::Plus) else { continue };
                assert!(r.abs() < 1e-9, "V2={v2} x={x} r={r}");
                let r = schrodinger_residual(&well, &st, x, Sign::Minus).unwrap();
                assert!(r.abs() < 1e-9, "minus branch V2={v2} x={x} r={r}");
            }
        }
    }

    #[test]
    fn asymptotic_example() {
        let well = N3Well::new(0.0, -5.0, 1.0, 1.0);
        let e = asymptotic_energy(&well, 1).unwrap();
        assert!((e - 562.5f64.sqrt() * (2f64.sqrt() - 7.0 / (8.0 * 2f64.sqrt()))).abs() < 1e-12);
        let shifted = asymptotic_energy(&N3Well { v0: 10.0, ..well }, 1).unwrap();
        assert!((shifted - e - 10.0).abs() < 1e-12);
    }

    #[test]
    fn szego_basics() {
        // at w = 0 the cosine argument is πν/2
        assert!((szego_phase(3.0, 0.0) - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        assert!(szego_approx(3.0, 0.0).unwrap().abs() < 1e-12);
        assert!(szego_approx(2.0, 2.0).is_err());
        let near = szego_approx(2.0, 1.99999).unwrap().abs();
        let far = szego_approx(2.0, 1.0).unwrap().abs();
        assert!(near > far);
    }
}
