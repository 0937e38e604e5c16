//! Bound states of −ψ″ + K(V − E)ψ = 0 on the half-line by shooting.
//!
//! The outward solution starts from the regular local solution at x_min, the
//! inward one from a decaying exponential at x_max. Levels are bracketed by
//! Sturm node counts of the outward solution and refined on the normalised
//! Wronskian mismatch at x_match.

use serde::{Deserialize, Serialize};

use super::ode::dopri5;
use crate::error::{Error, Result};

/// Numerical settings. `None` fields are chosen from the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    pub x_min: f64,
    pub x_match: Option<f64>,
    pub x_max: Option<f64>,
    /// Per-step relative tolerance of the integrator.
    pub rtol: f64,
    /// ψ ~ x^λ near the origin.
    pub local_exponent: f64,
    /// ∫κ dx required beyond the outer turning point when x_max is automatic.
    pub decay: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig { x_min: 1e-4, x_match: None, x_max: None, rtol: 1e-11, local_exponent: 1.0, decay: 36.0 }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.x_min > 0.0
            && self.rtol > 0.0
            && self.decay > 0.0
            && self.local_exponent.is_finite()
            && self.x_match.is_none_or(|m| m > self.x_min)
            && match (self.x_match, self.x_max) {
                (Some(m), Some(x)) => m < x,
                (None, Some(x)) => x > self.x_min,
                _ => true,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid shooting configuration {self:?}")))
        }
    }
}

/// ψ″ = K(V(x) − E)ψ on (0, ∞), K = 2m/ħ².
pub struct HalfLine<'a> {
    pub v: &'a dyn Fn(f64) -> f64,
    pub k: f64,
    /// (ψ, ψ′) of the regular solution at x for energy E, up to scale.
    pub start: &'a dyn Fn(f64, f64) -> (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotLevel {
    /// 1-based level index.
    pub n: usize,
    pub e: f64,
    /// Interior zeros of the eigenfunction.
    pub nodes: usize,
}

struct Grid {
    x_min: f64,
    x_match: f64,
    x_max: f64,
}

impl<'a> HalfLine<'a> {
    fn rhs(&self, e: f64) -> impl Fn(f64, [f64; 2]) -> [f64; 2] + '_ {
        move |x, y| [y[1], self.k * ((self.v)(x) - e) * y[0]]
    }

    /// Minimum of V on a logarithmic scan.
    fn potential_minimum(&self, x_min: f64) -> (f64, f64) {
        let (mut best_x, mut best_v) = (x_min, f64::INFINITY);
        let mut x = x_min;
        while x < 1e4 {
            let v = (self.v)(x);
            if v < best_v {
                best_v = v;
                best_x = x;
            }
            x *= 1.01;
        }
        (best_x, best_v)
    }

    /// Outer point where ∫κ from the last turning point of `e_top` reaches `decay`.
    fn outer_point(&self, from: f64, e_top: f64, decay: f64) -> Result<f64> {
        let mut x = from;
        let mut h = 1e-3 * from.max(1e-2);
        // walk to the outer turning point
        while (self.v)(x) <= e_top {
            x += h;
            h *= 1.02;
            if x > 1e8 {
                return Err(Error::Bracketing(format!("no outer turning point below E = {e_top}")));
            }
        }
        let kappa = |x: f64| (self.k * ((self.v)(x) - e_top)).max(0.0).sqrt();
        let mut acc = 0.0;
        let h = (x * 1e-3).max(1e-4);
        let mut step = h;
        while acc < decay {
            let (a, b) = (kappa(x), kappa(x + step));
            acc += 0.5 * (a + b) * step;
            x += step;
            step = (step * 1.01).min(0.02 / (b.max(1e-12)) + h);
            if x > 1e8 {
                return Err(Error::Bracketing("potential does not confine".into()));
            }
        }
        Ok(x)
    }

    fn grid(&self, cfg: &ShootingConfig, e_top: f64) -> Result<Grid> {
        cfg.validate()?;
        let (x_bottom, _) = self.potential_minimum(cfg.x_min);
        let x_match = match cfg.x_match {
            Some(m) => m,
            None if x_bottom > 10.0 * cfg.x_min => x_bottom,
            // minimum at the inner edge: half way to the turning point of e_top
            None => {
                let mut x = 10.0 * cfg.x_min;
                while (self.v)(x) <= e_top && x < 1e8 {
                    x *= 1.01;
                }
                0.5 * x
            }
        };
        let x_max = match cfg.x_max {
            Some(x) => x,
            None => self.outer_point(x_match, e_top, cfg.decay)?,
        };
        if !(cfg.x_min < x_match && x_match < x_max) {
            return Err(Error::Domain(format!("need x_min < x_match < x_max, got {}, {x_match}, {x_max}", cfg.x_min)));
        }
        Ok(Grid { x_min: cfg.x_min, x_match, x_max })
    }

    fn outward(&self, e: f64, g: &Grid, to: f64, rtol: f64, nodes: &mut usize) -> Result<[f64; 2]> {
        let (p, dp) = (self.start)(g.x_min, e);
        let f = self.rhs(e);
        let mut last = p;
        let mut count = 0usize;
        let (y, _) = dopri5(&f, g.x_min, [p, dp], to, rtol, 1e-300, &mut |_, y| {
            if y[0] != 0.0 {
                if last != 0.0 && (y[0] > 0.0) != (last > 0.0) {
                    count += 1;
                }
                last = y[0];
            }
        })?;
        *nodes = count;
        Ok(y)
    }

    fn inward(&self, e: f64, g: &Grid, rtol: f64) -> Result<[f64; 2]> {
        let kappa = (self.k * ((self.v)(g.x_max) - e)).max(0.0).sqrt();
        let f = self.rhs(e);
        let (y, _) = dopri5(&f, g.x_max, [1.0, -kappa], g.x_match, rtol, 1e-300, &mut |_, _| {})?;
        Ok(y)
    }

    /// Nodes of the outward solution on (x_min, x_max).
    fn node_count(&self, e: f64, g: &Grid, rtol: f64) -> Result<usize> {
        let mut n = 0;
        self.outward(e, g, g.x_max, rtol, &mut n)?;
        Ok(n)
    }

    /// Wronskian mismatch at x_match scaled to lie in [−1, 1].
    fn mismatch(&self, e: f64, g: &Grid, rtol: f64) -> Result<f64> {
        let mut n = 0;
        let l = self.outward(e, g, g.x_match, rtol, &mut n)?;
        let r = self.inward(e, g, rtol)?;
        let k = (self.k * ((self.v)(g.x_match) - e).abs()).sqrt().max(1e-8);
        let nl = (l[0] * l[0] + l[1] * l[1] / (k * k)).sqrt();
        let nr = (r[0] * r[0] + r[1] * r[1] / (k * k)).sqrt();
        Ok((l[0] * r[1] - l[1] * r[0]) / (k * nl * nr))
    }

    /// Levels with energy in [e_lo, e_hi], at most `n_max` of them.
    pub fn levels(&self, e_lo: f64, e_hi: f64, n_max: usize, cfg: &ShootingConfig) -> Result<Vec<ShotLevel>> {
        if !(e_lo < e_hi) {
            return Err(Error::Domain(format!("empty energy range [{e_lo}, {e_hi}]")));
        }
        let rtol = cfg.rtol;
        // the grid follows the energy so the forbidden region never overflows
        let count = |e: f64| -> Result<usize> { self.node_count(e, &self.grid(cfg, e)?, rtol) };
        // (E, nodes) samples, kept sorted by E
        let mut seen: Vec<(f64, usize)> = vec![(e_lo, count(e_lo)?), (e_hi, count(e_hi)?)];
        let (k_lo, k_hi) = (seen[0].1, seen[1].1);
        let mut out = vec![];
        for k in k_lo..k_hi.min(k_lo + n_max) {
            // tightest bracket with nodes(lo) ≤ k < nodes(hi)
            let mut lo = seen.iter().filter(|s| s.1 <= k).map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
            let mut hi = seen.iter().filter(|s| s.1 > k).map(|s| s.0).fold(f64::INFINITY, f64::min);
            let scale = lo.abs().max(hi.abs()).max(1.0);
            // isolate: nodes(lo) = k and nodes(hi) = k + 1
            let mut n_lo = seen.iter().find(|s| s.0 == lo).unwrap().1;
            let mut n_hi = seen.iter().find(|s| s.0 == hi).unwrap().1;
            let mut iter = 0;
            while (n_lo != k || n_hi != k + 1 || hi - lo > 1e-3 * scale) && iter < 200 {
                let mid = 0.5 * (lo + hi);
                let n = count(mid)?;
                seen.push((mid, n));
                if n <= k {
                    lo = mid;
                    n_lo = n;
                } else {
                    hi = mid;
                    n_hi = n;
                }
                iter += 1;
            }
            if n_lo != k || n_hi != k + 1 {
                return Err(Error::Bracketing(format!("could not isolate level {}", k + 1)));
            }
            let e = self.refine(lo, hi, &self.grid(cfg, hi)?, rtol, k)?;
            out.push(ShotLevel { n: k + 1, e, nodes: k });
        }
        Ok(out)
    }

    fn refine(&self, mut lo: f64, mut hi: f64, g: &Grid, rtol: f64, k: usize) -> Result<f64> {
        let mut f_lo = self.mismatch(lo, g, rtol)?;
        let mut f_hi = self.mismatch(hi, g, rtol)?;
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if (f_lo > 0.0) == (f_hi > 0.0) {
            // fall back to node bisection alone
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if self.node_count(mid, g, rtol)? <= k {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        // Illinois regula falsi
        let tol = 1e-13 * lo.abs().max(hi.abs()).max(1.0);
        let mut side = 0i32;
        for _ in 0..200 {
            let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if !(x > lo && x < hi) {
                x = 0.5 * (lo + hi);
            }
            let fx = self.mismatch(x, g, rtol)?;
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
            if hi - lo <= tol {
                return Ok(0.5 * (lo + hi));
            }
        }
        Err(Error::NonConvergence(format!("shooting refinement stalled in [{lo}, {hi}]")))
    }
}

/// Start data x^λ(1 + b x^p) for the regular solution.
pub fn power_start(lambda: f64, b: f64, p: f64) -> impl Fn(f64, f64) -> (f64, f64) {
    move |x, _e| {
        let xl = x.powf(lambda);
        let xp = x.powf(p);
        (xl * (1.0 + b * xp), xl * (lambda * (1.0 + b * xp) + b * p * xp) / x)
    }
}
