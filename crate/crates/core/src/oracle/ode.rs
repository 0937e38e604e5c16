//! Dormand–Prince 5(4) integration of u'' + p(z) u' + r(z) u = 0.

use crate::error::{Error, Result};

/// A second-order linear ODE u'' + p u' + r u = 0 with data at `z_start`.
pub struct OdeProblem<'a> {
    pub p: &'a dyn Fn(f64) -> f64,
    pub r: &'a dyn Fn(f64) -> f64,
    /// Open interval on which p and r are finite.
    pub domain: (f64, f64),
    pub z_start: f64,
    pub initial: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSolution {
    pub u: f64,
    pub du: f64,
    /// |difference| between runs at tol and tol/2, doubled.
    pub err_estimate: f64,
    pub steps: usize,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub type Rhs<'a> = dyn Fn(f64, [f64; 2]) -> [f64; 2] + 'a;

/// One Dormand–Prince step; returns (y_new, error vector).
fn step(f: &Rhs, x: f64, y: [f64; 2], h: f64) -> ([f64; 2], [f64; 2]) {
    let mut k = [[0.0f64; 2]; 7];
    k[0] = f(x, y);
    for s in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            ys[0] += h * A[s][j] * kj[0];
            ys[1] += h * A[s][j] * kj[1];
        }
        k[s] = f(x + C[s] * h, ys);
    }
    // the seventh stage is evaluated at y_new (FSAL)
    let mut y_new = y;
    for j in 0..6 {
        y_new[0] += h * A[6][j] * k[j][0];
        y_new[1] += h * A[6][j] * k[j][1];
    }
    let mut err = [0.0; 2];
    for (j, kj) in k.iter().enumerate() {
        err[0] += h * E[j] * kj[0];
        err[1] += h * E[j] * kj[1];
    }
    (y_new, err)
}

/// Adaptive integration from x0 to x1. The error of each step is measured
/// against atol + rtol·max(|y|, |y_new|, 10⁻³·max seen |y|) per component.
/// `observer` sees every accepted step.
pub fn dopri5(
    f: &Rhs,
    x0: f64,
    y0: [f64; 2],
    x1: f64,
    rtol: f64,
    atol: f64,
    observer: &mut dyn FnMut(f64, [f64; 2]),
) -> Result<([f64; 2], usize)> {
    let dir = (x1 - x0).signum();
    let span = (x1 - x0).abs();
    if span == 0.0 {
        return Ok((y0, 0));
    }
    let mut x = x0;
    let mut y = y0;
    let mut ymax = [y0[0].abs(), y0[1].abs()];
    // first step: a small fraction of the distance to the nearer of the
    // origin and the end point, so a singular origin is approached gently
    let mut h = dir * (1e-2 * x0.abs().max(1e-3 * span)).min(span) * rtol.powf(0.2).min(1.0);
    let mut steps = 0usize;
    let mut rejects = 0usize;
    loop {
        if (x1 - x) * dir <= 0.0 {
            return Ok((y, steps));
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        let (yn, err) = step(f, x, y, h);
        let mut norm = 0.0f64;
        for i in 0..2 {
            let sc = atol + rtol * y[i].abs().max(yn[i].abs()).max(1e-3 * ymax[i]);
            let e = if sc > 0.0 { err[i] / sc } else { 0.0 };
            norm += e * e;
        }
        let norm = (0.5 * norm).sqrt();
        if !norm.is_finite() || !yn[0].is_finite() || !yn[1].is_finite() {
            h *= 0.2;
            rejects += 1;
        } else if norm <= 1.0 {
            x += h;
            y = yn;
            ymax = [ymax[0].max(y[0].abs()), ymax[1].max(y[1].abs())];
            steps += 1;
            observer(x, y);
            let fac = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            h *= (0.9 * norm.powf(-0.2)).clamp(0.1, 0.9);
            rejects += 1;
        }
        if h.abs() < 1e-14 * x.abs().max(1e-300) || rejects > 100_000 {
            return Err(Error::StepUnderflow { at: x });
        }
    }
}

/// Classical fixed-step fifth-order solution with `n` equal steps.
pub fn dopri5_fixed(f: &Rhs, x0: f64, y0: [f64; 2], x1: f64, n: usize) -> [f64; 2] {
    let h = (x1 - x0) / n as f64;
    let mut y = y0;
    for i in 0..n {
        y = step(f, x0 + i as f64 * h, y, h).0;
    }
    y
}

fn problem_rhs<'a>(prob: &'a OdeProblem<'a>) -> impl Fn(f64, [f64; 2]) -> [f64; 2] + 'a {
    move |z, y| [y[1], -(prob.p)(z) * y[1] - (prob.r)(z) * y[0]]
}

fn check_target(prob: &OdeProblem, z_target: f64) -> Result<()> {
    let (lo, hi) = prob.domain;
    let inside = |z: f64| z > lo && z < hi;
    if !inside(prob.z_start) || !inside(z_target) {
        return Err(Error::Domain(format!(
            "integration from {} to {z_target} leaves the domain ({lo}, {hi})",
            prob.z_start
        )));
    }
    Ok(())
}

/// (u, u') at `z_target` with per-step tolerance `tol`; the global error is
/// estimated from a second run at tol/2.
pub fn integrate(prob: &OdeProblem, z_target: f64, tol: f64) -> Result<OdeSolution> {
    check_target(prob, z_target)?;
    let f = problem_rhs(prob);
    let y0 = [prob.initial.0, prob.initial.1];
    let (y1, _) = dopri5(&f, prob.z_start, y0, z_target, tol, tol * 1e-3, &mut |_, _| {})?;
    let (y2, steps) = dopri5(&f, prob.z_start, y0, z_target, 0.5 * tol, 0.5e-3 * tol, &mut |_, _| {})?;
    let err = 2.0 * (y1[0] - y2[0]).abs().max((y1[1] - y2[1]).abs());
    Ok(OdeSolution { u: y2[0], du: y2[1], err_estimate: err, steps })
}

/// Fixed-step run with `n_steps` equal steps; for convergence-order checks.
pub fn integrate_fixed(prob: &OdeProblem, z_target: f64, n_steps: usize) -> Result<(f64, f64)> {
    check_target(prob, z_target)?;
    let f = problem_rhs(prob);
    let y = dopri5_fixed(&f, prob.z_start, [prob.initial.0, prob.initial.1], z_target, n_steps);
    Ok((y[0], y[1]))
}
