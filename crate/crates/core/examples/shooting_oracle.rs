//! The shooting solver on the half-line oscillator, and the adaptive
//! integrator on u'' = -u.

use hermite_heun::oracle::{integrate, power_start, HalfLine, OdeProblem, ShootingConfig};

fn main() -> hermite_heun::Result<()> {
    let v = |x: f64| 2.0 * x * x;
    let start = power_start(1.0, 0.0, 2.0);
    let hl = HalfLine { v: &v, k: 2.0, start: &start };
    for l in hl.levels(0.5, 20.0, 4, &ShootingConfig::default())? {
        println!("level {}: E = {:.13} ({} nodes)", l.n, l.e, l.nodes);
    }

    let p = |_: f64| 0.0;
    let r = |_: f64| 1.0;
    let prob = OdeProblem { p: &p, r: &r, domain: (f64::NEG_INFINITY, f64::INFINITY), z_start: 0.0, initial: (0.0, 1.0) };
    let s = integrate(&prob, 10.0, 1e-12)?;
    println!("sin(10) = {:.15} vs {:.15}, estimate {:.1e}, {} steps", s.u, 10f64.sin(), s.err_estimate, s.steps);
    Ok(())
}
