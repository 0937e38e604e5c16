//! Exponent-0 series solution of the bi-confluent Heun equation, checked
//! against direct integration.

use hermite_heun::bch::{bch_residual, frobenius_eval, BchParams};
use hermite_heun::oracle::bch_ode_solution;

fn main() -> hermite_heun::Result<()> {
    let p = BchParams::new(1.5, 0.4, -0.8, 0.3, -0.6);
    println!("{:>5} {:>22} {:>22} {:>10} {:>10}", "z", "u (series)", "u (ODE)", "diff", "residual");
    for z in [0.25, 0.5, 1.0, 2.0, 3.0] {
        let s = frobenius_eval(p, z)?;
        let o = bch_ode_solution(&p, z, 1e-12)?;
        let r = bch_residual(&p, s.u, s.du, s.ddu, z)?;
        println!("{z:>5} {:>22.15e} {:>22.15e} {:>10.1e} {:>10.1e}", s.u, o.u, (s.u - o.u).abs(), r);
    }
    Ok(())
}
