//! Accessory-parameter polynomials and the q values that make the Hermite
//! expansion finite.

use hermite_heun::bch::BchParams;
use hermite_heun::expansion::{check_termination, q_polynomial, q_roots, Sign};

fn main() -> hermite_heun::Result<()> {
    let (delta, eps, alpha) = (1.3, -0.7, 0.45);
    for n in 0..=4 {
        let p = q_polynomial(n, delta, eps, alpha)?;
        let roots = q_roots(&p)?;
        println!("N = {n}: coefficients {:?}", p.coeffs);
        for r in &roots.real {
            let t = check_termination(&BchParams::new(-(n as f64), delta, eps, alpha, r.q), Sign::Plus)?;
            println!("   q = {:>20.15} (x{})  terminates: {}  tail {:.1e}", r.q, r.multiplicity, t.is_terminating, t.c_tail.unwrap_or(f64::NAN));
        }
        for c in &roots.complex {
            println!("   q = {c} (complex, not admissible)");
        }
    }
    Ok(())
}
