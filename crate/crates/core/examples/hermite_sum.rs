//! A terminated Hermite-function sum, its residual in the Heun equation,
//! and partial sums of a non-terminating one.

use hermite_heun::bch::BchParams;
use hermite_heun::expansion::{expansion_coeffs, q_polynomial, q_roots, sum_residual, terminated_expansion, truncation_study, Sign};

fn main() -> hermite_heun::Result<()> {
    let (n, delta, eps, alpha) = (2, 0.8, -1.2, 0.5);
    let q = q_roots(&q_polynomial(n, delta, eps, alpha)?)?.real[0].q;
    let p = BchParams::new(-(n as f64), delta, eps, alpha, q);
    let exp = terminated_expansion(p, Sign::Plus)?.expect("q is a root");
    println!("alpha0 = {}, coefficients {:?}", exp.alpha0, exp.coeffs);
    for z in [0.1, 0.5, 1.0, 2.5, 5.0] {
        let v = exp.eval_full(z)?;
        println!("z = {z:>4}: u = {:>22.15e}, residual {:.1e}", v.u, sum_residual(&exp, z)?);
    }

    let open = BchParams::new(0.7, 0.8, -1.2, 0.5, 0.3);
    let c = expansion_coeffs(open, Sign::Plus, 6)?;
    println!("non-terminating coefficients {:?}", c.coeffs);
    let study = truncation_study(open, Sign::Plus, &[0.5, 1.0, 2.0], 12)?;
    for (k, r) in &study.rows {
        println!("  {} terms: max residual {r:.2e}", k + 1);
    }
    println!("monotone: {}", study.monotone);
    Ok(())
}
