//! Reduction of a Schrodinger potential to Heun form, here the half-line
//! well with m1 = -1/2.

use hermite_heun::expansion::{q_polynomial, Sign};
use hermite_heun::n3well::N3Well;
use hermite_heun::schrod::{psi_eval, reduce, schrodinger_residual, Solver};

fn main() -> hermite_heun::Result<()> {
    let well = N3Well::new(0.0, -5.0, 1.0, 1.0);
    let pc = well.to_potential_class();
    for e in [5.0, 20.0, 45.0] {
        let red = reduce(&pc, e, 1.0, 1.0, -1, 1)?;
        let b = red.bch;
        let p = q_polynomial(3, b.delta, b.eps, b.alpha)?;
        println!("E = {e}: gamma = {}, q = {:.12}, cubic-in-q residual {:.1e}", b.gamma, b.q, p.eval(b.q));
        println!("   alpha0 = {}, alpha1 = {:.6}, alpha2 = {:.6}", red.a0, red.a1, red.a2);
        for z in [0.3, 1.0, 2.0] {
            let (psi, _) = psi_eval(&red, &pc, z, Solver::FiniteSum, Sign::Plus)?;
            let r = schrodinger_residual(&red, &pc, z, Solver::FiniteSum, Sign::Plus)?;
            println!("   z = {z}: psi = {psi:>14.6e}, residual {r:.1e}");
        }
    }
    Ok(())
}
