//! Hermite functions of real order, with the Kummer and Gamma pieces they
//! are built from.

use hermite_heun::specfun::{gamma, hermite_deriv, hermite_fn, hermite_fn_with_method, kummer_m, HermiteOrder};

fn main() -> hermite_heun::Result<()> {
    println!("Gamma(0.25) = {:.16}", gamma(0.25)?);
    let m = kummer_m(-2.7, 0.5, 9.0)?;
    println!("M(-2.7, 1/2, 9) = {:.16e} +- {:.1e}", m.value, m.abs_err);

    println!("{:>6} {:>6} {:>24} {:>24}  path", "nu", "w", "H_nu(w)", "dH/dw");
    for (nu, w) in [(3.0, 0.7), (0.5, 0.0), (2.6, -1.9), (-4.3, 2.2), (17.25, -5.5), (41.7, 9.0)] {
        let (h, path) = hermite_fn_with_method(HermiteOrder::new(nu), w)?;
        let d = hermite_deriv(HermiteOrder::new(nu), w)?;
        println!("{nu:>6} {w:>6} {:>24.16e} {:>24.16e}  {path:?}", h.value, d.value);
    }
    // integer orders are the classical polynomials: H_3(w) = 8w³ − 12w
    let w: f64 = 0.7;
    println!("H_3(0.7) = {} vs {}", hermite_fn(HermiteOrder::new(3.0), w)?.value, 8.0 * w.powi(3) - 12.0 * w);
    Ok(())
}
