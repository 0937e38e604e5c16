//! Hermite functions near the turning point w ≈ -sqrt(2 nu) against their
//! transition-layer cosine form.

use hermite_heun::n3well::szego_approx;
use hermite_heun::specfun::{hermite_fn, HermiteOrder};

fn main() -> hermite_heun::Result<()> {
    println!("{:>7} {:>16} {:>16}", "a", "H_(a-1)(w)", "layer form");
    for k in 0..=30 {
        let a = 2.05 + 0.3 * k as f64;
        let (nu, w) = (a - 1.0, -(2.0 * (a - 2.0)).sqrt());
        let exact = hermite_fn(HermiteOrder::new(nu), w)?.value;
        println!("{a:>7.3} {exact:>16.6e} {:>16.6e}", szego_approx(nu, w)?);
    }
    // outside the layer the form is undefined
    println!("{:?}", szego_approx(3.0, -(10.0f64).sqrt()));
    Ok(())
}
