//! M(a, b, x) against exact rational summation in big-integer fixed point.

use hermite_heun::specfun::kummer_m;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FRAC_BITS: usize = 480;

fn to_f64(v: &BigInt) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let shift = (v.bits() as i64 - 60).max(0);
    (v >> shift as usize).to_f64().unwrap() * 2f64.powi((shift - FRAC_BITS as i64) as i32)
}

/// Σ (a)_k x^k / ((b)_k k!) with a = pa/4, b = pb/4, x = t/8.
fn exact_m(pa: i64, pb: i64, t: i64) -> f64 {
    let mut term = BigInt::from(1) << FRAC_BITS;
    let mut sum = term.clone();
    let mut k = 1i64;
    loop {
        let num = BigInt::from(pa + 4 * (k - 1)) * t;
        let den = BigInt::from(8 * (pb + 4 * (k - 1)) * k);
        term = term * num / den;
        sum += &term;
        if term.is_zero() || (k > 2 * (pa.abs() / 4 + t.abs()) + 20 && term.abs() < BigInt::from(1) << 8) {
            break;
        }
        k += 1;
    }
    to_f64(&sum)
}

#[test]
fn thousand_exact_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut checked, mut refused, mut worst) = (0, 0, 0.0f64);
    while checked < 1200 {
        let pa = rng.gen_range(-80..=80i64);
        let pb = rng.gen_range(1..=40i64);
        let t = rng.gen_range(-240..=240i64);
        let (a, b, x) = (pa as f64 / 4.0, pb as f64 / 4.0, t as f64 / 8.0);
        let want = exact_m(pa, pb, t);
        match kummer_m(a, b, x) {
            Ok(r) => {
                let err = (r.value - want).abs();
                assert!(err <= r.abs_err + 2.0 * f64::EPSILON * want.abs(), "M({a},{b},{x}) = {} vs {want}, estimate {:e}", r.value, r.abs_err);
                if want != 0.0 {
                    worst = worst.max(err / want.abs());
                }
                checked += 1;
            }
            Err(_) => refused += 1,
        }
    }
    println!("checked {checked}, refused {refused}, worst relative error {worst:e}");
    assert!(refused * 20 < checked);
}
