use hermite_heun::cli::{render, Cell, Format, Table};
use hermite_heun::expansion::{q_polynomial, q_roots, Sign};
use hermite_heun::n3well::{self, N3Well};
use hermite_heun::oracle::wronskian;
use hermite_heun::specfun::{hermite_fn, HermiteOrder};
use proptest::prelude::*;

fn h(nu: f64, w: f64) -> f64 {
    hermite_fn(HermiteOrder::new(nu), w).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_recurrence(nu in -38.0f64..58.0, w in -11.0f64..11.0) {
        let (a, b, c) = (h(nu + 1.0, w), 2.0 * w * h(nu, w), 2.0 * nu * h(nu - 1.0, w));
        prop_assert!((a - b + c).abs() <= 1e-9 * a.abs().max(b.abs()).max(c.abs()));
    }

    #[test]
    fn q_roots_are_roots(n in 0usize..6, d in -3.0f64..3.0, e in -3.0f64..-0.1, a in -3.0f64..3.0) {
        let p = q_polynomial(n, d, e, a).unwrap();
        for r in q_roots(&p).unwrap().real {
            let scale: f64 = p.coeffs.iter().enumerate().map(|(k, c)| (c * r.q.powi(k as i32)).abs()).sum();
            prop_assert!(p.eval(r.q).abs() <= 1e-7 * scale);
        }
    }

    #[test]
    fn fundamental_solution_solves_the_well(v2 in prop_oneof![-6.0f64..-0.5, 0.5f64..6.0], de in 0.05f64..3.0, x in 0.05f64..1.5) {
        let well = N3Well::new(0.7, v2, 1.0, 1.0);
        let st = n3well::energy_state(&well, well.v0 + de * well.energy_scale(), well.bound_s()).unwrap();
        if let Ok(r) = n3well::schrodinger_residual(&well, &st, x, Sign::Plus) {
            prop_assert!(r.abs() <= 1e-7);
        }
    }

    #[test]
    fn branches_are_independent(v2 in prop_oneof![-6.0f64..-0.5, 0.5f64..6.0], de in 0.1f64..3.0, x in 0.2f64..1.0) {
        let well = N3Well::new(0.0, v2, 1.0, 1.0);
        let st = n3well::energy_state(&well, de * well.energy_scale(), well.bound_s()).unwrap();
        let f = |s: Sign| move |x: f64| n3well::fundamental_psi_full(&well, &st, x, s).unwrap().psi;
        let (fp, fm) = (f(Sign::Plus), f(Sign::Minus));
        let w = wronskian(&fp, &fm, x, 1e-3 * x);
        let scale = (fp(x).abs() + fm(x).abs()).powi(2) / x;
        prop_assert!(w.abs() > 1e-6 * scale);
    }

    #[test]
    fn json_round_trips_exactly(xs in prop::collection::vec(-1e300f64..1e300, 1..20)) {
        let mut t = Table::new(&["x"]);
        for &x in &xs {
            t.push(vec![Cell::Num(x)]);
        }
        let v: serde_json::Value = serde_json::from_str(&render(&t, Format::Json).unwrap()).unwrap();
        for (k, &x) in xs.iter().enumerate() {
            prop_assert_eq!(v[k]["x"].as_f64().unwrap(), x);
        }
    }
}

#[test]
fn energy_offset_shifts_levels() {
    let a = n3well::spectrum_roots(&N3Well::new(0.0, 5.0, 1.0, 1.0), 5).unwrap();
    let b = n3well::spectrum_roots(&N3Well::new(7.25, 5.0, 1.0, 1.0), 5).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((y.e - x.e - 7.25).abs() <= 1e-10 * y.e);
    }
}

#[test]
fn shooter_ignores_the_match_point() {
    use hermite_heun::oracle::shoot_levels;
    let well = N3Well::new(0.0, -5.0, 1.0, 1.0);
    let mut out = vec![];
    for xm in [0.2, 0.35, 0.6] {
        let cfg = hermite_heun::oracle::ShootingConfig { x_match: Some(xm), ..n3well::oracle_config(&well) };
        out.push(shoot_levels(&well, (9.0, 40.0), 3, &cfg).unwrap());
    }
    for k in 0..3 {
        for o in &out[1..] {
            assert!((o[k].e - out[0][k].e).abs() <= 1e-7 * out[0][k].e);
        }
    }
}

#[test]
fn phase_levels_track_the_exact_ones() {
    let well = N3Well::new(0.0, -5.0, 1.0, 1.0);
    let exact = n3well::spectrum_roots(&well, 10).unwrap();
    let mut prev = 0.0;
    for l in &exact[1..] {
        let e = n3well::phase_equation_solve(&well, l.n).unwrap();
        assert!((e - l.e).abs() <= 1e-2 * l.e);
        assert!(e > prev);
        prev = e;
    }
    assert!(n3well::phase_equation_solve(&N3Well::new(0.0, 5.0, 1.0, 1.0), 2).is_err());
}
