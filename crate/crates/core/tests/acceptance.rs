//! Acceptance suite: one line per criterion, with its runtime budget.
//!
//! Criteria 8 and 10 fail as specified and are listed in `EXPECTED_FAIL`;
//! any other failure makes the target exit non-zero.

use std::time::{Duration, Instant};

use hermite_heun::bch::{frobenius_eval, BchParams};
use hermite_heun::expansion::{check_termination, q_polynomial, q_roots, sum_residual, terminated_expansion, Sign};
use hermite_heun::n3well::{self, N3Well};
use hermite_heun::oracle::{bch_ode_solution, fd_derivative, power_start, shoot_levels, HalfLine, ShootingConfig};
use hermite_heun::schrod::reduce;
use hermite_heun::specfun::{hermite_fn, HermiteOrder, NU_MAX, NU_MIN};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXPECTED_FAIL: &[u32] = &[8, 10];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn h(nu: f64, w: f64) -> f64 {
    hermite_fn(HermiteOrder::new(nu), w).unwrap().value
}

fn close(a: &[f64], b: &[f64], rtol: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1.0)).fold(0.0, f64::max) / rtol
}

fn c1_qpoly() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (d, e, a): (f64, f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..-0.1), rng.gen_range(-3.0..3.0));
        let want: [Vec<f64>; 4] = [
            vec![0.0, 1.0],
            vec![a, -d, 1.0],
            vec![-4.0 * a * d, 2.0 * (d * d + e + 2.0 * a), -3.0 * d, 1.0],
            vec![
                9.0 * a * (2.0 * d * d + 2.0 * e + a),
                -6.0 * d * (d * d + 3.0 * e + 5.0 * a),
                11.0 * d * d + 10.0 * e + 10.0 * a,
                -6.0 * d,
                1.0,
            ],
        ];
        for (n, w) in want.iter().enumerate() {
            let p = q_polynomial(n, d, e, a).unwrap();
            worst = worst.max(close(&p.coeffs, w, 1.0));
        }
    }
    outcome(worst <= 1e-12, format!("max coefficient error {worst:.2e} (tol 1e-12) over 200 draws x N=0..3"))
}

fn c2_termination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut roots_seen, mut bad) = (0usize, 0usize);
    let (mut worst_tail, mut worst_res) = (0.0f64, 0.0f64);
    for _ in 0..500 {
        let (d, e, a) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..-0.1), rng.gen_range(-3.0..3.0));
        let n = rng.gen_range(0..4usize);
        let roots = q_roots(&q_polynomial(n, d, e, a).unwrap()).unwrap();
        for r in roots.real {
            roots_seen += 1;
            let p = BchParams::new(-(n as f64), d, e, a, r.q);
            let t = check_termination(&p, Sign::Plus).unwrap();
            worst_tail = worst_tail.max(t.c_tail.unwrap_or(f64::INFINITY));
            let Some(exp) = terminated_expansion(p, Sign::Plus).unwrap() else {
                bad += 1;
                continue;
            };
            for k in 0..20 {
                let z = 0.05 + 4.95 * k as f64 / 19.0;
                match sum_residual(&exp, z) {
                    Ok(res) => worst_res = worst_res.max(res.abs()),
                    Err(_) => worst_res = f64::INFINITY,
                }
            }
        }
    }
    let pass = bad == 0 && worst_tail <= 1e-10 && worst_res <= 1e-8;
    outcome(pass, format!("{roots_seen} real roots, {bad} non-terminating, max tail {worst_tail:.2e} (1e-10), max residual {worst_res:.2e} (1e-8)"))
}

fn c3_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p = BchParams::new(
            rng.gen_range(0.5..3.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let z = rng.gen_range(0.1..3.0);
        let f = frobenius_eval(p, z).unwrap();
        let o = bch_ode_solution(&p, z, 1e-12).unwrap();
        let scale = f.u.abs().max(z * f.du.abs());
        worst = worst.max((f.u - o.u).abs() / scale);
    }
    outcome(worst <= 1e-8, format!("max relative difference {worst:.2e} (tol 1e-8) over 200 samples"))
}

/// H_n(w) from the exact integer recurrence for 2^{ns}H_n(m/2^s), where
/// m/2^s is the binary value of w.
fn exact_hermite_poly(n: usize, w: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let bits = w.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let mant = if biased == 0 { frac << 1 } else { frac | (1u64 << 52) };
    let e = if biased == 0 { -1075 } else { biased - 1075 };
    let mut m = BigInt::from(mant);
    if w < 0.0 {
        m = -m;
    }
    let s = if e >= 0 {
        m <<= e as usize;
        0
    } else {
        (-e) as usize
    };
    let four_s = BigInt::from(1) << (2 * s);
    let (mut g0, mut g1) = (BigInt::from(1), BigInt::from(2) * &m);
    for k in 1..n {
        let g2 = BigInt::from(2) * &m * &g1 - BigInt::from(2 * k) * &four_s * &g0;
        g0 = g1;
        g1 = g2;
    }
    if g1.is_zero() {
        return 0.0;
    }
    // keep the top 60 bits, then scale by 2^{shift − ns}
    let shift = (g1.bits() as i64 - 60).max(0);
    let top = (&g1 >> shift as usize).to_f64().unwrap();
    top * 2f64.powi((shift - (n * s) as i64) as i32)
}

fn c4_hermite() -> Outcome {
    let (mut d_worst, mut r_worst, mut p_worst) = (0.0f64, 0.0f64, 0.0f64);
    let nus: Vec<f64> = (0..=27).map(|k| NU_MIN + 1.0 + 3.61 * k as f64).filter(|&v| v + 1.0 <= NU_MAX).collect();
    let ws: Vec<f64> = (0..=20).map(|k| -11.3 + 1.13 * k as f64).collect();
    for &nu in &nus {
        for &w in &ws {
            let hv = h(nu, w);
            let id = 2.0 * nu * h(nu - 1.0, w);
            let fd = fd_derivative(&|x| h(nu, x), w, 1, 1e-2);
            d_worst = d_worst.max((fd - id).abs() / id.abs().max(hv.abs()));
            let (hp, hm) = (h(nu + 1.0, w), h(nu - 1.0, w));
            let rec = hp - 2.0 * w * hv + 2.0 * nu * hm;
            r_worst = r_worst.max(rec.abs() / hp.abs().max((2.0 * w * hv).abs()).max((2.0 * nu * hm).abs()));
        }
    }
    for n in 0..=40usize {
        for &w in &ws {
            let exact = exact_hermite_poly(n, w);
            let got = h(n as f64, w);
            let scale = exact.abs().max(f64::MIN_POSITIVE);
            p_worst = p_worst.max((got - exact).abs() / scale);
        }
    }
    let pass = d_worst <= 1e-6 && r_worst <= 1e-9 && p_worst <= 1e-12;
    outcome(
        pass,
        format!("derivative {d_worst:.2e} (1e-6), recurrence {r_worst:.2e} (1e-9), integer orders {p_worst:.2e} (1e-12); {} nu x {} w", nus.len(), ws.len()),
    )
}

fn c5_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut g_worst, mut q_worst) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let mut v2: f64 = rng.gen_range(-6.0..6.0);
        if v2.abs() < 0.1 {
            v2 = 0.1f64.copysign(v2);
        }
        let well = N3Well { v0: rng.gen_range(-5.0..5.0), v2, mass: rng.gen_range(0.5..2.0), hbar: rng.gen_range(0.5..2.0), x0: 0.0 };
        let e = rng.gen_range(-20.0..60.0);
        let red = reduce(&well.to_potential_class(), e, well.mass, well.hbar, -1, 1).unwrap();
        let b = red.bch;
        g_worst = g_worst.max((b.gamma + 3.0).abs());
        let p = q_polynomial(3, b.delta, b.eps, b.alpha).unwrap();
        let scale: f64 = p.coeffs.iter().enumerate().map(|(k, c)| (c * b.q.powi(k as i32)).abs()).sum();
        q_worst = q_worst.max(p.eval(b.q).abs() / scale);
    }
    outcome(g_worst <= 1e-9 && q_worst <= 1e-9, format!("|gamma + 3| {g_worst:.2e}, q-equation residual {q_worst:.2e} (tol 1e-9) over 100 draws"))
}

fn c6_a2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let well = N3Well { v0: rng.gen_range(-5.0..5.0), v2: -rng.gen_range(0.1..6.0), mass: rng.gen_range(0.5..2.0), hbar: rng.gen_range(0.5..2.0), x0: 0.0 };
        let st = n3well::energy_state(&well, rng.gen_range(-20.0..80.0), 1).unwrap();
        let (_, a2) = n3well::two_term_reduction(&st);
        let [c0, c1, _, c3] = st.c;
        let a = st.a;
        let scale = (c0 * st.y0).abs().max(((a - 2.0) * c1).abs()).max((2.0 * (2.0 - 3.0 * a + a * a) * c3).abs());
        worst = worst.max(a2.abs() / scale);
    }
    outcome(worst <= 1e-10, format!("max |A2| / max|term| = {worst:.2e} (tol 1e-10) over 1000 draws"))
}

fn c7_spectrum() -> Outcome {
    let mut worst = 0.0f64;
    let mut msg = vec![];
    for v2 in [-5.0, 5.0] {
        match n3well::bound_states(&N3Well::new(0.0, v2, 1.0, 1.0), 8) {
            Ok(r) => {
                let g = r.levels.iter().map(|l| l.oracle_gap).fold(0.0, f64::max);
                worst = worst.max(g);
                msg.push(format!("V2={v2}: E1..E8 = {:.6}..{:.6}, max gap {g:.2e}", r.levels[0].e, r.levels[7].e));
            }
            Err(e) => {
                worst = f64::INFINITY;
                msg.push(format!("V2={v2}: {e}"));
            }
        }
    }
    outcome(worst <= 1e-6, format!("{} (tol 1e-6)", msg.join("; ")))
}

fn c8_asymptotic() -> Outcome {
    let mut worst = (0.0f64, 0.0, 0);
    let mut over = vec![];
    for v2 in [-5.0, 5.0] {
        let well = N3Well::new(0.0, v2, 1.0, 1.0);
        let levels = n3well::spectrum_roots(&well, 10).unwrap();
        for l in &levels[1..] {
            let rel = (n3well::asymptotic_energy(&well, l.n).unwrap() - l.e).abs() / l.e;
            if rel > worst.0 {
                worst = (rel, v2, l.n);
            }
            if rel > 2.5e-3 {
                over.push(format!("V2={v2} n={}: {rel:.3e}", l.n));
            }
        }
    }
    let detail = format!("max relative error {:.3e} at V2={}, n={} (tol 2.5e-3)", worst.0, worst.1, worst.2);
    if over.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; above bound: {}", over.join(", ")))
    }
}

fn c9_wavefunctions() -> Outcome {
    let well = N3Well::new(0.0, 5.0, 1.0, 1.0);
    let levels = n3well::spectrum_roots(&well, 3).unwrap();
    let shot = shoot_levels(&well, (n3well::potential_minimum(&well).unwrap().1, levels[2].e + 1.0), 3, &n3well::oracle_config(&well)).unwrap();
    let mut ok = true;
    let mut parts = vec![];
    for (l, s) in levels.iter().zip(&shot) {
        let st = n3well::energy_state(&well, l.e, well.bound_s()).unwrap();
        let norm = n3well::norm_check(&well, &st).unwrap();
        let nodes = n3well::count_nodes(&well, &st).unwrap();
        let nrm = n3well::normalization(&well, &st).unwrap();
        let ends = [well.x0 + 1e-4 * well.length_scale(), nrm.x_cut * (1.0 - 1e-9)];
        let psi = n3well::bound_wavefunction(&well, &st, &ends).unwrap();
        let end_max = psi[0].abs().max(psi[1].abs());
        let good = (norm - 1.0).abs() <= 1e-6 && end_max < 1e-6 && nodes == l.n - 1 && s.nodes == nodes;
        ok &= good;
        parts.push(format!("n={}: norm-1 {:.1e}, nodes {nodes} (oracle {}), |psi| at ends {end_max:.1e}", l.n, norm - 1.0, s.nodes));
    }
    outcome(ok, parts.join("; "))
}

/// Zeros of f on (lo, ∞) by scanning with step `h` and bisecting.
fn zeros(f: &dyn Fn(f64) -> Option<f64>, lo: f64, h: f64, count: usize, stop: f64) -> Vec<Option<f64>> {
    let mut out = vec![];
    let mut a = lo;
    let mut fa = f(a);
    while out.len() < count && a < stop {
        let b = a + h;
        let fb = f(b);
        if let (Some(x), Some(y)) = (fa, fb) {
            if (x > 0.0) != (y > 0.0) {
                let (mut l, mut r) = (a, b);
                for _ in 0..60 {
                    let m = 0.5 * (l + r);
                    if (f(m).unwrap() > 0.0) == (x > 0.0) {
                        l = m;
                    } else {
                        r = m;
                    }
                }
                out.push(Some(0.5 * (l + r)));
            }
        }
        a = b;
        fa = fb;
    }
    out.resize(count, None);
    out
}

fn szego_zero_match(order_arg: fn(f64) -> (f64, f64)) -> (usize, f64, usize) {
    let exact = |a: f64| {
        let (nu, w) = order_arg(a);
        Some(h(nu, w))
    };
    let approx = |a: f64| {
        let (nu, w) = order_arg(a);
        n3well::szego_approx(nu, w).ok()
    };
    let ze = zeros(&exact, 2.0 + 1e-6, 1e-3, 10, 40.0);
    let za = zeros(&approx, 2.0 + 1e-6, 1e-3, 10, 40.0);
    let found = za.iter().filter(|z| z.is_some()).count();
    let mut worst = 0.0f64;
    for (e, a) in ze.iter().zip(&za) {
        worst = worst.max(match (e, a) {
            (Some(e), Some(a)) => (e - a).abs(),
            _ => f64::INFINITY,
        });
    }
    (ze.iter().filter(|z| z.is_some()).count(), worst, found)
}

fn c10_szego() -> Outcome {
    let (ne, worst, found) = szego_zero_match(|a| (a - 2.0, -(2.0 * a).sqrt()));
    let (ne2, worst2, found2) = szego_zero_match(|a| (a - 1.0, -(2.0 * (a - 2.0)).sqrt()));
    let companion = format!("companion H_(a-1)(-sqrt(2(a-2))): {ne2} exact, {found2} approximate zeros, max |da| {worst2:.3e}");
    let pass = ne == 10 && found == 10 && worst <= 0.05;
    let detail = if found == 0 {
        format!("H_(a-2)(-sqrt(2a)): {ne} exact zeros, transition-layer form undefined for every a (w^2 = 2a > 2nu = 2a-4); {companion}")
    } else {
        format!("H_(a-2)(-sqrt(2a)): max |da| {worst:.3e} (tol 0.05); {companion}")
    };
    outcome(pass, detail)
}

fn c11_oscillator() -> Outcome {
    let v = |x: f64| 2.0 * x * x;
    let start = power_start(1.0, 0.0, 2.0);
    let lv = HalfLine { v: &v, k: 2.0, start: &start }.levels(0.5, 12.0, 3, &ShootingConfig::default()).unwrap();
    let err = lv.iter().zip([3.0, 7.0, 11.0]).map(|(l, w)| (l.e - w).abs() / w).fold(0.0, f64::max);
    outcome(lv.len() == 3 && err <= 1e-7, format!("levels {:?}, max relative error {err:.2e} (tol 1e-7)", lv.iter().map(|l| l.e).collect::<Vec<_>>()))
}

/// (id, name, budget in seconds, check)
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "q-polynomial exactness", 1, c1_qpoly),
        (2, "termination soundness", 60, c2_termination),
        (3, "series vs ODE oracle", 60, c3_oracle),
        (4, "Hermite identities", 60, c4_hermite),
        (5, "reduction of the well", 10, c5_reduction),
        (6, "A2 identity", 10, c6_a2),
        (7, "spectrum vs shooting", 120, c7_spectrum),
        (8, "asymptotic error bound", 120, c8_asymptotic),
        (9, "wave functions", 60, c9_wavefunctions),
        (10, "transition-layer zeros", 30, c10_szego),
        (11, "shooter self-test", 30, c11_oscillator),
    ];
    let mut unexpected = vec![];
    for (id, name, budget, run) in criteria {
        let t = Instant::now();
        let o = run();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(budget);
        let pass = o.pass && in_time;
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag} {name}: {} [{:.2}s of {budget}s]", o.detail, dt.as_secs_f64());
        if !pass && !EXPECTED_FAIL.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
