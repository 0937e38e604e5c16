//! Exact levels of the half-line well against shooting, the large-n formula
//! and the transition-layer phase condition.

use hermite_heun::n3well::{asymptotic_energy, bound_states, phase_equation_solve, N3Well};

fn main() -> hermite_heun::Result<()> {
    for v2 in [-5.0, 5.0] {
        let well = N3Well::new(0.0, v2, 1.0, 1.0);
        println!("V2 = {v2}");
        println!("{:>3} {:>20} {:>10} {:>14} {:>10} {:>14}", "n", "E", "gap", "E_asym", "rel", "E_phase");
        for l in bound_states(&well, 8)?.levels {
            let ea = asymptotic_energy(&well, l.n)?;
            let ep = phase_equation_solve(&well, l.n).map_or("-".to_string(), |e| format!("{e:.8}"));
            println!("{:>3} {:>20.14} {:>10.1e} {:>14.8} {:>10.2e} {:>14}", l.n, l.e, l.oracle_gap, ea, (ea - l.e).abs() / l.e, ep);
        }
    }
    Ok(())
}
