//! The first three normalised bound states of the V2 = +5 well.

use hermite_heun::n3well::{bound_wavefunction, count_nodes, energy_state, norm_check, spectrum_roots, N3Well};

fn main() -> hermite_heun::Result<()> {
    let well = N3Well::new(0.0, 5.0, 1.0, 1.0);
    let xs: Vec<f64> = (0..=24).map(|k| 0.125 * k as f64).collect();
    let mut columns = vec![];
    for l in spectrum_roots(&well, 3)? {
        let st = energy_state(&well, l.e, well.bound_s())?;
        println!("n = {}: E = {:.12}, nodes = {}, norm = {:.12}", l.n, l.e, count_nodes(&well, &st)?, norm_check(&well, &st)?);
        columns.push(bound_wavefunction(&well, &st, &xs)?);
    }
    for (k, x) in xs.iter().enumerate() {
        println!("{x:>6.3} {:>12.6} {:>12.6} {:>12.6}", columns[0][k], columns[1][k], columns[2][k]);
    }
    Ok(())
}
