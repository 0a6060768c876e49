//! Evaluate the closed-form BER upper bound for a built-in scenario.
//!
//! ```bash
//! cargo run --release --example bound_sweep
//! ```

use uplink_noma::bound::bound_sweep;
use uplink_noma::cli::load_preset;
use uplink_noma::constellation::ModulationKind;

fn main() {
    let scenario = load_preset("scenario-2").unwrap();
    let grid: Vec<f64> = (0..=10).map(|k| 4.0 * k as f64).collect();
    let sweep = bound_sweep(&scenario, ModulationKind::Qam, &grid).unwrap();

    println!("BER upper bound, three 16-QAM users, gains 0/-3/-6 dB, L = 4\n");
    for (n, (&terms, &raw)) in sweep
        .term_counts
        .iter()
        .zip(&sweep.raw_term_counts)
        .enumerate()
    {
        println!("user {}: {raw} raw terms merged into {terms}", n + 1);
    }
    println!("\n{:>8} {:>12} {:>12} {:>12}", "Eb/N0", "user 1", "user 2", "user 3");
    for (db, row) in grid.iter().zip(&sweep.values) {
        println!(
            "{db:>6} dB {:>12.3e} {:>12.3e} {:>12.3e}",
            row[0], row[1], row[2]
        );
    }
    println!("\nValues above 1 at low SNR are valid union-bound outputs, not probabilities.");
}
