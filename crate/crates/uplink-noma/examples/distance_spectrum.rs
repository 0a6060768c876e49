//! Inspect the exact integer distance spectrum behind the BER bound.
//!
//! Every error event's average SNR is `sum_k gamma_k c_k` with nonnegative
//! integer coefficients `c_k`; identical coefficient tuples merge exactly,
//! which is what keeps large scenarios tractable.
//!
//! ```bash
//! cargo run --release --example distance_spectrum
//! ```

use uplink_noma::bound::{
    composite_distance_vectors, gamma_spectrum, pam_half_distances, qam_half_distances,
};
use uplink_noma::cli::load_preset;
use uplink_noma::constellation::ModulationKind;

fn main() {
    // the small building blocks: per-axis integer gap matrices
    let pam = pam_half_distances(4).unwrap();
    println!("4-PAM cross-half-plane gaps (rows: wrong-half symbols, cols: tested):");
    for r in 0..pam.rows {
        let row: Vec<String> = (0..pam.cols).map(|c| pam.get(r, c).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }

    let qam = qam_half_distances(2).unwrap();
    println!("\nQPSK cross-half-plane gaps (Gaussian integers):");
    for r in 0..qam.rows {
        println!("  {}", qam.get(r, 0));
    }

    // a full composite assembly for two QPSK users
    let vectors = composite_distance_vectors(0, &[0, 0], &[4, 4], ModulationKind::Qam).unwrap();
    println!("\ncomposite distance vectors, two QPSK users, target user 1:");
    for (k, v) in vectors.iter().enumerate() {
        let entries: Vec<String> = v.iter().map(|d| d.to_string()).collect();
        println!("  user {}: [{}]", k + 1, entries.join(", "));
    }

    // the merged spectrum for a full scenario
    let scenario = load_preset("scenario-2").unwrap();
    let spectrum = gamma_spectrum(0, &scenario, ModulationKind::Qam).unwrap();
    println!(
        "\nscenario-2, user 1: {} raw terms merge into {} entries",
        spectrum.total_multiplicity,
        spectrum.len()
    );
    println!("first entries as `coefficients multiplicity` lines:");
    let mut buf = Vec::new();
    spectrum.write_text(&mut buf).unwrap();
    for line in String::from_utf8(buf).unwrap().lines().take(8) {
        println!("  {line}");
    }
    println!("  ...");
}
