//! Monte Carlo BER run with the joint maximum-likelihood detector.
//!
//! ```bash
//! cargo run --release --example simulate_jmld
//! ```

use uplink_noma::cli::load_preset;
use uplink_noma::montecarlo::{run_ber_with_progress, Detector, SimPlan, StopRule};

fn main() {
    let scenario = load_preset("scenario-2").unwrap();
    let mut plan = SimPlan::new(
        scenario,
        Detector::Jmld,
        vec![0.0, 4.0, 8.0, 12.0],
        0xC0FFEE,
    );
    plan.stop = StopRule {
        min_bit_errors: 200,
        max_symbols: 2_000_000,
    };

    println!("simulating scenario-2 (three 16-QAM users, L = 4) with JMLD...\n");
    let curve = run_ber_with_progress(&plan, |summary| {
        println!(
            "  {:>4} dB: {:>8} symbols, bit errors {:?}",
            summary.ebn0_db, summary.symbols, summary.bit_errors
        );
    })
    .unwrap();

    println!("\n{:>8} {:>5} {:>12} {:>24} {:>10}", "Eb/N0", "user", "BER", "95% interval", "errors");
    for p in &curve.points {
        println!(
            "{:>6} dB {:>5} {:>12.4e} [{:>10.4e}, {:>10.4e}] {:>10}",
            p.ebn0_db,
            p.user,
            p.ber,
            p.ci_lo.unwrap(),
            p.ci_hi.unwrap(),
            p.bit_errors.unwrap()
        );
    }
}
