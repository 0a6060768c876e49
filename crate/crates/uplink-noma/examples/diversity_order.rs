//! Show that the bound's high-SNR slope equals the antenna count.
//!
//! ```bash
//! cargo run --release --example diversity_order
//! ```

use uplink_noma::bound::ber_bound;
use uplink_noma::channel::{db_to_linear, Scenario, UserSpec};
use uplink_noma::constellation::ModulationKind;
use uplink_noma::montecarlo::{fit_diversity_slope, run_ber, Detector, SimPlan, StopRule};

fn scenario(antennas: usize) -> Scenario {
    Scenario {
        users: [(16, 0.0), (16, -3.0), (16, -6.0)]
            .into_iter()
            .map(|(mod_order, g)| UserSpec {
                mod_order,
                power: 1.0,
                channel_var: db_to_linear(g),
            })
            .collect(),
        antennas,
        bit_energy: 1.0,
        noise_psd: 1.0,
    }
}

fn main() {
    println!("analytical bound slope between 50 and 60 dB (decades of BER per decade of SNR):\n");
    for l in [1usize, 2, 4] {
        let sc = scenario(l);
        print!("  L = {l}:");
        for user in 0..3 {
            let b50 = ber_bound(user, &sc.with_ebn0_db(50.0), ModulationKind::Qam).unwrap();
            let b60 = ber_bound(user, &sc.with_ebn0_db(60.0), ModulationKind::Qam).unwrap();
            print!("  user {} slope {:+.4}", user + 1, b60.log10() - b50.log10());
        }
        println!();
    }

    println!("\nsimulated slope for L = 1 over 30-40 dB:");
    let mut plan = SimPlan::new(scenario(1), Detector::Jmld, vec![30.0, 40.0], 4);
    plan.stop = StopRule {
        min_bit_errors: 400,
        max_symbols: 1_000_000,
    };
    let curve = run_ber(&plan).unwrap();
    for user in 1..=3 {
        let slope = fit_diversity_slope(&curve, user, (30.0, 40.0)).unwrap();
        println!("  user {user}: {slope:+.3} (full diversity would be -1)");
    }
}
