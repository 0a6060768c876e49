//! Genie view: the union bound conditioned on individual channel draws.
//!
//! Averaging the conditional bound over many Rayleigh realizations recovers
//! the closed-form fading-averaged bound.
//!
//! ```bash
//! cargo run --release --example conditional_bound
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uplink_noma::bound::{ber_bound, conditional_union_bound};
use uplink_noma::channel::{db_to_linear, sample_channel, Scenario, UserSpec};
use uplink_noma::constellation::ModulationKind;

fn main() {
    let scenario = Scenario {
        users: [(4, 0.0), (4, -3.0)]
            .into_iter()
            .map(|(mod_order, g)| UserSpec {
                mod_order,
                power: 1.0,
                channel_var: db_to_linear(g),
            })
            .collect(),
        antennas: 2,
        bit_energy: 1.0,
        noise_psd: 1.0,
    }
    .with_ebn0_db(6.0);

    let closed = ber_bound(0, &scenario, ModulationKind::Qam).unwrap();
    println!("two QPSK users, L = 2, Eb/N0 = 6 dB, target user 1");
    println!("closed-form averaged bound: {closed:.6}\n");

    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    println!("conditional bound on individual channel draws:");
    let mut mean = 0.0;
    let draws = 20_000;
    for i in 0..draws {
        let r = sample_channel(&mut rng, &scenario);
        let value = conditional_union_bound(0, &r, &scenario, ModulationKind::Qam).unwrap();
        mean += value;
        if i < 5 {
            let strength: f64 = r.effective[0].iter().map(|h| h.norm_sqr()).sum();
            println!("  draw {i}: ||h_1||^2 = {strength:.3} -> conditional bound {value:.6}");
        }
    }
    mean /= draws as f64;
    println!("  ...");
    println!("\nmean over {draws} draws: {mean:.6} (closed form {closed:.6})");
}
