//! Multi-user uplink NOMA link-level simulator and BER bound evaluator.
//!
//! Several single-antenna users transmit Gray-coded square M-QAM symbols
//! simultaneously to an L-antenna base station over i.i.d. Rayleigh fading.
//! The receiver separates them either with a joint maximum-likelihood
//! detector (JMLD), which searches the product of all users' constellations,
//! or with a successive interference cancellation detector (SICD) benchmark.
//!
//! The crate provides:
//!
//! - [`constellation`]: Gray-coded I-PAM and square M-QAM constellations with
//!   bit-energy normalization.
//! - [`channel`]: Rayleigh channel sampling and synthesis of the superimposed
//!   received vector.
//! - [`detection`]: exhaustive JMLD and the MRC-SIC benchmark.
//! - [`bound`]: a closed-form union upper bound on each user's BER, built
//!   from exact integer distance spectra and an analytical fading average.
//! - [`montecarlo`]: seeded, parallel, deterministic BER simulation over
//!   Eb/N0 sweeps with stopping rules and Wilson confidence intervals.
//! - [`cli`]: scenario presets, a plain-text config format, and CSV/JSON
//!   curve emission backing the `noma` binary.
//!
//! Start with the runnable examples; each one exercises a single capability
//! end to end:
//!
//! ```bash
//! cargo run --release --example constellations     # geometry, Gray labels, energies
//! cargo run --release --example bound_sweep        # closed-form BER bound over a grid
//! cargo run --release --example simulate_jmld      # Monte Carlo run with intervals
//! cargo run --release --example compare_detectors  # SICD error floor vs JMLD
//! cargo run --release --example distance_spectrum  # integer spectra behind the bound
//! cargo run --release --example diversity_order    # high-SNR slopes vs antenna count
//! cargo run --release --example conditional_bound  # per-realization genie bound
//! ```

pub mod bound;
pub mod channel;
pub mod cli;
pub mod constellation;
pub mod detection;
pub mod montecarlo;

mod error;

pub use error::{Error, Result};
