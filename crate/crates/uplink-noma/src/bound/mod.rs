//! Analytical BER upper bounds for the joint maximum-likelihood detector.
//!
//! For each user the bound enumerates every way the detector can prefer a
//! composite symbol whose target-user component lies in the wrong half plane,
//! weights each event by its average pairwise error probability over the
//! Rayleigh/MRC fading distribution, and scales by the Gray bit-error factor
//! of the constellation. The enumeration is exact integer arithmetic
//! ([`distance`]), events with equal SNR coefficients are merged losslessly
//! ([`spectrum`]), and the fading average has a closed form ([`fading`]),
//! so evaluating the bound at one SNR point costs one pass over the
//! deduplicated spectrum.
//!
//! Bounds are union bounds: values above 1 at very low SNR are valid outputs
//! and are reported unclamped.

pub mod distance;
pub mod fading;
pub mod spectrum;

pub use distance::{
    brute_force_distances, composite_distance_vectors, pam_all_distances, pam_half_distances,
    qam_all_distances, qam_half_distances, to_tuple_multiset, DistanceMatrixPam,
    DistanceMatrixQam, GaussianInt, Matrix, BRUTE_FORCE_LIMIT,
};
pub use fading::{avg_q_over_fading, chi_square_pdf, q_function};
pub use spectrum::{
    gamma_spectrum, gamma_spectrum_with_budget, user_gammas, GammaSpectrum, SpectrumEntry,
    DEFAULT_TERM_BUDGET,
};

use num_complex::Complex64;

use crate::channel::{ChannelRealization, Scenario};
use crate::constellation::{pam_scale, qam_scale, ModulationKind};
use crate::Result;

use distance::tested_range;

/// Constellation-geometry prefactor of the fading-averaged bound; pairs with
/// bracket terms of the form `2 * avg_q_over_fading`.
fn averaged_prefactor(target: usize, scenario: &Scenario, kind: ModulationKind) -> f64 {
    conditional_prefactor(target, scenario, kind) / 2.0
}

/// Prefactor of the conditional (fixed-channel) union bound.
fn conditional_prefactor(target: usize, scenario: &Scenario, kind: ModulationKind) -> f64 {
    let order_n = scenario.users[target].mod_order as f64;
    let events = scenario
        .users
        .iter()
        .map(|u| u.mod_order as f64)
        .map(|m| match kind {
            ModulationKind::Pam => 2.0 / m,
            ModulationKind::Qam => 4.0 / m,
        })
        .product::<f64>();
    // QAM carries twice the PAM bit-error weight: both axes contribute the
    // same error count while the word length doubles to log2(M)
    let bit_scale = match kind {
        ModulationKind::Pam => (order_n - 1.0) / order_n.log2(),
        ModulationKind::Qam => 2.0 * (order_n.sqrt() - 1.0) / order_n.log2(),
    };
    bit_scale * events
}

/// Closed-form BER upper bound for `target`, evaluated from a prebuilt
/// spectrum (reusable across SNR points).
pub fn ber_bound_from_spectrum(
    spectrum: &GammaSpectrum,
    scenario: &Scenario,
    kind: ModulationKind,
) -> Result<f64> {
    let gammas = user_gammas(scenario, kind)?;
    let branches = scenario.antennas;
    let mut sum = 0.0;
    for entry in &spectrum.entries {
        let gamma_total: f64 = entry
            .coefficients
            .iter()
            .zip(&gammas)
            .map(|(&c, &g)| c as f64 * g)
            .sum();
        let bracket = 2.0 * avg_q_over_fading(gamma_total, branches)?;
        sum += entry.multiplicity as f64 * bracket;
    }
    Ok(averaged_prefactor(spectrum.target, scenario, kind) * sum)
}

/// Closed-form BER upper bound for one user of the scenario.
pub fn ber_bound(target: usize, scenario: &Scenario, kind: ModulationKind) -> Result<f64> {
    let spectrum = gamma_spectrum(target, scenario, kind)?;
    ber_bound_from_spectrum(&spectrum, scenario, kind)
}

/// Reference evaluation without coefficient deduplication.
///
/// Walks every (tested tuple, erroneous composite) pair and sums the bracket
/// terms one by one. Slow; exists to confirm that merging identical
/// coefficient tuples changes nothing.
pub fn ber_bound_direct(target: usize, scenario: &Scenario, kind: ModulationKind) -> Result<f64> {
    scenario.validate(kind)?;
    let gammas = user_gammas(scenario, kind)?;
    let branches = scenario.antennas;
    let orders: Vec<usize> = scenario.users.iter().map(|u| u.mod_order).collect();
    let mut sum = 0.0;
    for_each_tested_tuple(&orders, kind, |tuple| -> Result<()> {
        let vectors = composite_distance_vectors(target, tuple, &orders, kind)?;
        for m in 0..vectors[0].len() {
            let gamma_total: f64 = vectors
                .iter()
                .zip(&gammas)
                .map(|(v, &g)| v[m].norm_sq() as f64 * g)
                .sum();
            sum += 2.0 * avg_q_over_fading(gamma_total, branches)?;
        }
        Ok(())
    })?;
    Ok(averaged_prefactor(target, scenario, kind) * sum)
}

/// Union bound conditioned on one channel realization.
///
/// Evaluates `Q(||sum_k 2 d_k h_k D_k(m)|| / sqrt(2 N0))` over every error
/// event; averaging this over the fading distribution reproduces
/// [`ber_bound`]. Useful as a genie reference against fixed-channel
/// simulation.
pub fn conditional_union_bound(
    target: usize,
    realization: &ChannelRealization,
    scenario: &Scenario,
    kind: ModulationKind,
) -> Result<f64> {
    scenario.validate(kind)?;
    let n0 = scenario.noise_psd;
    if n0 == 0.0 {
        return Ok(0.0);
    }
    let orders: Vec<usize> = scenario.users.iter().map(|u| u.mod_order).collect();
    let scales: Vec<f64> = orders
        .iter()
        .map(|&m| match kind {
            ModulationKind::Pam => pam_scale(m, scenario.bit_energy),
            ModulationKind::Qam => qam_scale(m, scenario.bit_energy),
        })
        .collect();
    let l = realization.antennas();
    let denom = (2.0 * n0).sqrt();
    let mut sum = 0.0;
    for_each_tested_tuple(&orders, kind, |tuple| -> Result<()> {
        let vectors = composite_distance_vectors(target, tuple, &orders, kind)?;
        let mut event = vec![Complex64::new(0.0, 0.0); l];
        for m in 0..vectors[0].len() {
            for e in event.iter_mut() {
                *e = Complex64::new(0.0, 0.0);
            }
            for (k, v) in vectors.iter().enumerate() {
                let d = v[m];
                if d.is_zero() {
                    continue;
                }
                let coeff =
                    Complex64::new(2.0 * scales[k] * d.re as f64, 2.0 * scales[k] * d.im as f64);
                for (e, &h) in event.iter_mut().zip(&realization.effective[k]) {
                    *e += coeff * h;
                }
            }
            let norm = event.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            sum += q_function(norm / denom);
        }
        Ok(())
    })?;
    Ok(conditional_prefactor(target, scenario, kind) * sum)
}

/// Calls `f` for every tested index tuple (all users restricted to their
/// tested half line / quadrant), in row-major order.
fn for_each_tested_tuple(
    orders: &[usize],
    kind: ModulationKind,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let ranges: Vec<usize> = orders.iter().map(|&o| tested_range(kind, o)).collect();
    let mut tuple = vec![0usize; orders.len()];
    loop {
        f(&tuple)?;
        let mut k = orders.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < ranges[k] {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// Bound values and spectrum statistics over an Eb/N0 grid.
#[derive(Debug, Clone)]
pub struct BoundSweep {
    /// `values[point][user]` is the bound at that grid point.
    pub values: Vec<Vec<f64>>,
    /// Deduplicated term count per user.
    pub term_counts: Vec<usize>,
    /// Raw (pre-deduplication) term count per user.
    pub raw_term_counts: Vec<u128>,
}

/// Evaluates the bound for every user over a grid, building each user's
/// spectrum once.
pub fn bound_sweep(
    scenario: &Scenario,
    kind: ModulationKind,
    ebn0_grid_db: &[f64],
) -> Result<BoundSweep> {
    scenario.validate(kind)?;
    let spectra: Vec<GammaSpectrum> = (0..scenario.num_users())
        .map(|n| gamma_spectrum(n, scenario, kind))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(ebn0_grid_db.len());
    for &db in ebn0_grid_db {
        let at_point = scenario.with_ebn0_db(db);
        let row: Vec<f64> = spectra
            .iter()
            .map(|s| ber_bound_from_spectrum(s, &at_point, kind))
            .collect::<Result<_>>()?;
        values.push(row);
    }
    Ok(BoundSweep {
        values,
        term_counts: spectra.iter().map(GammaSpectrum::len).collect(),
        raw_term_counts: spectra.iter().map(|s| s.total_multiplicity).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{db_to_linear, UserSpec};
    use crate::constellation::build_qam;

    fn scenario(orders: &[usize], gains_db: &[f64], antennas: usize, ebn0_db: f64) -> Scenario {
        let base = Scenario {
            users: orders
                .iter()
                .zip(gains_db)
                .map(|(&m, &g)| UserSpec {
                    mod_order: m,
                    power: 1.0,
                    channel_var: db_to_linear(g),
                })
                .collect(),
            antennas,
            bit_energy: 1.0,
            noise_psd: 1.0,
        };
        base.with_ebn0_db(ebn0_db)
    }

    fn scenario_two() -> Scenario {
        scenario(&[16, 16, 16], &[0.0, -3.0, -6.0], 4, 10.0)
    }

    #[test]
    fn qpsk_single_user_reference_value() {
        let sc = scenario(&[4], &[0.0], 1, 10.0);
        let b = ber_bound(0, &sc, ModulationKind::Qam).unwrap();
        assert!((b - 0.03532).abs() < 1e-4, "bound {b}");
    }

    #[test]
    fn bound_decreases_with_snr() {
        let sc = scenario_two();
        for user in 0..3 {
            let mut prev = f64::INFINITY;
            for db in [0.0, 4.0, 8.0, 12.0, 16.0, 20.0] {
                let b = ber_bound(user, &sc.with_ebn0_db(db), ModulationKind::Qam).unwrap();
                assert!(b < prev, "user {user} at {db} dB: {b} vs {prev}");
                prev = b;
            }
        }
    }

    #[test]
    fn deduplication_changes_nothing() {
        let cases: [(Vec<usize>, Vec<f64>, ModulationKind); 3] = [
            (vec![16, 16, 16], vec![0.0, -3.0, -6.0], ModulationKind::Qam),
            (vec![4, 4], vec![0.0, -3.0], ModulationKind::Qam),
            (vec![4, 2], vec![0.0, -3.0], ModulationKind::Pam),
        ];
        for (orders, gains, kind) in cases {
            let sc = scenario(&orders, &gains, 4, 8.0);
            for user in 0..orders.len() {
                let merged = ber_bound(user, &sc, kind).unwrap();
                let direct = ber_bound_direct(user, &sc, kind).unwrap();
                assert!(
                    ((merged - direct) / direct).abs() < 1e-12,
                    "user {user}: {merged} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn vanishes_at_high_snr() {
        let sc = scenario_two().with_ebn0_db(60.0);
        for user in 0..3 {
            let b = ber_bound(user, &sc, ModulationKind::Qam).unwrap();
            assert!(b < 1e-8, "user {user}: {b}");
        }
    }

    #[test]
    fn high_snr_slope_equals_diversity_order() {
        for l in [1usize, 2, 4] {
            let sc = scenario(&[16, 16, 16], &[0.0, -3.0, -6.0], l, 0.0);
            for user in 0..3 {
                let b50 = ber_bound(user, &sc.with_ebn0_db(50.0), ModulationKind::Qam).unwrap();
                let b60 = ber_bound(user, &sc.with_ebn0_db(60.0), ModulationKind::Qam).unwrap();
                let slope = b60.log10() - b50.log10(); // per decade
                assert!(
                    (slope + l as f64).abs() < 0.1,
                    "L {l} user {user}: slope {slope}"
                );
            }
        }
    }

    #[test]
    fn conditional_bound_zero_noise_limit() {
        let sc = scenario(&[4, 4], &[0.0, -3.0], 2, 10.0);
        let mut zero_noise = sc.clone();
        zero_noise.noise_psd = 0.0;
        let h = vec![
            vec![Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2)],
            vec![Complex64::new(0.4, -0.1), Complex64::new(0.8, 0.9)],
        ];
        let r = ChannelRealization {
            gains: h.clone(),
            effective: h,
        };
        assert_eq!(
            conditional_union_bound(0, &r, &zero_noise, ModulationKind::Qam).unwrap(),
            0.0
        );
        // and small noise gives a small positive bound
        let b = conditional_union_bound(0, &r, &sc, ModulationKind::Qam).unwrap();
        assert!(b > 0.0 && b < 1.0);
    }

    #[test]
    fn conditional_bound_unit_channel_matches_pairwise_enumeration() {
        // single user on an identity channel: the conditional bound must equal
        // the AWGN union bound computed directly from constellation geometry
        let sc = scenario(&[16], &[0.0], 1, 8.0);
        let r = ChannelRealization {
            gains: vec![vec![Complex64::new(1.0, 0.0)]],
            effective: vec![vec![Complex64::new(1.0, 0.0)]],
        };
        let got = conditional_union_bound(0, &r, &sc, ModulationKind::Qam).unwrap();

        let c = build_qam(16, sc.bit_energy).unwrap();
        let axis = c.axis_order;
        let n0 = sc.noise_psd;
        let mut sum = 0.0;
        let mut tested = 0usize;
        for (a, pa) in c.points.iter().enumerate() {
            let (a_in, a_quad) = (a / axis, a % axis);
            if a_in >= axis / 2 || a_quad >= axis / 2 {
                continue; // only the lower-left quadrant is tested
            }
            tested += 1;
            for (b, pb) in c.points.iter().enumerate() {
                if b / axis < axis / 2 {
                    continue; // decided point must sit in the right half plane
                }
                sum += q_function((pa - pb).norm() / (2.0 * n0).sqrt());
            }
        }
        assert_eq!(tested, 4);
        let expected = 2.0 * (16f64.sqrt() - 1.0) / 16f64.log2() * (4.0 / 16.0) * sum;
        assert!(
            ((got - expected) / expected).abs() < 1e-12,
            "{got} vs {expected}"
        );
    }

    #[test]
    fn sweep_reports_term_counts() {
        let sc = scenario_two();
        let sweep = bound_sweep(&sc, ModulationKind::Qam, &[0.0, 10.0, 20.0]).unwrap();
        assert_eq!(sweep.values.len(), 3);
        assert_eq!(sweep.term_counts.len(), 3);
        for (n, &raw) in sweep.raw_term_counts.iter().enumerate() {
            assert_eq!(raw, 64 * 2048, "user {n}");
            assert!(sweep.term_counts[n] > 0 && (sweep.term_counts[n] as u128) < raw);
        }
        // low SNR union bounds may exceed 1 and must be reported unclamped
        let sc_low = sc.with_ebn0_db(-20.0);
        let b = ber_bound(2, &sc_low, ModulationKind::Qam).unwrap();
        assert!(b > 1.0, "union bound at -20 dB should exceed 1, got {b}");
    }
}
