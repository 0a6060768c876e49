//! Deduplicated spectrum of composite error-event SNR coefficients.
//!
//! Every term of the union bound carries an average SNR of the form
//! `Gamma = sum_k gamma_k |D_k|^2` where the `|D_k|^2` are nonnegative
//! integers. Because the sums over the tested tuple and over the erroneous
//! composites factor into independent per-user enumerations, the full
//! Cartesian iteration collapses losslessly into a product of small per-user
//! histograms keyed by `|D_k|^2`. Identical coefficient tuples are merged
//! with exact integer multiplicities, which shrinks billion-term sums by
//! several orders of magnitude without any floating-point grouping.

use std::collections::BTreeMap;
use std::io::Write;

use crate::channel::Scenario;
use crate::constellation::ModulationKind;
use crate::{Error, Result};

use super::distance::{
    pam_all_distances, pam_half_distances, qam_all_distances, qam_half_distances, tested_range,
};

/// Default cap on the number of deduplicated spectrum terms.
pub const DEFAULT_TERM_BUDGET: u128 = 100_000_000;

/// One aggregated term: `Gamma = sum_k gamma_k coefficients[k]`, counted
/// `multiplicity` times in the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub multiplicity: u64,
    pub coefficients: Vec<u64>,
}

/// Exact coefficient spectrum for one target user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSpectrum {
    /// Zero-based target user index.
    pub target: usize,
    /// Entries sorted by coefficient tuple.
    pub entries: Vec<SpectrumEntry>,
    /// Sum of multiplicities = (prod_k tested_range_k) * (1/2) prod_k order_k.
    pub total_multiplicity: u128,
}

impl GammaSpectrum {
    /// Number of deduplicated terms.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes one `(coefficients, multiplicity)` pair per line, e.g. `1,2,0 42`.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        for entry in &self.entries {
            let coeffs: Vec<String> = entry.coefficients.iter().map(u64::to_string).collect();
            writeln!(w, "{} {}", coeffs.join(","), entry.multiplicity)?;
        }
        Ok(())
    }
}

/// Histogram of squared entry magnitudes of one user's distance matrix.
fn user_histogram(kind: ModulationKind, order: usize, is_target: bool) -> Result<BTreeMap<u64, u64>> {
    let mut hist = BTreeMap::new();
    let mut add = |v: u64| *hist.entry(v).or_insert(0u64) += 1;
    match kind {
        ModulationKind::Pam => {
            let m = if is_target {
                pam_half_distances(order)?
            } else {
                pam_all_distances(order)?
            };
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let d = u64::from(m.get(r, c));
                    add(d * d);
                }
            }
        }
        ModulationKind::Qam => {
            let axis = 1usize << (order.trailing_zeros() / 2);
            let m = if is_target {
                qam_half_distances(axis)?
            } else {
                qam_all_distances(axis)?
            };
            for r in 0..m.rows {
                for c in 0..m.cols {
                    add(m.get(r, c).norm_sq());
                }
            }
        }
    }
    Ok(hist)
}

/// Builds the deduplicated coefficient spectrum for `target` under the
/// default term budget.
pub fn gamma_spectrum(
    target: usize,
    scenario: &Scenario,
    kind: ModulationKind,
) -> Result<GammaSpectrum> {
    gamma_spectrum_with_budget(target, scenario, kind, DEFAULT_TERM_BUDGET)
}

/// Builds the spectrum, refusing (rather than truncating) if the number of
/// deduplicated terms would exceed `term_budget`.
pub fn gamma_spectrum_with_budget(
    target: usize,
    scenario: &Scenario,
    kind: ModulationKind,
    term_budget: u128,
) -> Result<GammaSpectrum> {
    scenario.validate(kind)?;
    let n_users = scenario.num_users();
    if target >= n_users {
        return Err(Error::usage(format!(
            "target user {target} out of range for {n_users} users"
        )));
    }
    let histograms: Vec<BTreeMap<u64, u64>> = (0..n_users)
        .map(|k| user_histogram(kind, scenario.users[k].mod_order, k == target))
        .collect::<Result<_>>()?;

    let mut projected: u128 = 1;
    for h in &histograms {
        projected = projected.saturating_mul(h.len() as u128);
    }
    if projected > term_budget {
        return Err(Error::resource(format!(
            "spectrum for target user {target} needs up to {projected} deduplicated terms, \
             over the budget of {term_budget}"
        )));
    }

    let mut entries = vec![SpectrumEntry {
        multiplicity: 1,
        coefficients: Vec::new(),
    }];
    for hist in &histograms {
        let mut next = Vec::with_capacity(entries.len() * hist.len());
        for entry in &entries {
            for (&coeff, &count) in hist {
                let mut coefficients = entry.coefficients.clone();
                coefficients.push(coeff);
                next.push(SpectrumEntry {
                    multiplicity: entry.multiplicity * count,
                    coefficients,
                });
            }
        }
        entries = next;
    }

    let total_multiplicity = entries
        .iter()
        .map(|e| u128::from(e.multiplicity))
        .sum::<u128>();
    Ok(GammaSpectrum {
        target,
        entries,
        total_multiplicity,
    })
}

/// Per-user average SNR factors `gamma_k` at the scenario's Eb and N0.
///
/// `gamma_k = 6 Eb log2(I_k) / (I_k^2 - 1) * P_k sigma_k^2 / N0` for PAM and
/// `gamma_k = 3 Eb log2(M_k) / (M_k - 1) * P_k sigma_k^2 / N0` for QAM.
pub fn user_gammas(scenario: &Scenario, kind: ModulationKind) -> Result<Vec<f64>> {
    if scenario.noise_psd <= 0.0 {
        return Err(Error::config(format!(
            "noise_psd {} must be positive to form SNRs",
            scenario.noise_psd
        )));
    }
    Ok(scenario
        .users
        .iter()
        .map(|u| {
            let order = u.mod_order as f64;
            let bits = order.log2();
            let eb = scenario.bit_energy;
            let base = match kind {
                ModulationKind::Pam => 6.0 * eb * bits / (order * order - 1.0),
                ModulationKind::Qam => 3.0 * eb * bits / (order - 1.0),
            };
            base * u.strength() / scenario.noise_psd
        })
        .collect())
}

/// Expected total multiplicity for one target user.
pub fn expected_total_multiplicity(
    target: usize,
    orders: &[usize],
    kind: ModulationKind,
) -> u128 {
    let tested: u128 = orders
        .iter()
        .map(|&o| tested_range(kind, o) as u128)
        .product();
    let composites: u128 = orders.iter().map(|&o| o as u128).product::<u128>() / 2;
    let _ = target; // the count is target-independent
    tested * composites
}
