//! Seeded, parallel Monte Carlo BER estimation over Eb/N0 sweeps.
//!
//! Work is split into fading blocks. Each block owns a dedicated
//! counter-derived RNG substream keyed by (seed, grid point, block index), so
//! the sampled channels, symbols, and noise never depend on scheduling.
//! Blocks are processed in deterministic waves: a wave's size follows only
//! from already-accumulated integer counters, per-block results are integers,
//! and integer reduction is order-independent, so a run is bit-identical for
//! any worker count.
//!
//! A grid point stops once every user has collected `min_bit_errors` bit
//! errors or the symbol budget is exhausted, whichever happens first.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::ContinuousCDF;

use crate::channel::{add_noise, sample_channel, superimpose, Scenario};
use crate::constellation::{Constellation, ModulationKind};
use crate::detection::{
    composite_points, jmld_detect, jmld_detect_with_table, sicd_detect_ordered, DetectionResult,
    SicOrdering,
};
use crate::{Error, Result};

/// Which receiver the simulation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Detector {
    Jmld,
    Sicd,
}

impl std::fmt::Display for Detector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Detector::Jmld => write!(f, "jmld"),
            Detector::Sicd => write!(f, "sicd"),
        }
    }
}

/// Stop rule for each grid point: whichever fires first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    /// Target bit errors per user.
    pub min_bit_errors: u64,
    /// Hard cap on simulated symbols.
    pub max_symbols: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        // ~10% relative error on BER once 400 errors are in, bounded runtime
        StopRule {
            min_bit_errors: 400,
            max_symbols: 2_000_000,
        }
    }
}

/// A complete simulation request.
#[derive(Debug, Clone)]
pub struct SimPlan {
    pub scenario: Scenario,
    pub kind: ModulationKind,
    pub detector: Detector,
    /// Strictly increasing Eb/N0 grid in dB.
    pub ebn0_grid_db: Vec<f64>,
    pub stop: StopRule,
    /// Symbols per channel realization (block fading); 1 reproduces the
    /// analysis assumption of a fresh draw per symbol.
    pub block_len: usize,
    pub seed: u64,
    /// SIC processing order; ignored by the joint detector.
    pub sic_ordering: SicOrdering,
}

impl SimPlan {
    pub fn new(scenario: Scenario, detector: Detector, ebn0_grid_db: Vec<f64>, seed: u64) -> Self {
        SimPlan {
            scenario,
            kind: ModulationKind::Qam,
            detector,
            ebn0_grid_db,
            stop: StopRule::default(),
            block_len: 1,
            seed,
            sic_ordering: SicOrdering::Instantaneous,
        }
    }

    fn validate(&self) -> Result<()> {
        self.scenario.validate(self.kind)?;
        if self.ebn0_grid_db.is_empty() {
            return Err(Error::config("Eb/N0 grid is empty"));
        }
        for w in self.ebn0_grid_db.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::config(format!(
                    "Eb/N0 grid must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        if self.stop.min_bit_errors == 0 {
            return Err(Error::config("min_bit_errors must be at least 1"));
        }
        if self.stop.max_symbols == 0 {
            return Err(Error::config("max_symbols must be at least 1"));
        }
        if self.block_len == 0 {
            return Err(Error::config("block_len must be at least 1"));
        }
        Ok(())
    }
}

/// Where a curve row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    #[serde(rename = "simulated")]
    Simulated,
    #[serde(rename = "analytical-bound")]
    AnalyticalBound,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Simulated => write!(f, "simulated"),
            Source::AnalyticalBound => write!(f, "analytical-bound"),
        }
    }
}

/// One (grid point, user) row of a BER curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub ebn0_db: f64,
    /// 1-based user number, matching the emitted schema.
    pub user: usize,
    pub ber: f64,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub bit_errors: Option<u64>,
    pub bits_sent: Option<u64>,
    pub source: Source,
}

/// Per-user BER against Eb/N0, simulated or analytical.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BerCurve {
    pub points: Vec<CurvePoint>,
}

impl BerCurve {
    /// First row matching the 1-based user and grid value.
    pub fn find(&self, user: usize, ebn0_db: f64) -> Option<&CurvePoint> {
        self.points
            .iter()
            .find(|p| p.user == user && p.ebn0_db == ebn0_db)
    }
}

/// Progress summary handed to the per-point callback of
/// [`run_ber_with_progress`].
#[derive(Debug, Clone)]
pub struct PointSummary {
    pub ebn0_db: f64,
    pub symbols: u64,
    pub bit_errors: Vec<u64>,
}

const INITIAL_WAVE_BLOCKS: u64 = 256;
const MAX_WAVE_BLOCKS: u64 = 1 << 16;

fn stream_id(point_idx: usize, block_idx: u64) -> u64 {
    ((point_idx as u64) << 40) | block_idx
}

struct BlockStats {
    bit_errors: Vec<u64>,
}

fn detect(
    plan: &SimPlan,
    y: &[Complex64],
    realization: &crate::channel::ChannelRealization,
    constellations: &[Constellation],
    table: Option<&crate::detection::CompositeTable>,
) -> DetectionResult {
    let result = match plan.detector {
        Detector::Jmld => match table {
            Some(t) => jmld_detect_with_table(y, t, constellations),
            None => jmld_detect(y, realization, constellations),
        },
        Detector::Sicd => sicd_detect_ordered(y, realization, constellations, plan.sic_ordering),
    };
    result.expect("dimensions validated before the sweep")
}

/// Composite tables above this element count are skipped in favor of the
/// direct search, which needs no table memory.
const TABLE_ELEMENT_LIMIT: usize = 1 << 20;

fn simulate_block(
    plan: &SimPlan,
    point_scenario: &Scenario,
    point_idx: usize,
    block_idx: u64,
    constellations: &[Constellation],
) -> BlockStats {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    rng.set_stream(stream_id(point_idx, block_idx));
    let realization = sample_channel(&mut rng, point_scenario);
    let table = if plan.detector == Detector::Jmld && plan.block_len > 1 {
        let elements: usize = constellations
            .iter()
            .map(Constellation::order)
            .product::<usize>()
            * point_scenario.antennas;
        (elements <= TABLE_ELEMENT_LIMIT)
            .then(|| composite_points(&realization, constellations).expect("validated"))
    } else {
        None
    };
    let n_users = constellations.len();
    let mut bit_errors = vec![0u64; n_users];
    let mut tx = vec![0usize; n_users];
    let mut x = vec![Complex64::new(0.0, 0.0); n_users];
    for _ in 0..plan.block_len {
        for (n, c) in constellations.iter().enumerate() {
            tx[n] = rng.gen_range(0..c.order());
            x[n] = c.point(tx[n]);
        }
        let clean = superimpose(&realization, &x).expect("validated");
        let y = add_noise(&clean, point_scenario.noise_psd, &mut rng).expect("validated");
        let det = detect(plan, &y, &realization, constellations, table.as_ref());
        for n in 0..n_users {
            bit_errors[n] +=
                u64::from((constellations[n].label(tx[n]) ^ det.bits[n]).count_ones());
        }
    }
    BlockStats { bit_errors }
}

/// Runs the sweep and returns the simulated curve.
pub fn run_ber(plan: &SimPlan) -> Result<BerCurve> {
    run_ber_with_progress(plan, |_| {})
}

/// Like [`run_ber`], invoking `on_point` after each finished grid point.
pub fn run_ber_with_progress(
    plan: &SimPlan,
    mut on_point: impl FnMut(&PointSummary),
) -> Result<BerCurve> {
    plan.validate()?;
    let constellations = plan.scenario.constellations(plan.kind)?;
    let n_users = constellations.len();
    let block_len = plan.block_len as u64;
    let mut curve = BerCurve::default();

    for (point_idx, &ebn0_db) in plan.ebn0_grid_db.iter().enumerate() {
        let point_scenario = plan.scenario.with_ebn0_db(ebn0_db);
        let mut bit_errors = vec![0u64; n_users];
        let mut symbols: u64 = 0;
        let mut blocks_done: u64 = 0;
        let mut wave = INITIAL_WAVE_BLOCKS;
        loop {
            let done = bit_errors.iter().all(|&e| e >= plan.stop.min_bit_errors)
                || symbols >= plan.stop.max_symbols;
            if done {
                break;
            }
            let remaining_blocks = (plan.stop.max_symbols - symbols).div_ceil(block_len);
            let wave_len = wave.min(remaining_blocks);
            let stats: Vec<BlockStats> = (blocks_done..blocks_done + wave_len)
                .into_par_iter()
                .map(|block_idx| {
                    simulate_block(plan, &point_scenario, point_idx, block_idx, &constellations)
                })
                .collect();
            for s in &stats {
                for (acc, &e) in bit_errors.iter_mut().zip(&s.bit_errors) {
                    *acc += e;
                }
            }
            blocks_done += wave_len;
            symbols += wave_len * block_len;
            wave = (wave * 2).min(MAX_WAVE_BLOCKS);
        }
        on_point(&PointSummary {
            ebn0_db,
            symbols,
            bit_errors: bit_errors.clone(),
        });
        for (n, c) in constellations.iter().enumerate() {
            let bits_sent = symbols * u64::from(c.bits_per_symbol());
            let ber = bit_errors[n] as f64 / bits_sent as f64;
            let (lo, hi) = wilson_interval(bit_errors[n], bits_sent, 0.95)?;
            curve.points.push(CurvePoint {
                ebn0_db,
                user: n + 1,
                ber,
                ci_lo: Some(lo),
                ci_hi: Some(hi),
                bit_errors: Some(bit_errors[n]),
                bits_sent: Some(bits_sent),
                source: Source::Simulated,
            });
        }
    }
    Ok(curve)
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(errors: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    if errors > trials {
        return Err(Error::usage(format!(
            "errors {errors} exceed trials {trials}"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::usage(format!(
            "confidence {confidence} must lie strictly between 0 and 1"
        )));
    }
    let normal = statrs::distribution::Normal::new(0.0, 1.0).expect("unit normal");
    let z = normal.inverse_cdf(0.5 + confidence / 2.0);
    let n = trials as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Ok(((center - half).max(0.0), (center + half).min(1.0)))
}

/// Log-log BER slope per decade of SNR between two grid points.
///
/// A slope near `-L` indicates full diversity; a slope near zero is the
/// signature of an error floor.
pub fn fit_diversity_slope(curve: &BerCurve, user: usize, window: (f64, f64)) -> Result<f64> {
    let lookup = |db: f64| -> Result<&CurvePoint> {
        curve
            .find(user, db)
            .ok_or_else(|| Error::usage(format!("curve has no point for user {user} at {db} dB")))
    };
    let a = lookup(window.0)?;
    let b = lookup(window.1)?;
    if a.ber <= 0.0 || b.ber <= 0.0 {
        return Err(Error::usage(format!(
            "BER is zero inside the window ({}, {}): extend the simulation with more \
             symbols or a higher error target before fitting a slope",
            window.0, window.1
        )));
    }
    let decades = (b.ebn0_db - a.ebn0_db) / 10.0;
    Ok((b.ber.log10() - a.ber.log10()) / decades)
}
