//! Uplink Rayleigh channel model and received-signal synthesis.
//!
//! Each user n reaches the L-antenna base station through an i.i.d.
//! circularly-symmetric complex Gaussian gain vector `g_n` with per-component
//! variance `sigma_n^2`; the effective gain is `h_n = sqrt(P_n) g_n`. The
//! noiseless received vector for one symbol tuple is `sum_n h_n x_n`, and the
//! receiver noise is complex AWGN with per-component variance `N0`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::constellation::{build, Constellation, ModulationKind};
use crate::{Error, Result};

/// Per-user link parameters (all linear units).
#[derive(Debug, Clone, PartialEq)]
pub struct UserSpec {
    /// Modulation order M_n (or I_n when running the PAM analysis).
    pub mod_order: usize,
    /// Transmit power P_n.
    pub power: f64,
    /// Per-component channel gain variance sigma_n^2.
    pub channel_var: f64,
}

impl UserSpec {
    /// Statistical received strength `P_n sigma_n^2` used for user ordering.
    pub fn strength(&self) -> f64 {
        self.power * self.channel_var
    }
}

/// A complete multi-user uplink configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Users ordered by nonincreasing `P_n sigma_n^2`.
    pub users: Vec<UserSpec>,
    /// Receive antennas L.
    pub antennas: usize,
    /// Common per-bit energy reference Eb.
    pub bit_energy: f64,
    /// Noise power spectral density N0 (per-component complex noise variance).
    pub noise_psd: f64,
}

impl Scenario {
    /// Checks all invariants, reporting the first violated one.
    pub fn validate(&self, kind: ModulationKind) -> Result<()> {
        if self.users.is_empty() {
            return Err(Error::config("scenario has no users"));
        }
        if self.antennas == 0 {
            return Err(Error::config("antennas must be at least 1"));
        }
        if self.bit_energy <= 0.0 {
            return Err(Error::config(format!(
                "bit_energy {} must be positive",
                self.bit_energy
            )));
        }
        if self.noise_psd < 0.0 {
            return Err(Error::config(format!(
                "noise_psd {} must be nonnegative",
                self.noise_psd
            )));
        }
        for (n, user) in self.users.iter().enumerate() {
            build(kind, user.mod_order, self.bit_energy)
                .map_err(|e| Error::config(format!("user {}: {e}", n + 1)))?;
            if user.power <= 0.0 {
                return Err(Error::config(format!(
                    "user {}: power {} must be positive",
                    n + 1,
                    user.power
                )));
            }
            if user.channel_var <= 0.0 {
                return Err(Error::config(format!(
                    "user {}: channel_var {} must be positive",
                    n + 1,
                    user.channel_var
                )));
            }
        }
        for w in self.users.windows(2) {
            if w[0].strength() < w[1].strength() {
                return Err(Error::config(
                    "users must be ordered by nonincreasing power * channel_var",
                ));
            }
        }
        Ok(())
    }

    pub fn num_users(&self) -> usize {
        self.users.len()
    }

    /// Builds each user's constellation at the scenario bit energy.
    pub fn constellations(&self, kind: ModulationKind) -> Result<Vec<Constellation>> {
        self.users
            .iter()
            .map(|u| build(kind, u.mod_order, self.bit_energy))
            .collect()
    }

    /// Copy of the scenario with N0 set for the given Eb/N0 in dB.
    pub fn with_ebn0_db(&self, ebn0_db: f64) -> Scenario {
        let mut s = self.clone();
        s.noise_psd = self.bit_energy / db_to_linear(ebn0_db);
        s
    }
}

/// Converts a dB quantity to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear quantity to dB.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// One draw of all users' channel vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Raw gain vectors g_n, one complex coefficient per antenna.
    pub gains: Vec<Vec<Complex64>>,
    /// Effective gains h_n = sqrt(P_n) g_n.
    pub effective: Vec<Vec<Complex64>>,
}

impl ChannelRealization {
    pub fn num_users(&self) -> usize {
        self.effective.len()
    }

    pub fn antennas(&self) -> usize {
        self.effective.first().map_or(0, Vec::len)
    }
}

/// Draws one Rayleigh realization for every user.
///
/// Real and imaginary parts of each coefficient are independent Gaussians of
/// variance `sigma_n^2 / 2`, independent across antennas and users.
pub fn sample_channel<R: Rng + ?Sized>(rng: &mut R, scenario: &Scenario) -> ChannelRealization {
    let l = scenario.antennas;
    let mut gains = Vec::with_capacity(scenario.num_users());
    let mut effective = Vec::with_capacity(scenario.num_users());
    for user in &scenario.users {
        let comp_sigma = (user.channel_var / 2.0).sqrt();
        let amp = user.power.sqrt();
        let mut g = Vec::with_capacity(l);
        let mut h = Vec::with_capacity(l);
        for _ in 0..l {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let coeff = Complex64::new(re * comp_sigma, im * comp_sigma);
            g.push(coeff);
            h.push(coeff * amp);
        }
        gains.push(g);
        effective.push(h);
    }
    ChannelRealization { gains, effective }
}

/// Noiseless received vector `sum_n h_n x_n` for one symbol per user.
pub fn superimpose(
    realization: &ChannelRealization,
    symbols: &[Complex64],
) -> Result<Vec<Complex64>> {
    if symbols.len() != realization.num_users() {
        return Err(Error::usage(format!(
            "got {} symbols for {} users",
            symbols.len(),
            realization.num_users()
        )));
    }
    let l = realization.antennas();
    let mut y = vec![Complex64::new(0.0, 0.0); l];
    for (h, &x) in realization.effective.iter().zip(symbols) {
        for (acc, &coeff) in y.iter_mut().zip(h) {
            *acc += coeff * x;
        }
    }
    Ok(y)
}

/// Adds complex AWGN with per-component variance `noise_psd`.
pub fn add_noise<R: Rng + ?Sized>(
    signal: &[Complex64],
    noise_psd: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    if noise_psd < 0.0 {
        return Err(Error::config(format!(
            "noise_psd {noise_psd} must be nonnegative"
        )));
    }
    if noise_psd == 0.0 {
        return Ok(signal.to_vec());
    }
    let comp_sigma = (noise_psd / 2.0).sqrt();
    Ok(signal
        .iter()
        .map(|&s| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            s + Complex64::new(re * comp_sigma, im * comp_sigma)
        })
        .collect())
}
