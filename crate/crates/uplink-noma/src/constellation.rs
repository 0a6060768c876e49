//! Gray-coded I-PAM and square M-QAM constellations.
//!
//! Amplitudes are normalized so that the mean symbol energy equals
//! `Eb * log2(order)` for a configured bit energy `Eb`. For I-PAM the levels
//! are `{-(I-1)d, ..., -d, +d, ..., +(I-1)d}` with
//! `d = sqrt(3 Eb log2(I) / (I^2 - 1))`; a square M-QAM constellation is the
//! Cartesian product of two sqrt(M)-level axes with
//! `d = sqrt(3 Eb log2(M) / (2 (M - 1)))`.
//!
//! Bit labels are reflected-binary Gray codes with the all-zeros word on the
//! most negative level, so the first bit of each axis word selects the half
//! plane (0 = negative, 1 = positive). QAM words are the in-phase axis word
//! followed by the quadrature axis word. Constellations are immutable after
//! construction and safe to share across threads.

use num_complex::Complex64;

use crate::{Error, Result};

/// One-dimensional I-PAM constellation with reflected Gray labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct PamConstellation {
    /// Number of amplitude levels I (power of two, >= 2).
    pub order: usize,
    /// Half of the minimum distance between levels.
    pub scale: f64,
    /// Amplitudes in ascending order: `(2(i+1) - I - 1) * scale`.
    pub points: Vec<f64>,
    /// Gray label of each amplitude, packed MSB-first into `bits_per_symbol` bits.
    pub labels: Vec<u32>,
    /// Word length log2(I).
    pub bits_per_symbol: u32,
}

/// Square M-QAM constellation as a product of two PAM axes.
#[derive(Debug, Clone, PartialEq)]
pub struct QamConstellation {
    /// Constellation size M (even power of two, >= 4).
    pub order: usize,
    /// Levels per axis, sqrt(M).
    pub axis_order: usize,
    /// Half of the minimum distance between neighboring points.
    pub scale: f64,
    /// Points enumerated in-phase-major: index = i_inphase * sqrt(M) + i_quadrature.
    pub points: Vec<Complex64>,
    /// Gray label of each point: in-phase axis word then quadrature axis word.
    pub labels: Vec<u32>,
    /// Word length log2(M).
    pub bits_per_symbol: u32,
}

/// Either constellation kind, as used by detectors and the simulator.
#[derive(Debug, Clone, PartialEq)]
pub enum Constellation {
    Pam(PamConstellation),
    Qam(QamConstellation),
}

/// Selects which family of constellations (and which bound) a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulationKind {
    Pam,
    Qam,
}

fn is_power_of_two(x: usize) -> bool {
    x != 0 && x & (x - 1) == 0
}

/// Reflected-binary Gray code of `i`.
fn gray(i: usize) -> u32 {
    (i ^ (i >> 1)) as u32
}

/// Inverse of [`gray`].
fn gray_inverse(mut g: u32) -> usize {
    let mut i = g;
    while g > 0 {
        g >>= 1;
        i ^= g;
    }
    i as usize
}

/// PAM scale factor `d` for `order` levels at bit energy `eb`.
pub fn pam_scale(order: usize, eb: f64) -> f64 {
    let bits = (order as f64).log2();
    (3.0 * eb * bits / ((order * order - 1) as f64)).sqrt()
}

/// QAM scale factor `d` for `order` points at bit energy `eb`.
pub fn qam_scale(order: usize, eb: f64) -> f64 {
    let bits = (order as f64).log2();
    (3.0 * eb * bits / (2.0 * (order - 1) as f64)).sqrt()
}

/// Builds the Gray-coded I-PAM constellation for the given bit energy.
pub fn build_pam(order: usize, bit_energy: f64) -> Result<PamConstellation> {
    if !is_power_of_two(order) || order < 2 {
        return Err(Error::config(format!(
            "PAM order {order} invalid: must be a power of two and at least 2"
        )));
    }
    if bit_energy <= 0.0 {
        return Err(Error::config(format!(
            "bit energy {bit_energy} invalid: must be positive"
        )));
    }
    let scale = pam_scale(order, bit_energy);
    let points = (0..order)
        .map(|i| (2 * (i + 1)) as f64 - (order + 1) as f64)
        .map(|level| level * scale)
        .collect();
    let labels = (0..order).map(gray).collect();
    Ok(PamConstellation {
        order,
        scale,
        points,
        labels,
        bits_per_symbol: order.trailing_zeros(),
    })
}

/// Builds the Gray-coded square M-QAM constellation for the given bit energy.
pub fn build_qam(order: usize, bit_energy: f64) -> Result<QamConstellation> {
    if !is_power_of_two(order) || order < 4 || !order.trailing_zeros().is_multiple_of(2) {
        return Err(Error::config(format!(
            "QAM order {order} invalid: only square constellations are supported \
             (order must be an even power of two, at least 4)"
        )));
    }
    if bit_energy <= 0.0 {
        return Err(Error::config(format!(
            "bit energy {bit_energy} invalid: must be positive"
        )));
    }
    let axis_order = 1usize << (order.trailing_zeros() / 2);
    let scale = qam_scale(order, bit_energy);
    let axis_bits = axis_order.trailing_zeros();
    let level = |i: usize| (2 * (i + 1)) as f64 - (axis_order + 1) as f64;
    let mut points = Vec::with_capacity(order);
    let mut labels = Vec::with_capacity(order);
    for i_in in 0..axis_order {
        for i_quad in 0..axis_order {
            points.push(Complex64::new(level(i_in) * scale, level(i_quad) * scale));
            labels.push((gray(i_in) << axis_bits) | gray(i_quad));
        }
    }
    Ok(QamConstellation {
        order,
        axis_order,
        scale,
        points,
        labels,
        bits_per_symbol: order.trailing_zeros(),
    })
}

/// Nearest level index on one axis for an observed coordinate.
fn slice_axis(value: f64, scale: f64, axis_order: usize) -> usize {
    // levels are (2(i+1) - I - 1) * scale, so i = (v/scale + I - 1) / 2
    let raw = (value / scale + (axis_order - 1) as f64) / 2.0;
    (raw.round().max(0.0) as usize).min(axis_order - 1)
}

impl Constellation {
    pub fn order(&self) -> usize {
        match self {
            Constellation::Pam(c) => c.order,
            Constellation::Qam(c) => c.order,
        }
    }

    pub fn bits_per_symbol(&self) -> u32 {
        match self {
            Constellation::Pam(c) => c.bits_per_symbol,
            Constellation::Qam(c) => c.bits_per_symbol,
        }
    }

    /// Complex amplitude of symbol `index` (PAM points lie on the real axis).
    pub fn point(&self, index: usize) -> Complex64 {
        match self {
            Constellation::Pam(c) => Complex64::new(c.points[index], 0.0),
            Constellation::Qam(c) => c.points[index],
        }
    }

    /// Packed Gray label of symbol `index`.
    pub fn label(&self, index: usize) -> u32 {
        match self {
            Constellation::Pam(c) => c.labels[index],
            Constellation::Qam(c) => c.labels[index],
        }
    }

    /// Half minimum distance `d`.
    pub fn scale(&self) -> f64 {
        match self {
            Constellation::Pam(c) => c.scale,
            Constellation::Qam(c) => c.scale,
        }
    }

    /// Index of the constellation point nearest to `observation`.
    pub fn nearest(&self, observation: Complex64) -> usize {
        match self {
            Constellation::Pam(c) => slice_axis(observation.re, c.scale, c.order),
            Constellation::Qam(c) => {
                let i_in = slice_axis(observation.re, c.scale, c.axis_order);
                let i_quad = slice_axis(observation.im, c.scale, c.axis_order);
                i_in * c.axis_order + i_quad
            }
        }
    }

    /// Maps a bit word (MSB first, one entry per bit) to its symbol index.
    pub fn map_bits(&self, bits: &[u8]) -> Result<usize> {
        let want = self.bits_per_symbol() as usize;
        if bits.len() != want {
            return Err(Error::usage(format!(
                "bit word length {} does not match log2(order) = {want}",
                bits.len()
            )));
        }
        let mut word = 0u32;
        for &b in bits {
            if b > 1 {
                return Err(Error::usage(format!("bit value {b} is not 0 or 1")));
            }
            word = (word << 1) | u32::from(b);
        }
        Ok(self.index_of_label(word))
    }

    /// Inverse of [`Constellation::map_bits`]: the label of `index` as a bit vector.
    pub fn symbol_bits(&self, index: usize) -> Result<Vec<u8>> {
        if index >= self.order() {
            return Err(Error::usage(format!(
                "symbol index {index} out of range for order {}",
                self.order()
            )));
        }
        let word = self.label(index);
        let bits = self.bits_per_symbol();
        Ok((0..bits).rev().map(|k| ((word >> k) & 1) as u8).collect())
    }

    fn index_of_label(&self, word: u32) -> usize {
        match self {
            Constellation::Pam(_) => gray_inverse(word),
            Constellation::Qam(c) => {
                let axis_bits = c.axis_order.trailing_zeros();
                let i_in = gray_inverse(word >> axis_bits);
                let i_quad = gray_inverse(word & ((1 << axis_bits) - 1));
                i_in * c.axis_order + i_quad
            }
        }
    }

    /// Average symbol energy over the constellation.
    pub fn mean_energy(&self) -> f64 {
        let order = self.order() as f64;
        (0..self.order())
            .map(|i| self.point(i).norm_sqr())
            .sum::<f64>()
            / order
    }
}

/// Builds the constellation of the requested kind.
pub fn build(kind: ModulationKind, order: usize, bit_energy: f64) -> Result<Constellation> {
    match kind {
        ModulationKind::Pam => build_pam(order, bit_energy).map(Constellation::Pam),
        ModulationKind::Qam => build_qam(order, bit_energy).map(Constellation::Qam),
    }
}
