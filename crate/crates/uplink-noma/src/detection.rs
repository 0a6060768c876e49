//! Multi-user detectors: exhaustive joint maximum likelihood and MRC-SIC.
//!
//! The joint detector searches every tuple in the product of the users'
//! constellations for the minimizer of `||y - sum_n h_n s_n||^2`. The search
//! is exact; hypotheses are enumerated in row-major order (user 1 outermost)
//! with incremental partial sums so each hypothesis costs O(L) work, and ties
//! resolve to the smallest enumeration index.
//!
//! The SIC benchmark detects users one at a time in decreasing instantaneous
//! channel strength: maximal-ratio combine, slice to the nearest point of
//! that user's constellation, re-encode, subtract, repeat. Residual
//! interference is treated as noise at every stage, which is what produces
//! its error floor in the uplink.

use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::constellation::Constellation;
use crate::{Error, Result};

/// Joint decision for all users.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    /// Detected symbol index per user.
    pub indices: Vec<usize>,
    /// Gray label of each detected symbol, packed MSB-first.
    pub bits: Vec<u32>,
    /// Achieved squared distance `||y - sum_n h_n s_n||^2` of the decision.
    pub metric: f64,
}

/// User processing order for the SIC detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SicOrdering {
    /// Sort by instantaneous `||h_n||` per realization (default).
    #[default]
    Instantaneous,
    /// Keep the scenario's statistical order.
    Statistical,
}

fn check_dimensions(
    y: &[Complex64],
    realization: &ChannelRealization,
    constellations: &[Constellation],
) -> Result<()> {
    if realization.num_users() != constellations.len() {
        return Err(Error::usage(format!(
            "realization has {} users but {} constellations were given",
            realization.num_users(),
            constellations.len()
        )));
    }
    if y.len() != realization.antennas() {
        return Err(Error::usage(format!(
            "received vector has length {} but the channel has {} antennas",
            y.len(),
            realization.antennas()
        )));
    }
    Ok(())
}

/// Per-user symbol vectors pre-scaled by the channel: `scaled[n][i] = h_n * s_{n,i}`.
fn scaled_points(
    realization: &ChannelRealization,
    constellations: &[Constellation],
) -> Vec<Vec<Complex64>> {
    let l = realization.antennas();
    let mut scaled = Vec::with_capacity(constellations.len());
    for (h, c) in realization.effective.iter().zip(constellations) {
        let mut per_user = Vec::with_capacity(c.order() * l);
        for i in 0..c.order() {
            let p = c.point(i);
            per_user.extend(h.iter().map(|&coeff| coeff * p));
        }
        scaled.push(per_user);
    }
    scaled
}

/// Enumerates every composite hypothesis in row-major tuple order.
///
/// Calls `visit(t, composite)` with `t` the flat tuple index and `composite`
/// the length-L vector `sum_n h_n s_{n,t_n}`, built from shared partial sums
/// so table construction and direct search produce bit-identical values.
fn for_each_composite(
    scaled: &[Vec<Complex64>],
    orders: &[usize],
    l: usize,
    mut visit: impl FnMut(usize, &[Complex64]),
) {
    let n_users = orders.len();
    let total: usize = orders.iter().product();
    let mut idx = vec![0usize; n_users];
    let mut partial = vec![Complex64::new(0.0, 0.0); (n_users + 1) * l];
    let update_level = |partial: &mut [Complex64], k: usize, idx_k: usize| {
        let (lo, hi) = partial.split_at_mut((k + 1) * l);
        let src = &lo[k * l..];
        let dst = &mut hi[..l];
        let pts = &scaled[k][idx_k * l..(idx_k + 1) * l];
        for j in 0..l {
            dst[j] = src[j] + pts[j];
        }
    };
    for k in 0..n_users {
        update_level(&mut partial, k, 0);
    }
    for t in 0..total {
        visit(t, &partial[n_users * l..]);
        if t + 1 == total {
            break;
        }
        let mut level = n_users - 1;
        loop {
            idx[level] += 1;
            if idx[level] < orders[level] {
                break;
            }
            idx[level] = 0;
            level -= 1;
        }
        for (k, &idx_k) in idx.iter().enumerate().skip(level) {
            update_level(&mut partial, k, idx_k);
        }
    }
}

fn decode_tuple(mut t: usize, orders: &[usize]) -> Vec<usize> {
    let mut indices = vec![0usize; orders.len()];
    for n in (0..orders.len()).rev() {
        indices[n] = t % orders[n];
        t /= orders[n];
    }
    indices
}

fn result_from_indices(indices: Vec<usize>, constellations: &[Constellation], metric: f64) -> DetectionResult {
    let bits = indices
        .iter()
        .zip(constellations)
        .map(|(&i, c)| c.label(i))
        .collect();
    DetectionResult {
        indices,
        bits,
        metric,
    }
}

/// Table of all `prod_n M_n` composite constellation points for one realization.
#[derive(Debug, Clone)]
pub struct CompositeTable {
    orders: Vec<usize>,
    antennas: usize,
    points: Vec<Complex64>,
}

impl CompositeTable {
    pub fn len(&self) -> usize {
        self.points.len() / self.antennas
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Composite vector for flat tuple index `t`.
    pub fn row(&self, t: usize) -> &[Complex64] {
        &self.points[t * self.antennas..(t + 1) * self.antennas]
    }
}

/// Precomputes `table[t] = sum_n h_n s_{n,t_n}` over the whole tuple space,
/// in the same row-major order the joint detector searches.
pub fn composite_points(
    realization: &ChannelRealization,
    constellations: &[Constellation],
) -> Result<CompositeTable> {
    if realization.num_users() != constellations.len() {
        return Err(Error::usage(format!(
            "realization has {} users but {} constellations were given",
            realization.num_users(),
            constellations.len()
        )));
    }
    let l = realization.antennas();
    let orders: Vec<usize> = constellations.iter().map(Constellation::order).collect();
    let total: usize = orders.iter().product();
    let scaled = scaled_points(realization, constellations);
    let mut points = Vec::with_capacity(total * l);
    for_each_composite(&scaled, &orders, l, |_, composite| {
        points.extend_from_slice(composite);
    });
    Ok(CompositeTable {
        orders,
        antennas: l,
        points,
    })
}

fn distance_sq(y: &[Complex64], c: &[Complex64]) -> f64 {
    y.iter().zip(c).map(|(&a, &b)| (a - b).norm_sqr()).sum()
}

/// Joint maximum-likelihood detection by exact exhaustive search.
pub fn jmld_detect(
    y: &[Complex64],
    realization: &ChannelRealization,
    constellations: &[Constellation],
) -> Result<DetectionResult> {
    check_dimensions(y, realization, constellations)?;
    let l = realization.antennas();
    let orders: Vec<usize> = constellations.iter().map(Constellation::order).collect();
    let scaled = scaled_points(realization, constellations);
    let mut best = f64::INFINITY;
    let mut best_t = 0usize;
    for_each_composite(&scaled, &orders, l, |t, composite| {
        let metric = distance_sq(y, composite);
        if metric < best {
            best = metric;
            best_t = t;
        }
    });
    let indices = decode_tuple(best_t, &orders);
    Ok(result_from_indices(indices, constellations, best))
}

/// Joint detection against a precomputed composite table.
///
/// Identical decisions to [`jmld_detect`] for the realization the table was
/// built from; useful when several symbols share one fading block.
pub fn jmld_detect_with_table(
    y: &[Complex64],
    table: &CompositeTable,
    constellations: &[Constellation],
) -> Result<DetectionResult> {
    if y.len() != table.antennas {
        return Err(Error::usage(format!(
            "received vector has length {} but the table has {} antennas",
            y.len(),
            table.antennas
        )));
    }
    let mut best = f64::INFINITY;
    let mut best_t = 0usize;
    for t in 0..table.len() {
        let metric = distance_sq(y, table.row(t));
        if metric < best {
            best = metric;
            best_t = t;
        }
    }
    let indices = decode_tuple(best_t, &table.orders);
    Ok(result_from_indices(indices, constellations, best))
}

/// Successive interference cancellation with instantaneous ordering.
pub fn sicd_detect(
    y: &[Complex64],
    realization: &ChannelRealization,
    constellations: &[Constellation],
) -> Result<DetectionResult> {
    sicd_detect_ordered(y, realization, constellations, SicOrdering::Instantaneous)
}

/// Successive interference cancellation with an explicit processing order.
pub fn sicd_detect_ordered(
    y: &[Complex64],
    realization: &ChannelRealization,
    constellations: &[Constellation],
    ordering: SicOrdering,
) -> Result<DetectionResult> {
    check_dimensions(y, realization, constellations)?;
    let n_users = constellations.len();
    let norms: Vec<f64> = realization
        .effective
        .iter()
        .map(|h| h.iter().map(|c| c.norm_sqr()).sum())
        .collect();
    let mut order: Vec<usize> = (0..n_users).collect();
    if ordering == SicOrdering::Instantaneous {
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(std::cmp::Ordering::Equal));
    }
    let mut residual = y.to_vec();
    let mut indices = vec![0usize; n_users];
    for &n in &order {
        let h = &realization.effective[n];
        // scalar MRC combine of the current residual
        let combined: Complex64 = h
            .iter()
            .zip(&residual)
            .map(|(&coeff, &r)| coeff.conj() * r)
            .sum();
        let r = combined / norms[n];
        let idx = constellations[n].nearest(r);
        indices[n] = idx;
        let p = constellations[n].point(idx);
        for (res, &coeff) in residual.iter_mut().zip(h) {
            *res -= coeff * p;
        }
    }
    let metric = residual.iter().map(|c| c.norm_sqr()).sum();
    Ok(result_from_indices(indices, constellations, metric))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_channel, superimpose, Scenario, UserSpec};
    use crate::constellation::{build_qam, Constellation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qam(order: usize) -> Constellation {
        Constellation::Qam(build_qam(order, 1.0).unwrap())
    }

    fn scenario(orders: &[usize], antennas: usize) -> Scenario {
        Scenario {
            users: orders
                .iter()
                .map(|&m| UserSpec {
                    mod_order: m,
                    power: 1.0,
                    channel_var: 1.0,
                })
                .collect(),
            antennas,
            bit_energy: 1.0,
            noise_psd: 1.0,
        }
    }

    fn fixed_realization(hs: &[Vec<Complex64>]) -> ChannelRealization {
        ChannelRealization {
            gains: hs.to_vec(),
            effective: hs.to_vec(),
        }
    }

    fn random_symbols<R: Rng>(rng: &mut R, cs: &[Constellation]) -> Vec<usize> {
        cs.iter().map(|c| rng.gen_range(0..c.order())).collect()
    }

    #[test]
    fn noiseless_recovery_all_users() {
        let cs = vec![qam(16), qam(4), qam(16)];
        let sc = scenario(&[16, 4, 16], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let y = superimpose(&r, &x).unwrap();
            let det = jmld_detect(&y, &r, &cs).unwrap();
            assert_eq!(det.indices, tx);
        }
    }

    #[test]
    fn matches_brute_force_metric_table() {
        let cs = vec![qam(4), qam(4)];
        let h = fixed_realization(&[
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.5, 0.0)],
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let mut y = superimpose(&h, &x).unwrap();
            y[0] += Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 0.4;

            // independent brute force over all 16 metrics
            let mut best = f64::INFINITY;
            let mut best_pair = (0, 0);
            for i in 0..4 {
                for j in 0..4 {
                    let c = h.effective[0][0] * cs[0].point(i) + h.effective[1][0] * cs[1].point(j);
                    let m = (y[0] - c).norm_sqr();
                    if m < best {
                        best = m;
                        best_pair = (i, j);
                    }
                }
            }
            let det = jmld_detect(&y, &h, &cs).unwrap();
            assert_eq!(det.indices, vec![best_pair.0, best_pair.1]);
            assert!((det.metric - best).abs() <= 1e-12 * best.max(1.0));
        }
    }

    #[test]
    fn common_scaling_leaves_decision_unchanged() {
        let cs = vec![qam(16), qam(4)];
        let sc = scenario(&[16, 4], 3);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let scale = Complex64::new(-0.8, 1.7);
        for _ in 0..100 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let mut y = superimpose(&r, &x).unwrap();
            for c in y.iter_mut() {
                *c += Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
            let det = jmld_detect(&y, &r, &cs).unwrap();

            let scaled_y: Vec<Complex64> = y.iter().map(|&c| c * scale).collect();
            let scaled_r = ChannelRealization {
                gains: r.gains.clone(),
                effective: r
                    .effective
                    .iter()
                    .map(|h| h.iter().map(|&c| c * scale).collect())
                    .collect(),
            };
            let det2 = jmld_detect(&scaled_y, &scaled_r, &cs).unwrap();
            assert_eq!(det.indices, det2.indices);
        }
    }

    #[test]
    fn metric_never_exceeds_transmitted_tuple() {
        let cs = vec![qam(4), qam(16)];
        let sc = scenario(&[4, 16], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let clean = superimpose(&r, &x).unwrap();
            let y: Vec<Complex64> = clean
                .iter()
                .map(|&c| c + Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let det = jmld_detect(&y, &r, &cs).unwrap();
            let tx_metric = distance_sq(&y, &clean);
            assert!(det.metric <= tx_metric + 1e-12);
        }
    }

    #[test]
    fn relabeling_users_permutes_result() {
        let cs = vec![qam(16), qam(4)];
        let sc = scenario(&[16, 4], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let mut y = superimpose(&r, &x).unwrap();
            for c in y.iter_mut() {
                *c += Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5) * 0.3;
            }
            let det = jmld_detect(&y, &r, &cs).unwrap();

            let swapped = ChannelRealization {
                gains: vec![r.gains[1].clone(), r.gains[0].clone()],
                effective: vec![r.effective[1].clone(), r.effective[0].clone()],
            };
            let cs_swapped = vec![cs[1].clone(), cs[0].clone()];
            let det2 = jmld_detect(&y, &swapped, &cs_swapped).unwrap();
            assert_eq!(det.indices[0], det2.indices[1]);
            assert_eq!(det.indices[1], det2.indices[0]);
        }
    }

    #[test]
    fn ties_break_to_smallest_enumeration_index() {
        // user 2 has a zero channel: every hypothesis for it ties
        let cs = vec![qam(4), qam(4)];
        let h = fixed_realization(&[
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0)],
        ]);
        let y = vec![cs[0].point(2)];
        let det = jmld_detect(&y, &h, &cs).unwrap();
        assert_eq!(det.indices, vec![2, 0]);
    }

    #[test]
    fn single_user_jmld_is_mrc_slicing() {
        let cs = vec![qam(16)];
        let sc = scenario(&[16], 4);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10_000 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x = vec![cs[0].point(tx[0])];
            let clean = superimpose(&r, &x).unwrap();
            let y: Vec<Complex64> = clean
                .iter()
                .map(|&c| c + Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let det = jmld_detect(&y, &r, &cs).unwrap();
            let h = &r.effective[0];
            let norm: f64 = h.iter().map(|c| c.norm_sqr()).sum();
            let combined: Complex64 = h.iter().zip(&y).map(|(&c, &v)| c.conj() * v).sum();
            assert_eq!(det.indices[0], cs[0].nearest(combined / norm));
        }
    }

    #[test]
    fn sicd_single_user_equals_jmld() {
        let cs = vec![qam(16)];
        let sc = scenario(&[16], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..2_000 {
            let r = sample_channel(&mut rng, &sc);
            let y: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0))
                .collect();
            let a = jmld_detect(&y, &r, &cs).unwrap();
            let b = sicd_detect(&y, &r, &cs).unwrap();
            assert_eq!(a.indices, b.indices);
        }
    }

    #[test]
    fn sicd_noiseless_with_separated_powers() {
        let cs = vec![qam(4), qam(4)];
        let h = fixed_realization(&[
            vec![Complex64::new(100.0, 0.0)],
            vec![Complex64::new(1.0, 0.0)],
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..256 {
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let y = superimpose(&h, &x).unwrap();
            let det = sicd_detect(&y, &h, &cs).unwrap();
            assert_eq!(det.indices, tx, "noiseless SIC with 100:1 gains");
        }
    }

    #[test]
    fn sicd_equal_channels_fails() {
        // equal channels collapse the first slicing stage onto the composite
        let cs = vec![qam(4), qam(4)];
        let h = fixed_realization(&[
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0)],
        ]);
        let tx = [cs[0].map_bits(&[0, 0]).unwrap(), cs[1].map_bits(&[1, 1]).unwrap()];
        let x = [cs[0].point(tx[0]), cs[1].point(tx[1])];
        assert!((x[0] + x[1]).norm() < 1e-12, "antipodal pair sums to zero");
        let y = superimpose(&h, &x).unwrap();
        let det = sicd_detect(&y, &h, &cs).unwrap();
        assert_ne!(det.indices, tx.to_vec(), "degenerate equal-channel case must fail");
    }

    #[test]
    fn sicd_noiseless_random_channels() {
        // well-separated powers and L = 4 diversity: no error in 10^4 trials
        let cs = vec![qam(4), qam(4)];
        let sc = Scenario {
            users: vec![
                UserSpec {
                    mod_order: 4,
                    power: 1.0,
                    channel_var: 1.0,
                },
                UserSpec {
                    mod_order: 4,
                    power: 1e-4,
                    channel_var: 1.0,
                },
            ],
            antennas: 4,
            bit_energy: 1.0,
            noise_psd: 0.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let mut errors = 0usize;
        for _ in 0..10_000 {
            let r = sample_channel(&mut rng, &sc);
            let tx = random_symbols(&mut rng, &cs);
            let x: Vec<Complex64> = tx.iter().zip(&cs).map(|(&i, c)| c.point(i)).collect();
            let y = superimpose(&r, &x).unwrap();
            let jm = jmld_detect(&y, &r, &cs).unwrap();
            let si = sicd_detect(&y, &r, &cs).unwrap();
            if jm.indices != tx {
                errors += 1;
            }
            if si.indices != tx {
                errors += 1;
            }
        }
        assert_eq!(errors, 0, "noiseless detection must be error-free");
    }

    #[test]
    fn sic_ordering_modes_differ_when_instantaneous_order_flips() {
        // user 2 is statistically weaker but instantaneously stronger here:
        // instantaneous ordering cancels it first and recovers both users,
        // statistical ordering slices user 1 against 10x interference
        let cs = vec![qam(4), qam(4)];
        let h = fixed_realization(&[
            vec![Complex64::new(0.1, 0.0)],
            vec![Complex64::new(1.0, 0.0)],
        ]);
        let tx = [cs[0].map_bits(&[1, 1]).unwrap(), cs[1].map_bits(&[0, 0]).unwrap()];
        let x = [cs[0].point(tx[0]), cs[1].point(tx[1])];
        let y = superimpose(&h, &x).unwrap();

        let inst = sicd_detect_ordered(&y, &h, &cs, SicOrdering::Instantaneous).unwrap();
        assert_eq!(inst.indices, tx.to_vec());

        let stat = sicd_detect_ordered(&y, &h, &cs, SicOrdering::Statistical).unwrap();
        assert_ne!(stat.indices[0], tx[0], "user 1 sliced against dominant interference");
    }

    #[test]
    fn composite_table_matches_direct_sum() {
        let cs = vec![qam(4), qam(4)];
        let sc = scenario(&[4, 4], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let r = sample_channel(&mut rng, &sc);
        let table = composite_points(&r, &cs).unwrap();
        assert_eq!(table.len(), 16);
        for i in 0..4 {
            for j in 0..4 {
                let t = i * 4 + j;
                for l in 0..2 {
                    let direct =
                        r.effective[0][l] * cs[0].point(i) + r.effective[1][l] * cs[1].point(j);
                    assert!((table.row(t)[l] - direct).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn composite_table_single_user() {
        let cs = vec![qam(16)];
        let sc = scenario(&[16], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let r = sample_channel(&mut rng, &sc);
        let table = composite_points(&r, &cs).unwrap();
        assert_eq!(table.len(), 16);
        for i in 0..16 {
            assert!((table.row(i)[0] - r.effective[0][0] * cs[0].point(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn table_and_direct_detection_agree() {
        let cs = vec![qam(16), qam(4)];
        let sc = scenario(&[16, 4], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let r = sample_channel(&mut rng, &sc);
            let table = composite_points(&r, &cs).unwrap();
            let y: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(rng.gen::<f64>() * 6.0 - 3.0, rng.gen::<f64>() * 6.0 - 3.0))
                .collect();
            let a = jmld_detect(&y, &r, &cs).unwrap();
            let b = jmld_detect_with_table(&y, &table, &cs).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let cs = vec![qam(4)];
        let h = fixed_realization(&[vec![Complex64::new(1.0, 0.0)]]);
        let y = vec![Complex64::new(0.0, 0.0); 2];
        assert!(matches!(jmld_detect(&y, &h, &cs), Err(Error::Usage(_))));
        assert!(matches!(sicd_detect(&y, &h, &cs), Err(Error::Usage(_))));
        let y1 = vec![Complex64::new(0.0, 0.0)];
        assert!(jmld_detect(&y1, &h, &[]).is_err());
    }
}
