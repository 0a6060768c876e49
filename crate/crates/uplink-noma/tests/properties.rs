//! Property-based invariants over randomized inputs.

mod common;

use proptest::prelude::*;

use uplink_noma::bound::{
    avg_q_over_fading, brute_force_distances, composite_distance_vectors, to_tuple_multiset,
};
use uplink_noma::bound::distance::tested_range;
use uplink_noma::constellation::{build, build_pam, build_qam, Constellation, ModulationKind};
use uplink_noma::montecarlo::wilson_interval;

fn pam_orders() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 4, 8, 16, 32])
}

fn qam_orders() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![4usize, 16, 64, 256])
}

proptest! {
    #[test]
    fn pam_energy_gray_and_half_plane(order in pam_orders(), eb in 0.05f64..20.0) {
        let c = build_pam(order, eb).unwrap();
        let top = c.bits_per_symbol - 1;
        for i in 0..order {
            if i > 0 {
                prop_assert_eq!((c.labels[i - 1] ^ c.labels[i]).count_ones(), 1);
            }
            prop_assert_eq!((c.labels[i] >> top) & 1 == 1, c.points[i] > 0.0);
        }
        let mean = c.points.iter().map(|p| p * p).sum::<f64>() / order as f64;
        let expect = eb * (order as f64).log2();
        prop_assert!(((mean - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn qam_energy_and_axis_structure(order in qam_orders(), eb in 0.05f64..20.0) {
        let c = build_qam(order, eb).unwrap();
        let mean = c.points.iter().map(|p| p.norm_sqr()).sum::<f64>() / order as f64;
        let expect = eb * (order as f64).log2();
        prop_assert!(((mean - expect) / expect).abs() < 1e-12);
        // in-phase sign tracks the first label bit for every point
        let top = c.bits_per_symbol - 1;
        for i in 0..order {
            prop_assert_eq!((c.labels[i] >> top) & 1 == 1, c.points[i].re > 0.0);
        }
    }

    #[test]
    fn bit_mapping_round_trips(order in qam_orders(), word in 0u32..256) {
        let c = build(ModulationKind::Qam, order, 1.0).unwrap();
        let bits_per = c.bits_per_symbol();
        let word = word & ((1 << bits_per) - 1);
        let bits: Vec<u8> = (0..bits_per).rev().map(|k| ((word >> k) & 1) as u8).collect();
        let idx = c.map_bits(&bits).unwrap();
        prop_assert_eq!(c.symbol_bits(idx).unwrap(), bits);
    }

    #[test]
    fn nearest_is_identity_on_points(order in qam_orders()) {
        let c = build(ModulationKind::Qam, order, 1.0).unwrap();
        for i in 0..order {
            prop_assert_eq!(c.nearest(c.point(i)), i);
        }
    }

    #[test]
    fn kronecker_equals_brute_force(
        seed in 0u64..1000,
        n_users in 1usize..=3,
        qam in any::<bool>(),
    ) {
        let kind = if qam { ModulationKind::Qam } else { ModulationKind::Pam };
        let choices: &[usize] = if qam { &[4, 16] } else { &[2, 4, 8] };
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let orders: Vec<usize> = (0..n_users)
            .map(|_| choices[(next() % choices.len() as u64) as usize])
            .collect();
        let target = (next() % n_users as u64) as usize;
        let tuple: Vec<usize> = orders
            .iter()
            .map(|&o| (next() % tested_range(kind, o) as u64) as usize)
            .collect();
        let kron = composite_distance_vectors(target, &tuple, &orders, kind).unwrap();
        let brute = brute_force_distances(target, &tuple, &orders, kind).unwrap();
        prop_assert_eq!(to_tuple_multiset(&kron), to_tuple_multiset(&brute));
    }

    #[test]
    fn fading_average_is_bounded_and_monotone(
        gamma_lo in 0.0f64..500.0,
        delta in 0.001f64..500.0,
        branches in 1usize..=8,
    ) {
        let lo = avg_q_over_fading(gamma_lo + delta, branches).unwrap();
        let hi = avg_q_over_fading(gamma_lo, branches).unwrap();
        prop_assert!(lo > 0.0 && hi <= 0.5);
        prop_assert!(lo < hi, "must strictly decrease in gamma: {lo} vs {hi}");
        if branches > 1 {
            let fewer = avg_q_over_fading(gamma_lo + delta, branches - 1).unwrap();
            prop_assert!(lo < fewer || gamma_lo + delta == 0.0);
        }
    }

    #[test]
    fn wilson_contains_the_estimate(errors in 0u64..5000, extra in 1u64..100_000) {
        let trials = errors + extra;
        let (lo, hi) = wilson_interval(errors, trials, 0.95).unwrap();
        let p = errors as f64 / trials as f64;
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        prop_assert!(lo <= p && p <= hi);
    }

    #[test]
    fn composite_vector_lengths(
        qam in any::<bool>(),
        pick in 0usize..4,
    ) {
        let kind = if qam { ModulationKind::Qam } else { ModulationKind::Pam };
        let orders: Vec<usize> = match (qam, pick) {
            (true, 0) => vec![4, 4],
            (true, 1) => vec![16, 4],
            (true, 2) => vec![16, 16, 16],
            (true, _) => vec![64],
            (false, 0) => vec![2, 2],
            (false, 1) => vec![8, 4],
            (false, 2) => vec![4, 4, 4],
            (false, _) => vec![16],
        };
        let space: usize = orders.iter().product();
        let tuple = vec![0usize; orders.len()];
        for target in 0..orders.len() {
            let vs = composite_distance_vectors(target, &tuple, &orders, kind).unwrap();
            for v in &vs {
                prop_assert_eq!(v.len(), space / 2);
            }
            // the target's entries never vanish
            prop_assert!(vs[target].iter().all(|d| !d.is_zero()));
        }
    }
}

/// Constellation coordinates of QAM equal the PAM level grid rescaled.
#[test]
fn qam_axes_reuse_pam_levels() {
    for order in [4usize, 16, 64, 256] {
        let q = build_qam(order, 1.0).unwrap();
        let axis = build_pam(q.axis_order, 1.0).unwrap();
        for (idx, p) in q.points.iter().enumerate() {
            let i_in = idx / q.axis_order;
            let i_quad = idx % q.axis_order;
            let expect_re = axis.points[i_in] / axis.scale * q.scale;
            let expect_im = axis.points[i_quad] / axis.scale * q.scale;
            assert!((p.re - expect_re).abs() < 1e-12);
            assert!((p.im - expect_im).abs() < 1e-12);
        }
    }
}

/// All sixteen QAM-16 words map to distinct points.
#[test]
fn qam16_words_are_a_bijection() {
    let c = Constellation::Qam(build_qam(16, 1.0).unwrap());
    let mut seen = std::collections::HashSet::new();
    for w in 0u32..16 {
        let bits: Vec<u8> = (0..4).rev().map(|k| ((w >> k) & 1) as u8).collect();
        assert!(seen.insert(c.map_bits(&bits).unwrap()));
    }
    assert_eq!(seen.len(), 16);
}
