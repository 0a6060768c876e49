//! Shared oracles for integration tests.
//!
//! The quadrature here is the independent reference for the closed-form
//! fading average: it integrates `Q(sqrt(zeta))` against the Erlang density
//! of the combined SNR directly, never touching the production formula.

#![allow(dead_code)]

use uplink_noma::bound::q_function;
use uplink_noma::channel::{db_to_linear, Scenario, UserSpec};

/// 15-point Gauss-Legendre nodes (symmetric half) on [-1, 1].
const GL_NODES: [f64; 8] = [
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.937273392400706,
    0.9879925180204854,
];
const GL_WEIGHTS: [f64; 8] = [
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
];

/// Composite Gauss-Legendre quadrature over `[a, b]` with uniform panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = GL_WEIGHTS[0] * f(mid);
        for i in 1..8 {
            acc += GL_WEIGHTS[i] * (f(mid - half * GL_NODES[i]) + f(mid + half * GL_NODES[i]));
        }
        total += acc * half;
    }
    total
}

/// `E[Q(sqrt(omega))]` for Erlang `omega` by numerical quadrature.
///
/// Substituting `zeta = gamma u^2` makes the integrand analytic at the origin
/// and keeps it well-scaled for any `gamma`, so uniform panels resolve it to
/// near machine precision.
pub fn quadrature_avg_q(gamma: f64, branches: usize) -> f64 {
    if gamma == 0.0 {
        return 0.5;
    }
    let l = branches;
    let mut factorial = 1.0;
    for i in 2..l {
        factorial *= i as f64;
    }
    let rate = 1.0 + gamma / 2.0;
    let upper = ((60.0 + 10.0 * l as f64) / rate).sqrt();
    let f = |u: f64| {
        let weight = 2.0 * u.powi(2 * l as i32 - 1) * (-u * u).exp() / factorial;
        q_function(gamma.sqrt() * u) * weight
    };
    integrate(f, 0.0, upper, 800)
}

/// Scenario with unit powers and per-user gains in dB, at Eb = 1.
pub fn scenario(orders: &[usize], gains_db: &[f64], antennas: usize) -> Scenario {
    Scenario {
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
    }
}
