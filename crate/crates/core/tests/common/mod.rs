#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use vsdsim::prelude::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random phase, radius a random fraction of `bound`.
fn polar(rng: &mut ChaCha8Rng, bound: f64) -> C64 {
    let radius = rng.random_range(0.0..1.0) * bound;
    C64::from_polar(radius, rng.random_range(0.0..2.0 * PI))
}

/// Valid X state: random populations, coherences filling a random fraction
/// of their positivity bound, random phases.
pub fn random_xstate(rng: &mut ChaCha8Rng) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..1.0));
    let s: f64 = w.iter().sum();
    let p = w.map(|v| v / s);
    let c14 = polar(rng, (p[0] * p[3]).sqrt());
    let c23 = polar(rng, (p[1] * p[2]).sqrt());
    XState::new(p, c14, c23).expect("generator emits valid states")
}

pub fn random_noise(rng: &mut ChaCha8Rng) -> NoiseParams {
    let omega = 10f64.powf(rng.random_range(9.0..12.0));
    let ratio = rng.random_range(0.0..0.05);
    let sf = rng.random_range(0.0..1e7);
    let temperature = rng.random_range(1e-3..1.0);
    NoiseParams::new(omega, ratio * omega, sf, temperature).unwrap()
}

pub fn random_mode(rng: &mut ChaCha8Rng) -> NoiseMode {
    NoiseMode::ALL[rng.random_range(0..3)]
}

/// Largest entrywise difference between the X-state and dense paths.
pub fn apply_gap(x: &XState, p: &NoiseParams, t: f64, mode: NoiseMode) -> f64 {
    let m = TwoQubitMap::identical(t, p, mode).unwrap();
    let fast = to_dense(&apply_x(&m, x).unwrap());
    let slow = apply_general(&m, &to_dense(x));
    (*fast.matrix() - *slow.matrix()).max_abs()
}

pub fn reference(family: Family, r: f64, mode: NoiseMode) -> SweepConfig {
    SweepConfig::new(
        EwlParams::bell(family, r).unwrap(),
        NoiseParams::josephson_reference(),
        mode,
    )
}
