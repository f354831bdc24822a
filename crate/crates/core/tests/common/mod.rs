#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xdiscord::qstate::{ComplexScalar, XState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid X-state: diagonal from normalized uniform weights, each
/// coherence a random fraction of its positivity bound with a random phase.
pub fn random_xstate<R: Rng>(rng: &mut R) -> XState {
    let w: [f64; 4] = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
    let total: f64 = w.iter().sum();
    let [a11, a22, a33] = [w[0] / total, w[1] / total, w[2] / total];
    let a44 = 1.0 - a11 - a22 - a33;
    let r14 = rng.gen::<f64>() * (a11 * a44).sqrt();
    let r23 = rng.gen::<f64>() * (a22 * a33).sqrt();
    let a14 = ComplexScalar::from_polar(r14, rng.gen_range(0.0..2.0 * PI));
    let a23 = ComplexScalar::from_polar(r23, rng.gen_range(0.0..2.0 * PI));
    XState::new(a11, a22, a33, a44, a14, a23).expect("generator produces valid states")
}

pub fn random_states(seed: u64, n: usize) -> Vec<XState> {
    let mut r = rng(seed);
    (0..n).map(|_| random_xstate(&mut r)).collect()
}

/// Conjugation by I⊗σ₁.
pub fn flip_b(s: &XState) -> XState {
    XState::new(s.a22(), s.a11(), s.a44(), s.a33(), s.a23(), s.a14()).unwrap()
}

pub fn uniform_diag_state() -> XState {
    XState::new(
        0.25,
        0.25,
        0.25,
        0.25,
        ComplexScalar::new(0.0625, 0.0),
        ComplexScalar::new(0.125, 0.0),
    )
    .unwrap()
}
