//! Local channels acting on qubit B.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::qstate::{max_entry_norm, ComplexScalar, XState};

/// Kraus operators `{E0, E1}` with `E0†E0 + E1†E1 = I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausPair {
    e0: Matrix2<ComplexScalar>,
    e1: Matrix2<ComplexScalar>,
}

impl KrausPair {
    pub fn new(e0: Matrix2<ComplexScalar>, e1: Matrix2<ComplexScalar>) -> Result<Self> {
        let defect = max_entry_norm(&(e0.adjoint() * e0 + e1.adjoint() * e1 - Matrix2::identity()));
        if defect.is_nan() || defect > 1e-12 {
            return Err(Error::Domain(format!(
                "Kraus pair is not trace preserving (defect {defect:e})"
            )));
        }
        Ok(Self { e0, e1 })
    }

    pub fn e0(&self) -> &Matrix2<ComplexScalar> {
        &self.e0
    }

    pub fn e1(&self) -> &Matrix2<ComplexScalar> {
        &self.e1
    }
}

/// Probability that the bit-flip channel leaves the qubit untouched.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NoiseProbability(f64);

impl NoiseProbability {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("noise probability {p} outside [0, 1]")));
        }
        Ok(Self(p))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// `E0 = √p·I`, `E1 = √(1−p)·σ₁`.
pub fn bit_flip_kraus(p: NoiseProbability) -> KrausPair {
    let keep = ComplexScalar::new(p.0.sqrt(), 0.0);
    let flip = ComplexScalar::new((1.0 - p.0).sqrt(), 0.0);
    let zero = ComplexScalar::new(0.0, 0.0);
    KrausPair {
        e0: Matrix2::new(keep, zero, zero, keep),
        e1: Matrix2::new(zero, flip, flip, zero),
    }
}

/// Bit flip on B, entry by entry.
///
/// The channel mixes ρ with (I⊗σ₁)ρ(I⊗σ₁), which swaps a11↔a22, a33↔a44 and
/// a14↔a23, so the output stays an X-state. Written as `p·a + (1−p)·b`,
/// which is exact at p = 0 and p = 1.
pub fn apply_local_bitflip(s: &XState, p: NoiseProbability) -> XState {
    let p = p.0;
    let q = 1.0 - p;
    let (a11, a22, a33, a44) = (s.a11(), s.a22(), s.a33(), s.a44());
    let (a14, a23) = (s.a14(), s.a23());
    XState::new(
        p * a11 + q * a22,
        q * a11 + p * a22,
        p * a33 + q * a44,
        q * a33 + p * a44,
        a14 * p + a23 * q,
        a14 * q + a23 * p,
    )
    .expect("convex mixture of X-states is an X-state")
}

fn lift_b(e: &Matrix2<ComplexScalar>) -> Matrix4<ComplexScalar> {
    let mut m = Matrix4::from_element(ComplexScalar::new(0.0, 0.0));
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(e);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(e);
    m
}

/// Dense `Σᵢ (I⊗Eᵢ) ρ (I⊗Eᵢ)†`.
pub fn apply_kraus_b(s: &XState, k: &KrausPair) -> Matrix4<ComplexScalar> {
    let rho = s.to_matrix();
    [k.e0, k.e1]
        .iter()
        .map(|e| {
            let op = lift_b(e);
            op * rho * op.adjoint()
        })
        .fold(Matrix4::from_element(ComplexScalar::new(0.0, 0.0)), |acc, m| acc + m)
}
