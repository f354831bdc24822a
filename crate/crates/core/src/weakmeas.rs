//! Weak measurements on qubit B and the conditional ensemble they leave on A.
//!
//! The measurement basis is `V|k⟩` with `V = tI + i y·σ`. The post-measurement
//! ensemble of an X-state depends on `V` only through the unit vector
//! `(z1, z2, z3)` returned by [`direction_from_unitary`], so everything below
//! works on [`MeasurementDirection`].

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;

use crate::error::{Branch, Error, Result};
use crate::qstate::{ComplexScalar, CorrelationParams};
#[cfg(test)]
use crate::qstate::max_entry_norm;

/// Tolerance on unit-norm constraints.
pub const NORM_TOL: f64 = 1e-12;

/// Branch denominators `1 ∓ b3·z3·tanh x` at or below this are treated as
/// zero-probability outcomes.
pub const DEGENERATE_TOL: f64 = 1e-14;

/// Measurement strength `x ≥ 0`, or the projective limit (`tanh x = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeakStrength {
    Finite(f64),
    Projective,
}

impl WeakStrength {
    /// Accepts finite `x ≥ 0`; `+∞` maps to [`WeakStrength::Projective`].
    pub fn new(x: f64) -> Result<Self> {
        if x == f64::INFINITY {
            return Ok(WeakStrength::Projective);
        }
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!(
                "measurement strength must be finite and >= 0, got {x}"
            )));
        }
        Ok(WeakStrength::Finite(x))
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, WeakStrength::Projective)
    }

    pub fn tanh(&self) -> f64 {
        match *self {
            WeakStrength::Finite(x) => x.tanh(),
            WeakStrength::Projective => 1.0,
        }
    }

    /// `1 − tanh x`, evaluated as `2/(1 + e^{2x})` to avoid cancellation.
    pub fn complement(&self) -> f64 {
        match *self {
            WeakStrength::Finite(x) => 2.0 / (1.0 + (2.0 * x).exp()),
            WeakStrength::Projective => 0.0,
        }
    }
}

impl fmt::Display for WeakStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeakStrength::Finite(x) => write!(f, "{x}"),
            WeakStrength::Projective => f.write_str("inf"),
        }
    }
}

impl FromStr for WeakStrength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" => Ok(WeakStrength::Projective),
            other => {
                let x: f64 = other
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse strength {other:?}")))?;
                WeakStrength::new(x)
            }
        }
    }
}

/// Unit vector selecting the measurement axis `Vσ₃V† = z·σ` on qubit B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    z1: f64,
    z2: f64,
    z3: f64,
}

impl MeasurementDirection {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let norm_sq = z1 * z1 + z2 * z2 + z3 * z3;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!(
                "direction ({z1}, {z2}, {z3}) is not a unit vector"
            )));
        }
        Ok(Self { z1, z2, z3 })
    }

    /// Polar angle from the z3 axis and azimuth in the (z1, z2) plane.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            z1: st * cp,
            z2: st * sp,
            z3: ct,
        }
    }

    pub fn angles(&self) -> (f64, f64) {
        (self.z3.clamp(-1.0, 1.0).acos(), self.z2.atan2(self.z1))
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }
    pub fn z2(&self) -> f64 {
        self.z2
    }
    pub fn z3(&self) -> f64 {
        self.z3
    }

    pub fn components(&self) -> [f64; 3] {
        [self.z1, self.z2, self.z3]
    }

    pub(crate) const fn axis_unchecked(z1: f64, z2: f64, z3: f64) -> Self {
        Self { z1, z2, z3 }
    }
}

/// Real parameters of `V = tI + i(y1σ1 + y2σ2 + y3σ3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryParams {
    pub t: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl UnitaryParams {
    pub fn new(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let norm_sq = t * t + y1 * y1 + y2 * y2 + y3 * y3;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!(
                "unitary parameters ({t}, {y1}, {y2}, {y3}) are not normalized"
            )));
        }
        Ok(Self { t, y1, y2, y3 })
    }

    /// Scales an arbitrary nonzero 4-vector onto the unit 3-sphere.
    pub fn normalized(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let n = (t * t + y1 * y1 + y2 * y2 + y3 * y3).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            t: t / n,
            y1: y1 / n,
            y2: y2 / n,
            y3: y3 / n,
        })
    }

    pub fn identity() -> Self {
        Self {
            t: 1.0,
            y1: 0.0,
            y2: 0.0,
            y3: 0.0,
        }
    }

    pub fn matrix(&self) -> Matrix2<ComplexScalar> {
        let c = ComplexScalar::new;
        Matrix2::new(
            c(self.t, self.y3),
            c(self.y2, self.y1),
            c(-self.y2, self.y1),
            c(self.t, -self.y3),
        )
    }
}

pub fn direction_from_unitary(u: &UnitaryParams) -> MeasurementDirection {
    let UnitaryParams { t, y1, y2, y3 } = *u;
    MeasurementDirection {
        z1: 2.0 * (-t * y2 + y1 * y3),
        z2: 2.0 * (t * y1 + y2 * y3),
        z3: t * t + y3 * y3 - y1 * y1 - y2 * y2,
    }
}

/// `(P(+x), P(−x))` for the basis `{VΠ₀V†, VΠ₁V†}`.
pub fn weak_operators(
    x: WeakStrength,
    u: &UnitaryParams,
) -> (Matrix2<ComplexScalar>, Matrix2<ComplexScalar>) {
    let one_minus = x.complement();
    let one_plus = 2.0 - one_minus;
    let small = (0.5 * one_minus).sqrt();
    let large = (0.5 * one_plus).sqrt();

    let v = u.matrix();
    let v_dag = v.adjoint();
    let zero = ComplexScalar::new(0.0, 0.0);
    let one = ComplexScalar::new(1.0, 0.0);
    let proj0 = v * Matrix2::new(one, zero, zero, zero) * v_dag;
    let proj1 = v * Matrix2::new(zero, zero, zero, one) * v_dag;

    let plus = proj0 * ComplexScalar::new(small, 0.0) + proj1 * ComplexScalar::new(large, 0.0);
    let minus = proj0 * ComplexScalar::new(large, 0.0) + proj1 * ComplexScalar::new(small, 0.0);
    (plus, minus)
}

/// Outcome probabilities and conditional spectra of A after measuring B.
///
/// `lambda_plus`/`lambda_minus` belong to the `+x` outcome, the primed pair
/// to the `−x` outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEnsemble {
    pub p_plus: f64,
    pub p_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub lambda_plus_prime: f64,
    pub lambda_minus_prime: f64,
}

/// One measurement outcome: its probability and the Bloch-vector length of
/// the conditional state, `None` when the outcome has zero probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BranchOutcome {
    pub probability: f64,
    pub deviation: Option<f64>,
}

fn branch(a3: f64, c3z3t: f64, transverse_sq: f64, denominator: f64) -> BranchOutcome {
    let probability = (0.5 * denominator).clamp(0.0, 1.0);
    if denominator <= DEGENERATE_TOL {
        return BranchOutcome {
            probability,
            deviation: None,
        };
    }
    let numerator = ((a3 - c3z3t).powi(2) + transverse_sq).sqrt();
    BranchOutcome {
        probability,
        deviation: Some((numerator / denominator).min(1.0)),
    }
}

/// Both outcomes for an arbitrary `tanh x ∈ [−1, 1]`; index 0 is `+x`.
pub(crate) fn branch_outcomes(
    cp: &CorrelationParams,
    z: &MeasurementDirection,
    tanh: f64,
) -> [BranchOutcome; 2] {
    let a1 = z.z1 * cp.c1.re + z.z2 * cp.c2.im;
    let a2 = z.z2 * cp.c2.re - z.z1 * cp.c1.im;
    let transverse_sq = (a1 * a1 + a2 * a2) * tanh * tanh;
    let b3z3t = cp.b3 * z.z3 * tanh;
    let c3z3t = cp.c3 * z.z3 * tanh;
    [
        branch(cp.a3, c3z3t, transverse_sq, 1.0 - b3z3t),
        branch(cp.a3, -c3z3t, transverse_sq, 1.0 + b3z3t),
    ]
}

pub fn conditional_ensemble(
    cp: &CorrelationParams,
    z: &MeasurementDirection,
    x: WeakStrength,
) -> Result<ConditionalEnsemble> {
    let [plus, minus] = branch_outcomes(cp, z, x.tanh());
    let dev_plus = plus.deviation.ok_or(Error::DegenerateBranch {
        branch: Branch::Plus,
    })?;
    let dev_minus = minus.deviation.ok_or(Error::DegenerateBranch {
        branch: Branch::Minus,
    })?;
    Ok(ConditionalEnsemble {
        p_plus: plus.probability,
        p_minus: minus.probability,
        lambda_plus: 0.5 * (1.0 + dev_plus),
        lambda_minus: 0.5 * (1.0 - dev_plus),
        lambda_plus_prime: 0.5 * (1.0 + dev_minus),
        lambda_minus_prime: 0.5 * (1.0 - dev_minus),
    })
}
