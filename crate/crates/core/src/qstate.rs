//! Two-qubit X-states: validation, correlation parameters, spectra, reduced
//! states and entropies.
//!
//! An X-state has nonzero entries only on the main diagonal and the
//! anti-diagonal of its 4×4 density matrix (basis order |00⟩, |01⟩, |10⟩,
//! |11⟩ with qubit A first). Every quantity here comes from closed-form 2×2
//! block algebra; the dense eigensolver lives in [`crate::oracle`] and is used
//! only for cross-checks.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as ComplexScalar;

/// Absolute tolerance for trace, Hermiticity, X-shape and positivity checks.
pub const STATE_TOL: f64 = 1e-12;

/// Slack allowed on the sum of a spectrum passed to [`von_neumann_entropy`].
const SPECTRUM_SUM_TOL: f64 = 1e-11;

const ZERO: ComplexScalar = ComplexScalar::new(0.0, 0.0);

/// Largest entry modulus of a complex matrix.
pub fn max_entry_norm<'a>(entries: impl IntoIterator<Item = &'a ComplexScalar>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Validated two-qubit X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    a11: f64,
    a22: f64,
    a33: f64,
    a44: f64,
    a14: ComplexScalar,
    a23: ComplexScalar,
}

impl XState {
    /// Builds an X-state from its six independent entries.
    ///
    /// Diagonal entries within [`STATE_TOL`] below zero are clamped to zero.
    pub fn new(
        a11: f64,
        a22: f64,
        a33: f64,
        a44: f64,
        a14: ComplexScalar,
        a23: ComplexScalar,
    ) -> Result<Self> {
        let reals = [a11, a22, a33, a44, a14.re, a14.im, a23.re, a23.im];
        if reals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("X-state entries"));
        }
        let trace = a11 + a22 + a33 + a44;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let mut diag = [a11, a22, a33, a44];
        for (i, d) in diag.iter_mut().enumerate() {
            if *d < -STATE_TOL {
                return Err(Error::NotPositive(format!(
                    "diagonal entry a{0}{0} = {1:e} is negative",
                    i + 1,
                    d
                )));
            }
            *d = d.max(0.0);
        }
        let [a11, a22, a33, a44] = diag;
        if a14.norm_sqr() > a11 * a44 + STATE_TOL {
            return Err(Error::NotPositive(format!(
                "|a14|^2 = {:e} exceeds a11*a44 = {:e}",
                a14.norm_sqr(),
                a11 * a44
            )));
        }
        if a23.norm_sqr() > a22 * a33 + STATE_TOL {
            return Err(Error::NotPositive(format!(
                "|a23|^2 = {:e} exceeds a22*a33 = {:e}",
                a23.norm_sqr(),
                a22 * a33
            )));
        }
        Ok(Self {
            a11,
            a22,
            a33,
            a44,
            a14,
            a23,
        })
    }

    /// The maximally mixed state I/4.
    pub fn maximally_mixed() -> Self {
        Self {
            a11: 0.25,
            a22: 0.25,
            a33: 0.25,
            a44: 0.25,
            a14: ZERO,
            a23: ZERO,
        }
    }

    pub fn a11(&self) -> f64 {
        self.a11
    }
    pub fn a22(&self) -> f64 {
        self.a22
    }
    pub fn a33(&self) -> f64 {
        self.a33
    }
    pub fn a44(&self) -> f64 {
        self.a44
    }
    pub fn a14(&self) -> ComplexScalar {
        self.a14
    }
    pub fn a23(&self) -> ComplexScalar {
        self.a23
    }

    /// Dense 4×4 density matrix.
    pub fn to_matrix(&self) -> Matrix4<ComplexScalar> {
        let r = |v: f64| ComplexScalar::new(v, 0.0);
        let mut m = Matrix4::from_element(ZERO);
        m[(0, 0)] = r(self.a11);
        m[(1, 1)] = r(self.a22);
        m[(2, 2)] = r(self.a33);
        m[(3, 3)] = r(self.a44);
        m[(0, 3)] = self.a14;
        m[(3, 0)] = self.a14.conj();
        m[(1, 2)] = self.a23;
        m[(2, 1)] = self.a23.conj();
        m
    }

    pub fn params(&self) -> CorrelationParams {
        correlation_params(self)
    }
}

/// Parameterization ρ = ¼[[1+d1, ·, ·, c1−c2], [·, 1+d2, c1+c2, ·], …].
///
/// `a3` and `b3` are the σ₃ Bloch components of qubits A and B, `c3` the
/// σ₃⊗σ₃ correlation; `c1` and `c2` carry the anti-diagonal coherences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationParams {
    pub a3: f64,
    pub b3: f64,
    pub c3: f64,
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
}

impl CorrelationParams {
    /// Builds the parameter set from (a3, b3, c3, c1, c2), deriving d1…d4.
    pub fn from_components(
        a3: f64,
        b3: f64,
        c3: f64,
        c1: ComplexScalar,
        c2: ComplexScalar,
    ) -> Self {
        Self {
            a3,
            b3,
            c3,
            c1,
            c2,
            d1: c3 + a3 + b3,
            d2: -c3 + a3 - b3,
            d3: -c3 - a3 + b3,
            d4: c3 - a3 - b3,
        }
    }

    /// Rebuilds the X-state these parameters describe.
    pub fn reconstruct(&self) -> Result<XState> {
        XState::new(
            (1.0 + self.d1) / 4.0,
            (1.0 + self.d2) / 4.0,
            (1.0 + self.d3) / 4.0,
            (1.0 + self.d4) / 4.0,
            (self.c1 - self.c2) / 4.0,
            (self.c1 + self.c2) / 4.0,
        )
    }
}

pub fn correlation_params(s: &XState) -> CorrelationParams {
    let a3 = s.a11 - s.a44 + s.a22 - s.a33;
    let b3 = s.a11 - s.a44 - s.a22 + s.a33;
    let c3 = s.a11 + s.a44 - s.a22 - s.a33;
    let c1 = (s.a23 + s.a14) * 2.0;
    let c2 = (s.a23 - s.a14) * 2.0;
    CorrelationParams::from_components(a3, b3, c3, c1, c2)
}

/// Validates a dense 4×4 matrix as an X-state.
///
/// Checks run in the order finiteness, X-shape, Hermiticity, trace,
/// positivity. Imaginary parts of diagonal entries below [`STATE_TOL`] are
/// discarded.
pub fn validate_xstate(m: &Matrix4<ComplexScalar>) -> Result<XState> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    for row in 0..4 {
        for col in 0..4 {
            let on_pattern = row == col || row + col == 3;
            let modulus = m[(row, col)].norm();
            if !on_pattern && modulus > STATE_TOL {
                return Err(Error::NotXShaped { row, col, modulus });
            }
        }
    }
    for row in 0..4 {
        for col in row..4 {
            let deviation = (m[(row, col)] - m[(col, row)].conj()).norm();
            if deviation > STATE_TOL {
                return Err(Error::NotHermitian {
                    row,
                    col,
                    deviation,
                });
            }
        }
    }
    XState::new(
        m[(0, 0)].re,
        m[(1, 1)].re,
        m[(2, 2)].re,
        m[(3, 3)].re,
        m[(0, 3)],
        m[(1, 2)],
    )
}

/// Four eigenvalues in descending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum4([f64; 4]);

impl Spectrum4 {
    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

fn block_eigenvalues(p: f64, q: f64, coherence: ComplexScalar) -> [f64; 2] {
    let mean = 0.5 * (p + q);
    let radius = (0.25 * (p - q).powi(2) + coherence.norm_sqr()).sqrt();
    [mean + radius, mean - radius]
}

/// Eigenvalues of an X-state from its two 2×2 blocks, clamped at zero.
pub fn xstate_spectrum(s: &XState) -> Spectrum4 {
    let [e1, e2] = block_eigenvalues(s.a11, s.a44, s.a14);
    let [e3, e4] = block_eigenvalues(s.a22, s.a33, s.a23);
    let mut vals = [e1, e2, e3, e4].map(|v| v.max(0.0));
    vals.sort_by(|a, b| b.total_cmp(a));
    Spectrum4(vals)
}

/// Single-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(Matrix2<ComplexScalar>);

impl DensityMatrix2 {
    pub fn diagonal(p0: f64, p1: f64) -> Self {
        let mut m = Matrix2::from_element(ZERO);
        m[(0, 0)] = ComplexScalar::new(p0, 0.0);
        m[(1, 1)] = ComplexScalar::new(p1, 0.0);
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix2<ComplexScalar> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[(0, 0)].re + self.0[(1, 1)].re
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let [hi, lo] = block_eigenvalues(self.0[(0, 0)].re, self.0[(1, 1)].re, self.0[(0, 1)]);
        [hi, lo.max(0.0)]
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(&self.eigenvalues()).unwrap_or(0.0)
    }
}

/// Reduced state of qubit B (partial trace over A).
pub fn reduced_b(s: &XState) -> DensityMatrix2 {
    DensityMatrix2::diagonal(s.a11 + s.a33, s.a22 + s.a44)
}

/// Reduced state of qubit A (partial trace over B).
pub fn reduced_a(s: &XState) -> DensityMatrix2 {
    DensityMatrix2::diagonal(s.a11 + s.a22, s.a33 + s.a44)
}

/// Shannon entropy in bits of a spectrum, with 0·log₂0 = 0.
pub fn von_neumann_entropy(spectrum: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    let mut sum = 0.0;
    for &l in spectrum {
        if !l.is_finite() {
            return Err(Error::NonFinite("spectrum"));
        }
        if l < -STATE_TOL {
            return Err(Error::Domain(format!("negative eigenvalue {l:e}")));
        }
        sum += l;
        if l > 0.0 {
            total -= l * l.log2();
        }
    }
    if sum > 1.0 + SPECTRUM_SUM_TOL {
        return Err(Error::Domain(format!("spectrum sums to {sum}")));
    }
    Ok(total)
}

/// Binary entropy H(λ) = −λlog₂λ − (1−λ)log₂(1−λ).
pub fn binary_entropy(lambda: f64) -> f64 {
    let l = lambda.clamp(0.0, 1.0);
    let term = |v: f64| if v > 0.0 { -v * v.log2() } else { 0.0 };
    term(l) + term(1.0 - l)
}

/// Binary entropy of the spectrum ½(1 ± deviation).
///
/// Evaluates both eigenvalues from `deviation` directly so that a
/// deviation close to 1 keeps full relative precision in the small one.
pub fn binary_entropy_of_deviation(deviation: f64) -> f64 {
    let d = deviation.abs().min(1.0);
    let term = |v: f64| if v > 0.0 { -v * v.log2() } else { 0.0 };
    term(0.5 * (1.0 + d)) + term(0.5 * (1.0 - d))
}

/// S(ρ_AB) in bits.
pub fn joint_entropy(s: &XState) -> f64 {
    von_neumann_entropy(&xstate_spectrum(s).values()).expect("X-state spectrum is a distribution")
}

/// I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB).
pub fn mutual_information(s: &XState) -> f64 {
    reduced_a(s).entropy() + reduced_b(s).entropy() - joint_entropy(s)
}

/// Werner state ρ_W(z) with a14 = z/2, valid for 0 ≤ z ≤ 1.
pub fn werner_state(z: f64) -> Result<XState> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("Werner parameter {z} outside [0, 1]")));
    }
    XState::new(
        (1.0 + z) / 4.0,
        (1.0 - z) / 4.0,
        (1.0 - z) / 4.0,
        (1.0 + z) / 4.0,
        ComplexScalar::new(z / 2.0, 0.0),
        ZERO,
    )
}

/// Bell-diagonal state with correlation vector (c1, c2, c3).
pub fn bell_diagonal_state(c1: f64, c2: f64, c3: f64) -> Result<XState> {
    XState::new(
        (1.0 + c3) / 4.0,
        (1.0 - c3) / 4.0,
        (1.0 - c3) / 4.0,
        (1.0 + c3) / 4.0,
        ComplexScalar::new((c1 - c2) / 4.0, 0.0),
        ComplexScalar::new((c1 + c2) / 4.0, 0.0),
    )
}

/// JSON `{"re": .., "im": ..}` complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<JsonComplex> for ComplexScalar {
    fn from(c: JsonComplex) -> Self {
        ComplexScalar::new(c.re, c.im)
    }
}

impl From<ComplexScalar> for JsonComplex {
    fn from(c: ComplexScalar) -> Self {
        JsonComplex { re: c.re, im: c.im }
    }
}

/// On-disk state description: either the six X entries or a full matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Entries {
        a11: f64,
        a22: f64,
        a33: f64,
        a44: f64,
        a14: JsonComplex,
        a23: JsonComplex,
    },
    Matrix {
        matrix: [[JsonComplex; 4]; 4],
    },
}

impl StateFile {
    pub fn into_xstate(self) -> Result<XState> {
        match self {
            StateFile::Entries {
                a11,
                a22,
                a33,
                a44,
                a14,
                a23,
            } => XState::new(a11, a22, a33, a44, a14.into(), a23.into()),
            StateFile::Matrix { matrix } => {
                let m = Matrix4::from_fn(|r, c| matrix[r][c].into());
                validate_xstate(&m)
            }
        }
    }
}

impl From<&XState> for StateFile {
    fn from(s: &XState) -> Self {
        StateFile::Entries {
            a11: s.a11,
            a22: s.a22,
            a33: s.a33,
            a44: s.a44,
            a14: s.a14.into(),
            a23: s.a23.into(),
        }
    }
}
