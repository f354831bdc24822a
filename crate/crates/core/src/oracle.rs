//! Brute-force discord by direct operator algebra.
//!
//! Nothing here uses the closed-form ensemble or spectrum formulas: the weak
//! operators are lifted to `I⊗P(±x)`, applied to the dense 4×4 density
//! matrix, traced over B and diagonalized generically. The measurement
//! unitary is searched over a deterministic covering of the unit 3-sphere of
//! `(t, y1, y2, y3)`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use rayon::prelude::*;

use crate::error::{Branch, Error, Result};
use crate::optim::{coordinate_descent, DescentSettings};
use crate::qstate::{von_neumann_entropy, ComplexScalar, XState};
use crate::sqd::TIE_TOL;
use crate::weakmeas::{weak_operators, ConditionalEnsemble, UnitaryParams, WeakStrength, DEGENERATE_TOL};

const REFINE_TOLERANCE: f64 = 1e-10;
const REFINE_STARTS: usize = 8;
const START_SEPARATION: f64 = 0.3;
const REFINE_MAX_ITERS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub unitary_grid: usize,
    pub refine: bool,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            unitary_grid: 20_000,
            refine: true,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn new(unitary_grid: usize, refine: bool, seed: u64) -> Result<Self> {
        if unitary_grid < 24 {
            return Err(Error::Domain(format!(
                "unitary_grid must be >= 24, got {unitary_grid}"
            )));
        }
        Ok(Self {
            unitary_grid,
            refine,
            seed,
        })
    }
}

/// Super-Fibonacci spiral on the unit 3-sphere, with the fractional offset
/// of the spiral shifted by `seed`.
pub fn unitary_covering(n: usize, seed: u64) -> Vec<UnitaryParams> {
    const SQRT2: f64 = std::f64::consts::SQRT_2;
    const PSI: f64 = 1.533_751_168_755_204_3;
    const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;
    let offset = (0.5 + seed as f64 * INV_GOLDEN).fract();
    (0..n)
        .map(|i| {
            let s = i as f64 + offset;
            let frac = s / n as f64;
            let r = frac.sqrt();
            let big_r = (1.0 - frac).sqrt();
            let alpha = 2.0 * PI * s / SQRT2;
            let beta = 2.0 * PI * s / PSI;
            UnitaryParams::normalized(
                r * alpha.sin(),
                r * alpha.cos(),
                big_r * beta.sin(),
                big_r * beta.cos(),
            )
            .expect("spiral point is nonzero")
        })
        .collect()
}

fn lift_b(op: &Matrix2<ComplexScalar>) -> Matrix4<ComplexScalar> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(op);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(op);
    m
}

fn trace_out_b(m: &Matrix4<ComplexScalar>) -> Matrix2<ComplexScalar> {
    Matrix2::from_fn(|a, a2| m[(2 * a, 2 * a2)] + m[(2 * a + 1, 2 * a2 + 1)])
}

fn trace_out_a(m: &Matrix4<ComplexScalar>) -> Matrix2<ComplexScalar> {
    Matrix2::from_fn(|b, b2| m[(b, b2)] + m[(2 + b, 2 + b2)])
}

/// Eigenvalues of a 2×2 Hermitian matrix, descending.
fn hermitian2_eigenvalues(m: &Matrix2<ComplexScalar>) -> [f64; 2] {
    let mean = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
    let half_gap = 0.5 * (m[(0, 0)].re - m[(1, 1)].re);
    let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let radius = (half_gap * half_gap + off.norm_sqr()).sqrt();
    [mean + radius, mean - radius]
}

fn entropy2(m: &Matrix2<ComplexScalar>) -> f64 {
    let [hi, lo] = hermitian2_eigenvalues(m);
    von_neumann_entropy(&[hi.clamp(0.0, 1.0), lo.clamp(0.0, 1.0)]).unwrap_or(0.0)
}

/// Outcome probability and normalized conditional state of A, or `None`
/// for a zero-probability outcome.
fn measure_branch(
    rho: &Matrix4<ComplexScalar>,
    op: &Matrix2<ComplexScalar>,
) -> (f64, Option<Matrix2<ComplexScalar>>) {
    let k = lift_b(op);
    let post = k * rho * k.adjoint();
    let p = post.trace().re;
    if 2.0 * p <= DEGENERATE_TOL {
        return (p.max(0.0), None);
    }
    let rho_a = trace_out_b(&post) / ComplexScalar::new(p, 0.0);
    (p, Some(rho_a))
}

/// Conditional ensemble from explicit operator application and partial trace.
pub fn conditional_ensemble_direct(
    s: &XState,
    u: &UnitaryParams,
    x: WeakStrength,
) -> Result<ConditionalEnsemble> {
    let rho = s.to_matrix();
    let (plus_op, minus_op) = weak_operators(x, u);
    let (p_plus, plus) = measure_branch(&rho, &plus_op);
    let (p_minus, minus) = measure_branch(&rho, &minus_op);
    let plus = plus.ok_or(Error::DegenerateBranch {
        branch: Branch::Plus,
    })?;
    let minus = minus.ok_or(Error::DegenerateBranch {
        branch: Branch::Minus,
    })?;
    let [lp, lm] = hermitian2_eigenvalues(&plus);
    let [lpp, lmp] = hermitian2_eigenvalues(&minus);
    Ok(ConditionalEnsemble {
        p_plus,
        p_minus,
        lambda_plus: lp,
        lambda_minus: lm,
        lambda_plus_prime: lpp,
        lambda_minus_prime: lmp,
    })
}

/// Weighted conditional entropy of A after the weak measurement `u`.
pub fn conditional_entropy_direct(s: &XState, u: &UnitaryParams, x: WeakStrength) -> f64 {
    objective(&s.to_matrix(), u, x)
}

fn objective(rho: &Matrix4<ComplexScalar>, u: &UnitaryParams, x: WeakStrength) -> f64 {
    let (plus_op, minus_op) = weak_operators(x, u);
    [plus_op, minus_op]
        .iter()
        .map(|op| match measure_branch(rho, op) {
            (p, Some(cond)) => p * entropy2(&cond),
            (_, None) => 0.0,
        })
        .sum()
}

/// Eigenvalues of the dense density matrix by a general Hermitian solver,
/// descending.
pub fn dense_spectrum(s: &XState) -> [f64; 4] {
    let eig = nalgebra::SymmetricEigen::new(s.to_matrix());
    let mut vals = [0.0; 4];
    for (v, e) in vals.iter_mut().zip(eig.eigenvalues.iter()) {
        *v = *e;
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Bloch axis `n` of `Vσ₃V† = n·σ`, computed from the matrices.
pub fn measurement_axis(u: &UnitaryParams) -> [f64; 3] {
    let c = ComplexScalar::new;
    let v = u.matrix();
    let sigma3 = Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
    let m = v * sigma3 * v.adjoint();
    // n·σ = [[n3, n1 − i n2], [n1 + i n2, −n3]]
    [m[(1, 0)].re, m[(1, 0)].im, m[(0, 0)].re]
}

fn to_angles(u: &UnitaryParams) -> [f64; 3] {
    let psi = u.t.clamp(-1.0, 1.0).acos();
    let sin_psi = psi.sin();
    let theta = if sin_psi > 0.0 {
        (u.y1 / sin_psi).clamp(-1.0, 1.0).acos()
    } else {
        0.0
    };
    [psi, theta, u.y3.atan2(u.y2)]
}

fn from_angles(a: &[f64; 3]) -> UnitaryParams {
    let (sp, cp) = a[0].sin_cos();
    let (st, ct) = a[1].sin_cos();
    let (sf, cf) = a[2].sin_cos();
    UnitaryParams::normalized(cp, sp * ct, sp * st * cf, sp * st * sf).expect("unit vector")
}

#[derive(Clone, Copy)]
struct Point {
    unitary: UnitaryParams,
    value: f64,
}

fn better(a: &Point, b: &Point) -> bool {
    if a.value < b.value - TIE_TOL {
        return true;
    }
    if a.value > b.value + TIE_TOL {
        return false;
    }
    let ka = measurement_axis(&a.unitary);
    let kb = measurement_axis(&b.unitary);
    [ka[2], ka[1], ka[0]] > [kb[2], kb[1], kb[0]]
}

/// Brute-force super discord and the unitary attaining it.
pub fn sqd_bruteforce(s: &XState, x: WeakStrength, cfg: &OracleConfig) -> (f64, UnitaryParams) {
    let rho = s.to_matrix();
    let s_b = entropy2(&trace_out_a(&rho));
    let spectrum = dense_spectrum(s).map(|v| v.clamp(0.0, 1.0));
    let s_ab = von_neumann_entropy(&spectrum).unwrap_or(0.0);

    let grid = unitary_covering(cfg.unitary_grid, cfg.seed);
    let values: Vec<f64> = grid.par_iter().map(|u| objective(&rho, u, x)).collect();

    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let mut best = Point {
        unitary: grid[order[0]],
        value: values[order[0]],
    };

    if cfg.refine {
        let min_dot = START_SEPARATION.cos();
        let mut starts: Vec<(usize, [f64; 3])> = Vec::new();
        for &idx in &order {
            let axis = measurement_axis(&grid[idx]);
            let far = starts
                .iter()
                .all(|(_, a)| a[0] * axis[0] + a[1] * axis[1] + a[2] * axis[2] < min_dot);
            if far {
                starts.push((idx, axis));
                if starts.len() == REFINE_STARTS {
                    break;
                }
            }
        }
        let settings = DescentSettings {
            initial_step: 0.05,
            tolerance: REFINE_TOLERANCE,
            min_step: REFINE_TOLERANCE,
            max_iters: REFINE_MAX_ITERS,
        };
        let refined: Vec<Point> = starts
            .par_iter()
            .map(|&(idx, _)| {
                let f = |a: &[f64; 3]| objective(&rho, &from_angles(a), x);
                let (a, v) = coordinate_descent(f, to_angles(&grid[idx]), values[idx], &settings);
                Point {
                    unitary: from_angles(&a),
                    value: v,
                }
            })
            .collect();
        for p in refined {
            if better(&p, &best) {
                best = p;
            }
        }
    }

    (best.value + s_b - s_ab, best.unitary)
}
