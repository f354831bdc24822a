//! Super quantum discord and quantum discord of X-states.
//!
//! The weighted conditional entropy `S_w(z) = p(+x)H(λ₊) + p(−x)H(λ′₊)` is
//! minimized over measurement directions on the unit sphere. Both outcomes
//! share one direction because `P(±x)` are built from the same projector pair.
//! The six coordinate axes are always evaluated; a Fibonacci grid plus
//! coordinate-descent refinement covers directions off the axes, where the
//! true minimum can sit for states with complex or unequal coherences.

use crate::error::{Error, Result};
use crate::optim::{coordinate_descent, fibonacci_sphere, DescentSettings};
use crate::qstate::{
    binary_entropy_of_deviation, joint_entropy, reduced_b, CorrelationParams, XState, STATE_TOL,
};
use crate::weakmeas::{branch_outcomes, MeasurementDirection, WeakStrength};

/// Values closer than this are ties for direction selection.
pub const TIE_TOL: f64 = 1e-12;

/// Number of well-separated grid minima refined besides the axes.
const GRID_STARTS: usize = 8;
/// Minimum angle between two grid starting points, in radians.
const START_SEPARATION: f64 = 0.3;
const INITIAL_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizerConfig {
    pub grid_points: usize,
    pub refine_tolerance: f64,
    pub max_refine_iters: usize,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 2048,
            refine_tolerance: 1e-10,
            max_refine_iters: 200,
        }
    }
}

impl MinimizerConfig {
    pub fn new(grid_points: usize, refine_tolerance: f64, max_refine_iters: usize) -> Result<Self> {
        if grid_points < 6 {
            return Err(Error::Domain(format!("grid_points must be >= 6, got {grid_points}")));
        }
        if refine_tolerance.is_nan() || refine_tolerance <= 0.0 {
            return Err(Error::Domain("refine_tolerance must be positive".into()));
        }
        if max_refine_iters == 0 {
            return Err(Error::Domain("max_refine_iters must be positive".into()));
        }
        Ok(Self {
            grid_points,
            refine_tolerance,
            max_refine_iters,
        })
    }
}

/// Discord value with the optimizing direction and its entropy components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SQDResult {
    pub value: f64,
    pub direction: MeasurementDirection,
    pub s_w_min: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub s_b: f64,
    pub s_ab: f64,
    pub projective: bool,
}

/// `±e3, ±e2, ±e1`: the extremum locations listed for X-states.
pub fn candidate_directions() -> Vec<MeasurementDirection> {
    [
        (0.0, 0.0, 1.0),
        (0.0, 0.0, -1.0),
        (0.0, 1.0, 0.0),
        (0.0, -1.0, 0.0),
        (1.0, 0.0, 0.0),
        (-1.0, 0.0, 0.0),
    ]
    .into_iter()
    .map(|(a, b, c)| MeasurementDirection::axis_unchecked(a, b, c))
    .collect()
}

fn weighted_entropy(cp: &CorrelationParams, z: &MeasurementDirection, tanh: f64) -> f64 {
    branch_outcomes(cp, z, tanh)
        .iter()
        .map(|b| match b.deviation {
            Some(d) => b.probability * binary_entropy_of_deviation(d),
            None => 0.0,
        })
        .sum()
}

/// `S_w` for one direction; zero-probability outcomes contribute nothing.
pub fn avg_conditional_entropy(
    cp: &CorrelationParams,
    z: &MeasurementDirection,
    x: WeakStrength,
) -> f64 {
    weighted_entropy(cp, z, x.tanh())
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    direction: MeasurementDirection,
    value: f64,
    on_axis: bool,
}

impl Candidate {
    fn tie_key(&self) -> (bool, [f64; 3]) {
        let d = self.direction;
        (self.on_axis, [d.z3(), d.z2(), d.z1()])
    }

    /// Strictly lower value wins; within [`TIE_TOL`] axis directions win,
    /// then the lexicographically largest (z3, z2, z1).
    fn beats(&self, incumbent: &Candidate) -> bool {
        if self.value < incumbent.value - TIE_TOL {
            return true;
        }
        if self.value > incumbent.value + TIE_TOL {
            return false;
        }
        let (axis_a, key_a) = self.tie_key();
        let (axis_b, key_b) = incumbent.tie_key();
        if axis_a != axis_b {
            return axis_a;
        }
        key_a
            .iter()
            .zip(key_b.iter())
            .find_map(|(a, b)| (a != b).then(|| a > b))
            .unwrap_or(false)
    }
}

fn select(candidates: impl IntoIterator<Item = Candidate>) -> Candidate {
    let mut iter = candidates.into_iter();
    let mut best = iter.next().expect("at least one candidate");
    for c in iter {
        if c.beats(&best) {
            best = c;
        }
    }
    best
}

/// Minimum of `S_w` over the six axis candidates only.
pub fn minimize_over_candidates(
    cp: &CorrelationParams,
    x: WeakStrength,
) -> (MeasurementDirection, f64) {
    let tanh = x.tanh();
    let best = select(candidate_directions().into_iter().map(|d| Candidate {
        direction: d,
        value: weighted_entropy(cp, &d, tanh),
        on_axis: true,
    }));
    (best.direction, best.value)
}

/// Picks up to `count` lowest grid points that are pairwise at least
/// [`START_SEPARATION`] apart.
fn separated_starts(points: &[[f64; 2]], values: &[f64], count: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let min_dot = START_SEPARATION.cos();
    let unit = |p: &[f64; 2]| MeasurementDirection::from_angles(p[0], p[1]).components();
    let mut chosen: Vec<usize> = Vec::with_capacity(count);
    for idx in order {
        let u = unit(&points[idx]);
        let far = chosen.iter().all(|&j| {
            let v = unit(&points[j]);
            u[0] * v[0] + u[1] * v[1] + u[2] * v[2] < min_dot
        });
        if far {
            chosen.push(idx);
            if chosen.len() == count {
                break;
            }
        }
    }
    chosen
}

/// Global minimum of `S_w` over directions: axes, grid, and refinement.
pub fn minimize_conditional_entropy(
    cp: &CorrelationParams,
    x: WeakStrength,
    cfg: &MinimizerConfig,
) -> (MeasurementDirection, f64) {
    let tanh = x.tanh();
    let objective = |p: &[f64; 2]| {
        weighted_entropy(cp, &MeasurementDirection::from_angles(p[0], p[1]), tanh)
    };

    let axes: Vec<Candidate> = candidate_directions()
        .into_iter()
        .map(|d| Candidate {
            direction: d,
            value: weighted_entropy(cp, &d, tanh),
            on_axis: true,
        })
        .collect();

    let grid = fibonacci_sphere(cfg.grid_points);
    let grid_values: Vec<f64> = grid.iter().map(&objective).collect();

    let mut starts: Vec<([f64; 2], f64)> = axes
        .iter()
        .map(|c| {
            let (theta, phi) = c.direction.angles();
            ([theta, phi], c.value)
        })
        .collect();
    starts.extend(
        separated_starts(&grid, &grid_values, GRID_STARTS)
            .into_iter()
            .map(|i| (grid[i], grid_values[i])),
    );

    let settings = DescentSettings {
        initial_step: INITIAL_STEP,
        tolerance: cfg.refine_tolerance,
        min_step: cfg.refine_tolerance,
        max_iters: cfg.max_refine_iters,
    };
    let refined = starts.into_iter().map(|(start, value)| {
        let (p, v) = coordinate_descent(objective, start, value, &settings);
        Candidate {
            direction: MeasurementDirection::from_angles(p[0], p[1]),
            value: v,
            on_axis: false,
        }
    });

    let best = select(axes.into_iter().chain(refined));
    (best.direction, best.value)
}

fn assemble(s: &XState, x: WeakStrength, direction: MeasurementDirection, s_w_min: f64) -> SQDResult {
    let [plus, minus] = branch_outcomes(&s.params(), &direction, x.tanh());
    let s_b = reduced_b(s).entropy();
    let s_ab = joint_entropy(s);
    SQDResult {
        value: s_w_min + s_b - s_ab,
        direction,
        s_w_min,
        p_plus: plus.probability,
        p_minus: minus.probability,
        s_b,
        s_ab,
        projective: x.is_projective(),
    }
}

/// `D_w = min_z S_w + S(ρ_B) − S(ρ_AB)`.
pub fn super_discord(s: &XState, x: WeakStrength, cfg: &MinimizerConfig) -> SQDResult {
    let (direction, s_w_min) = minimize_conditional_entropy(&s.params(), x, cfg);
    assemble(s, x, direction, s_w_min)
}

/// Ordinary discord: the same pipeline with `tanh x = 1`.
pub fn quantum_discord(s: &XState, cfg: &MinimizerConfig) -> SQDResult {
    super_discord(s, WeakStrength::Projective, cfg)
}

fn xlog2x(v: f64) -> f64 {
    if v > 0.0 {
        v * v.log2()
    } else {
        0.0
    }
}

/// Closed-form SQD of the Werner state ρ_W(z).
pub fn werner_sqd_closed_form(z: f64, x: WeakStrength) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("Werner parameter {z} outside [0, 1]")));
    }
    let zt = z * x.tanh();
    Ok(-xlog2x((1.0 - zt) / 2.0) - xlog2x((1.0 + zt) / 2.0)
        + 1.0
        + 3.0 * xlog2x((1.0 - z) / 4.0)
        + xlog2x((1.0 + 3.0 * z) / 4.0))
}

/// Closed-form SQD of the Bell-diagonal state with correlations (c1, c2, c3).
///
/// Uses `c = max |cᵢ|`.
pub fn bell_diagonal_sqd_closed_form(c1: f64, c2: f64, c3: f64, x: WeakStrength) -> Result<f64> {
    if ![c1, c2, c3].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("Bell-diagonal correlations"));
    }
    let spectrum = [
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ];
    if let Some(bad) = spectrum.iter().find(|&&l| l < -STATE_TOL) {
        return Err(Error::NotPositive(format!(
            "Bell-diagonal eigenvalue {bad:e} is negative"
        )));
    }
    let c = c1.abs().max(c2.abs()).max(c3.abs());
    let ct = c * x.tanh();
    Ok(-xlog2x((1.0 - ct) / 2.0) - xlog2x((1.0 + ct) / 2.0)
        + 1.0
        + spectrum.iter().map(|&l| xlog2x(l)).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{bell_diagonal_state, mutual_information, werner_state, ComplexScalar};

    fn uniform_diag_state() -> XState {
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

    #[test]
    fn candidates_are_the_six_axes() {
        let c = candidate_directions();
        assert_eq!(c.len(), 6);
        assert!(c.iter().any(|d| d.components() == [0.0, 0.0, 1.0]));
        assert!(c.iter().any(|d| d.components() == [1.0, 0.0, 0.0]));
        for d in &c {
            let n: f64 = d.components().iter().map(|v| v * v).sum();
            assert_eq!(n, 1.0);
        }
    }

    #[test]
    fn config_validation() {
        assert!(MinimizerConfig::new(5, 1e-10, 10).is_err());
        assert!(MinimizerConfig::new(6, 0.0, 10).is_err());
        assert!(MinimizerConfig::new(6, 1e-10, 0).is_err());
        assert!(MinimizerConfig::new(6, 1e-10, 1).is_ok());
    }

    #[test]
    fn conditional_entropy_examples() {
        let s = XState::new(
            0.4,
            0.1,
            0.2,
            0.3,
            ComplexScalar::new(0.1, -0.2),
            ComplexScalar::new(0.05, 0.1),
        )
        .unwrap();
        let cp = s.params();
        let d = MeasurementDirection::from_angles(0.4, 2.0);
        let h = avg_conditional_entropy(&cp, &d, WeakStrength::Finite(0.0));
        assert!((h - binary_entropy_of_deviation(cp.a3)).abs() < 1e-15);

        // mpmath: H(0.5 + 0.1875 tanh 1)
        let d = MeasurementDirection::new(1.0, 0.0, 0.0).unwrap();
        let h = avg_conditional_entropy(&uniform_diag_state().params(), &d, WeakStrength::Finite(1.0));
        assert!((h - 0.940_335_334_180_229_1).abs() < 1e-14);

        let cp = werner_state(0.5).unwrap().params();
        let d = MeasurementDirection::from_angles(1.2, 0.7);
        let h = avg_conditional_entropy(&cp, &d, WeakStrength::Projective);
        assert!((h - 0.811_278_124_459_132_9).abs() < 1e-14);
    }

    #[test]
    fn uniform_diag_minimum_is_first_axis() {
        let (d, v) = minimize_conditional_entropy(
            &uniform_diag_state().params(),
            WeakStrength::Finite(1.0),
            &MinimizerConfig::default(),
        );
        assert_eq!(d.components(), [1.0, 0.0, 0.0]);
        assert!((v - 0.940_335_334_180_229_1).abs() < 1e-14);
    }

    #[test]
    fn flat_objectives_return_canonical_direction() {
        let cfg = MinimizerConfig::default();
        for x in [WeakStrength::Finite(0.7), WeakStrength::Projective] {
            let (d, v) = minimize_conditional_entropy(&werner_state(0.3).unwrap().params(), x, &cfg);
            assert_eq!(d.components(), [0.0, 0.0, 1.0]);
            let want = crate::qstate::binary_entropy(0.5 * (1.0 + 0.3 * x.tanh()));
            assert!((v - want).abs() < 1e-14);

            let (d, v) = minimize_conditional_entropy(&XState::maximally_mixed().params(), x, &cfg);
            assert_eq!(d.components(), [0.0, 0.0, 1.0]);
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn discord_examples() {
        let cfg = MinimizerConfig::default();
        let r = super_discord(&XState::maximally_mixed(), WeakStrength::Finite(1.3), &cfg);
        assert_eq!(r.value, 0.0);

        let r = super_discord(&uniform_diag_state(), WeakStrength::Finite(0.0), &cfg);
        assert!((r.value - 0.117_143_936_307_951).abs() < 1e-13);
        assert!((r.value - mutual_information(&uniform_diag_state())).abs() < 1e-14);
        assert!(!r.projective);

        let r = quantum_discord(&werner_state(1.0).unwrap(), &cfg);
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.projective);
        assert!((r.value - (r.s_w_min + r.s_b - r.s_ab)).abs() < 1e-15);
    }

    #[test]
    fn product_state_has_no_discord() {
        let (p, q) = (0.3, 0.8);
        let s = XState::new(
            p * q,
            p * (1.0 - q),
            (1.0 - p) * q,
            (1.0 - p) * (1.0 - q),
            ComplexScalar::new(0.0, 0.0),
            ComplexScalar::new(0.0, 0.0),
        )
        .unwrap();
        let cfg = MinimizerConfig::default();
        assert!(quantum_discord(&s, &cfg).value.abs() < 1e-10);
        assert!(super_discord(&s, WeakStrength::Finite(0.8), &cfg).value.abs() < 1e-10);
    }

    #[test]
    fn closed_form_examples() {
        for x in [WeakStrength::Finite(0.0), WeakStrength::Finite(2.0), WeakStrength::Projective] {
            assert!(werner_sqd_closed_form(0.0, x).unwrap().abs() < 1e-15);
            assert!(bell_diagonal_sqd_closed_form(0.0, 0.0, 0.0, x).unwrap().abs() < 1e-15);
        }
        assert!((werner_sqd_closed_form(1.0, WeakStrength::Projective).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            (bell_diagonal_sqd_closed_form(1.0, -1.0, 1.0, WeakStrength::Projective).unwrap() - 1.0)
                .abs()
                < 1e-15
        );
        assert!(werner_sqd_closed_form(1.2, WeakStrength::Projective).is_err());
        assert!(matches!(
            bell_diagonal_sqd_closed_form(1.0, 1.0, 1.0, WeakStrength::Projective),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn closed_forms_match_pipeline() {
        let cfg = MinimizerConfig::default();
        let x = WeakStrength::Finite(1.0);
        let r = super_discord(&werner_state(0.5).unwrap(), x, &cfg);
        assert!((r.value - werner_sqd_closed_form(0.5, x).unwrap()).abs() < 1e-9);

        let x = WeakStrength::Finite(0.7);
        let (c1, c2, c3) = (-0.45, 0.2, 0.3);
        let r = super_discord(&bell_diagonal_state(c1, c2, c3).unwrap(), x, &cfg);
        let want = bell_diagonal_sqd_closed_form(c1, c2, c3, x).unwrap();
        assert!((r.value - want).abs() < 1e-9);
    }

    #[test]
    fn complex_coherences_can_move_minimum_off_axis() {
        // c1 and c2 with different phases couple z1 and z2, so the best
        // in-plane direction is not a coordinate axis.
        let s = XState::new(
            0.25,
            0.25,
            0.25,
            0.25,
            ComplexScalar::from_polar(0.2, 0.0),
            ComplexScalar::from_polar(0.15, 1.0),
        )
        .unwrap();
        let cp = s.params();
        let x = WeakStrength::Finite(1.0);
        let (_, axis) = minimize_over_candidates(&cp, x);
        let (d, full) = minimize_conditional_entropy(&cp, x, &MinimizerConfig::default());
        assert!(full < axis - 1e-6, "axis {axis}, full {full}");
        assert!(d.z1().abs() > 1e-3 && d.z2().abs() > 1e-3);
    }
}
