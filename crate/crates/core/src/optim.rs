//! Derivative-free helpers shared by the analytic minimizer and the oracle.

use std::f64::consts::PI;

/// Golden angle π(3 − √5).
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// `n` points on the unit 2-sphere as (polar, azimuth) angle pairs.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let phi = (i as f64 * GOLDEN_ANGLE) % (2.0 * PI);
            [z.clamp(-1.0, 1.0).acos(), phi]
        })
        .collect()
}

/// Stopping rule for [`coordinate_descent`].
#[derive(Debug, Clone, Copy)]
pub struct DescentSettings {
    pub initial_step: f64,
    /// A sweep gaining less than this halves the step.
    pub tolerance: f64,
    /// Search ends once the step would fall below this.
    pub min_step: f64,
    pub max_iters: usize,
}

/// Compass search along each coordinate in turn.
///
/// Each coordinate is pushed in whichever direction improves `f`, repeating
/// the move while it keeps improving. A full sweep that gains less than
/// `tolerance` halves the step size.
pub fn coordinate_descent<const N: usize, F>(
    f: F,
    start: [f64; N],
    start_value: f64,
    settings: &DescentSettings,
) -> ([f64; N], f64)
where
    F: Fn(&[f64; N]) -> f64,
{
    let mut point = start;
    let mut value = start_value;
    let mut step = settings.initial_step;
    for _ in 0..settings.max_iters {
        let before = value;
        for k in 0..N {
            for sign in [1.0, -1.0] {
                let mut moved = false;
                loop {
                    let mut trial = point;
                    trial[k] += sign * step;
                    let v = f(&trial);
                    if v < value {
                        point = trial;
                        value = v;
                        moved = true;
                    } else {
                        break;
                    }
                }
                if moved {
                    break;
                }
            }
        }
        if before - value < settings.tolerance {
            if step <= settings.min_step {
                break;
            }
            step *= 0.5;
        }
    }
    (point, value)
}
