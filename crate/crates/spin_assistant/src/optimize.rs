//! Determinant maximization over the scheme parameters: a coarse grid over
//! two vector families followed by multi-start Nelder-Mead refinement in the
//! full seven-dimensional parameter space.

use crate::determinant::determinant_closed_form;
use crate::params::{AssistantPurity, SpinSchemeParams};
use crate::{Result, SpinError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

const MIN_BUDGET: usize = 1000;
const RESTARTS: usize = 16;
const GRID_PER_AXIS: usize = 12;
const ANGLE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct OptimizeOutcome {
    pub params: SpinSchemeParams,
    /// Signed determinant at the returned parameters.
    pub det: f64,
    pub evaluations: usize,
}

/// Search point: (theta, phi, psi, eta polar, eta azimuth, zeta polar, zeta
/// azimuth).
type Point = [f64; 7];

fn unit_from_angles(polar: f64, azim: f64) -> [f64; 3] {
    [
        polar.sin() * azim.cos(),
        polar.sin() * azim.sin(),
        polar.cos(),
    ]
}

fn clamp_point(x: &Point) -> Point {
    let mut y = *x;
    y[0] = y[0].clamp(ANGLE_MARGIN, FRAC_PI_2 - 2.0 * ANGLE_MARGIN);
    y[1] = y[1].clamp(ANGLE_MARGIN, FRAC_PI_2 - y[0] - ANGLE_MARGIN);
    y[2] = y[2].clamp(0.0, PI);
    y
}

fn params_at(x: &Point) -> SpinSchemeParams {
    let y = clamp_point(x);
    SpinSchemeParams::in_standard_frame(
        y[0],
        y[1],
        y[2],
        unit_from_angles(y[3], y[4]),
        unit_from_angles(y[5], y[6]),
    )
    .expect("clamped point is in the valid domain")
}

struct Objective {
    lam: AssistantPurity,
    evaluations: usize,
}

impl Objective {
    /// Negated |determinant|, so refinement minimizes.
    fn eval(&mut self, x: &Point) -> f64 {
        self.evaluations += 1;
        let p = params_at(x);
        -determinant_closed_form(&p, self.lam)
            .expect("valid params")
            .abs()
    }
}

/// Maximize |determinant| over (theta, phi, psi, eta, zeta) at fixed
/// assistant purity.
///
/// Deterministic for a fixed seed: the coarse scan is enumerated in a fixed
/// order, ties go to the earlier point, and each of the Nelder-Mead restarts
/// derives its jitter stream from `seed` plus the restart index. `budget`
/// caps the total number of closed-form evaluations.
pub fn optimize_determinant(
    lam: AssistantPurity,
    budget: usize,
    seed: u64,
) -> Result<OptimizeOutcome> {
    if budget < MIN_BUDGET {
        return Err(SpinError::BudgetTooSmall { budget, minimum: MIN_BUDGET });
    }
    let mut obj = Objective { lam, evaluations: 0 };

    // Coarse scan: theta, phi fraction, psi, and one family angle for the
    // carried axes, over both the parallel and perpendicular axis families.
    let grid_budget = budget / 2;
    let mut per_axis = GRID_PER_AXIS;
    while per_axis > 2 && 2 * per_axis.pow(4) > grid_budget {
        per_axis -= 1;
    }
    let steps: Vec<f64> = (0..per_axis)
        .map(|i| (i as f64 + 0.5) / per_axis as f64)
        .collect();

    let mut candidates: Vec<(f64, Point)> = Vec::new();
    for family in 0..2 {
        for &ft in &steps {
            let theta = ft * (FRAC_PI_2 - 2.0 * ANGLE_MARGIN) + ANGLE_MARGIN;
            for &ff in &steps {
                let phi = ff * (FRAC_PI_2 - theta - 2.0 * ANGLE_MARGIN) + ANGLE_MARGIN;
                for &fp in &steps {
                    let psi = fp * PI;
                    for &fb in &steps {
                        let b = fb * PI;
                        let (ep, ea, zp, za) = if family == 0 {
                            (b, 0.0, b, 0.0)
                        } else {
                            (b, 0.0, b + FRAC_PI_2, 0.0)
                        };
                        let x: Point = [theta, phi, psi, ep, ea, zp, za];
                        let f = obj.eval(&x);
                        candidates.push((f, x));
                    }
                }
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    candidates.truncate(RESTARTS);

    let mut best = candidates[0];
    let remaining = budget.saturating_sub(obj.evaluations);
    let per_restart = remaining / RESTARTS.min(candidates.len()).max(1);
    for (idx, &(_, start)) in candidates.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
        let (f, x) = nelder_mead(&mut obj, start, per_restart, &mut rng);
        if f < best.0 {
            best = (f, x);
        }
    }

    let params = params_at(&best.1);
    let det = determinant_closed_form(&params, lam)?;
    Ok(OptimizeOutcome { params, det, evaluations: obj.evaluations })
}

/// Standard Nelder-Mead with reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2, on the clamped parameter domain.
fn nelder_mead(
    obj: &mut Objective,
    start: Point,
    max_evals: usize,
    rng: &mut ChaCha8Rng,
) -> (f64, Point) {
    const DIM: usize = 7;
    let mut used = 0;
    let mut eval = |x: &Point, used: &mut usize| -> f64 {
        *used += 1;
        obj.eval(x)
    };

    let mut simplex: Vec<(f64, Point)> = Vec::with_capacity(DIM + 1);
    let f0 = eval(&start, &mut used);
    simplex.push((f0, start));
    for i in 0..DIM {
        let mut p = start;
        let scale = if i < 3 { 0.08 } else { 0.3 };
        p[i] += scale * (1.0 + 0.2 * rng.gen_range(-1.0..1.0));
        let f = eval(&p, &mut used);
        simplex.push((f, p));
    }

    while used + 4 < max_evals {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let spread = simplex[DIM].0 - simplex[0].0;
        if spread.abs() < 1e-12 {
            break;
        }
        let mut centroid = [0.0; 7];
        for (_, p) in simplex.iter().take(DIM) {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / DIM as f64;
            }
        }
        let worst = simplex[DIM];
        let shifted = |t: f64| -> Point {
            let mut p = [0.0; 7];
            for i in 0..DIM {
                p[i] = centroid[i] + t * (centroid[i] - worst.1[i]);
            }
            p
        };

        let reflected = shifted(1.0);
        let fr = eval(&reflected, &mut used);
        if fr < simplex[0].0 {
            let expanded = shifted(2.0);
            let fe = eval(&expanded, &mut used);
            simplex[DIM] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
        } else if fr < simplex[DIM - 1].0 {
            simplex[DIM] = (fr, reflected);
        } else {
            let contracted = shifted(-0.5);
            let fc = eval(&contracted, &mut used);
            if fc < worst.0 {
                simplex[DIM] = (fc, contracted);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].1;
                for entry in simplex.iter_mut().skip(1) {
                    for i in 0..DIM {
                        entry.1[i] = best[i] + 0.5 * (entry.1[i] - best[i]);
                    }
                    let moved = entry.1;
                    entry.0 = eval(&moved, &mut used);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    simplex[0]
}
