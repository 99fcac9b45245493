//! Exact joint outcome distributions of the two commuting observables, and
//! finite-shot multinomial sampling from them.

use crate::scheme::Scheme;
use crate::{Result, TomographyError};
use qmath::{bloch, kron, tol, BlochState, CMatrix, Complex64, MeasurementTriple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

/// One joint outcome: the assistant reading (spin z = ±1, or a photon
/// count) and the system z reading (±1), with its probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeCell {
    pub assistant: i64,
    pub system: i64,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct JointDistribution {
    pub cells: Vec<OutcomeCell>,
}

impl JointDistribution {
    /// Expectations of the three commuting observables under this map.
    pub fn triple(&self) -> MeasurementTriple {
        let mut sys = 0.0;
        let mut assist = 0.0;
        let mut corr = 0.0;
        for c in &self.cells {
            sys += c.system as f64 * c.probability;
            assist += c.assistant as f64 * c.probability;
            corr += (c.assistant * c.system) as f64 * c.probability;
        }
        MeasurementTriple { sys_avg: sys, assist_avg: assist, correlator: corr }
    }
}

/// Born-rule probabilities of the commuting pair on the evolved joint
/// state. Tiny negative values from rounding are clipped to zero and the
/// map renormalized; anything below the floor is treated as a bug.
pub fn joint_distribution(scheme: &Scheme, r: &BlochState) -> Result<JointDistribution> {
    let raw = match scheme {
        Scheme::Spin { unitary, purity, .. } => {
            let assistant = CMatrix::diag(&[
                Complex64::new((1.0 + purity.lambda()) / 2.0, 0.0),
                Complex64::new((1.0 - purity.lambda()) / 2.0, 0.0),
            ]);
            let omega0 = kron(&assistant, &bloch::density_from_bloch(r));
            let evolved = unitary.mul(&omega0).mul(&unitary.dagger());
            // Cells ordered (s, sigma) = (+1,+1), (+1,-1), (-1,+1), (-1,-1);
            // the diagonal of the evolved state in the joint z basis.
            let mut cells = Vec::with_capacity(4);
            for (a_idx, a_val) in [(0usize, 1i64), (1, -1)] {
                for (s_idx, s_val) in [(0usize, 1i64), (1, -1)] {
                    let idx = a_idx * 2 + s_idx;
                    cells.push(OutcomeCell {
                        assistant: a_val,
                        system: s_val,
                        probability: evolved[(idx, idx)].re,
                    });
                }
            }
            cells
        }
        Scheme::Jcm { config, time, .. } => {
            let u = jcm_assistant::jc_propagator(config, *time)?;
            let dim = config.fock_dim;
            let amps = jcm_assistant::coherent_state(config.alpha, dim)?;
            let mut field = CMatrix::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    field[(i, j)] = amps[i] * amps[j].conj();
                }
            }
            let initial = kron(&field, &bloch::density_from_bloch(r));
            let evolved = u.mul(&initial).mul(&u.dagger());
            // The top of the truncated ladder is unreliable; refuse before
            // renormalizing if real population reached it.
            let mut leaked = 0.0;
            for n in dim - 2..dim {
                for s_idx in 0..2 {
                    leaked += evolved[(n * 2 + s_idx, n * 2 + s_idx)].re;
                }
            }
            if leaked > 1e-8 {
                return Err(TomographyError::Jcm(jcm_assistant::JcmError::Truncation(
                    format!("population {leaked:.3e} in the top Fock levels; increase fock_dim"),
                )));
            }
            let mut cells = Vec::with_capacity(2 * dim);
            for n in 0..dim {
                for (s_idx, s_val) in [(0usize, 1i64), (1, -1)] {
                    let idx = n * 2 + s_idx;
                    cells.push(OutcomeCell {
                        assistant: n as i64,
                        system: s_val,
                        probability: evolved[(idx, idx)].re,
                    });
                }
            }
            cells
        }
    };

    let mut cells = raw;
    let mut total = 0.0;
    for c in &mut cells {
        if c.probability < -tol::PROBABILITY_FLOOR {
            return Err(TomographyError::NegativeProbability(c.probability));
        }
        c.probability = c.probability.max(0.0);
        total += c.probability;
    }
    for c in &mut cells {
        c.probability /= total;
    }
    Ok(JointDistribution { cells })
}

/// Counts per joint outcome from one finite-statistics run.
#[derive(Debug, Clone, Serialize)]
pub struct ShotRecord {
    pub n_shots: u64,
    pub seed: u64,
    pub counts: Vec<CountCell>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountCell {
    pub assistant: i64,
    pub system: i64,
    pub count: u64,
}

impl ShotRecord {
    /// Empirical averages of the three observables.
    pub fn triple(&self) -> MeasurementTriple {
        let n = self.n_shots as f64;
        let mut sys = 0.0;
        let mut assist = 0.0;
        let mut corr = 0.0;
        for c in &self.counts {
            sys += (c.system * c.count as i64) as f64;
            assist += (c.assistant * c.count as i64) as f64;
            corr += (c.assistant * c.system * c.count as i64) as f64;
        }
        MeasurementTriple {
            sys_avg: sys / n,
            assist_avg: assist / n,
            correlator: corr / n,
        }
    }

    /// Standard errors of the three empirical averages (sample variance
    /// over shot count).
    pub fn standard_errors(&self) -> [f64; 3] {
        let n = self.n_shots as f64;
        let mean = self.triple();
        let means = [mean.sys_avg, mean.assist_avg, mean.correlator];
        let mut var = [0.0; 3];
        for c in &self.counts {
            let values = [
                c.system as f64,
                c.assistant as f64,
                (c.assistant * c.system) as f64,
            ];
            for i in 0..3 {
                var[i] += (values[i] - means[i]).powi(2) * c.count as f64;
            }
        }
        [
            (var[0] / n / n).sqrt(),
            (var[1] / n / n).sqrt(),
            (var[2] / n / n).sqrt(),
        ]
    }
}

/// Multinomial draw from the joint distribution, via conditional binomials
/// in the fixed cell order. Deterministic for a fixed seed.
pub fn sample(scheme: &Scheme, r: &BlochState, n_shots: u64, seed: u64) -> Result<ShotRecord> {
    if n_shots == 0 {
        return Err(TomographyError::NoShots);
    }
    let dist = joint_distribution(scheme, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = n_shots;
    let mut mass_left = 1.0f64;
    let mut counts = Vec::with_capacity(dist.cells.len());
    for (i, cell) in dist.cells.iter().enumerate() {
        let count = if i + 1 == dist.cells.len() || remaining == 0 {
            remaining
        } else {
            let p = (cell.probability / mass_left).clamp(0.0, 1.0);
            let draw = Binomial::new(remaining, p).expect("p in [0,1]").sample(&mut rng);
            draw.min(remaining)
        };
        counts.push(CountCell {
            assistant: cell.assistant,
            system: cell.system,
            count,
        });
        remaining -= count;
        mass_left = (mass_left - cell.probability).max(f64::MIN_POSITIVE);
    }
    Ok(ShotRecord { n_shots, seed, counts })
}
