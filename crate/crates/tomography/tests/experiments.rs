//! End-to-end experiment properties: distribution marginals, shot-noise
//! statistics, and round trips through both schemes.

use jcm_assistant::JcmConfig;
use num_complex::Complex64;
use qmath::BlochState;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin_assistant::{AssistantPurity, SpinSchemeParams};
use tomography::*;

fn disordered_scheme() -> Scheme {
    Scheme::spin(
        SpinSchemeParams::disordered_optimal(),
        AssistantPurity::disordered(),
    )
    .unwrap()
}

#[test]
fn jcm_start_distribution_is_poissonian_with_definite_atom() {
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let scheme = Scheme::jcm(cfg, 0.0);
    let r = BlochState::new([0.0, 0.0, 1.0]).unwrap();
    let dist = joint_distribution(&scheme, &r).unwrap();
    let mut poisson = (-2.0f64).exp();
    for n in 0..10 {
        let up: f64 = dist
            .cells
            .iter()
            .filter(|c| c.assistant == n && c.system == 1)
            .map(|c| c.probability)
            .sum();
        let down: f64 = dist
            .cells
            .iter()
            .filter(|c| c.assistant == n && c.system == -1)
            .map(|c| c.probability)
            .sum();
        assert!((up - poisson).abs() < 1e-12, "n = {n}");
        assert!(down.abs() < 1e-14);
        poisson *= 2.0 / (n as f64 + 1.0);
    }
}

#[test]
fn empirical_averages_approach_analytic_values() {
    let scheme = disordered_scheme();
    let r = BlochState::new([0.2, 0.1, 0.5]).unwrap();
    let analytic = scheme.analytic_triple(&r).unwrap();
    let record = sample(&scheme, &r, 1_000_000, 11).unwrap();
    let empirical = record.triple();
    let se = record.standard_errors();
    assert!((empirical.sys_avg - analytic.sys_avg).abs() < 5.0 * se[0]);
    assert!((empirical.assist_avg - analytic.assist_avg).abs() < 5.0 * se[1]);
    assert!((empirical.correlator - analytic.correlator).abs() < 5.0 * se[2]);
}

#[test]
fn median_error_shrinks_with_shots() {
    let scheme = disordered_scheme();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budgets = [1_000u64, 10_000, 100_000];
    let mut medians = Vec::new();
    for (b_idx, &budget) in budgets.iter().enumerate() {
        let mut errors: Vec<f64> = Vec::new();
        for s in 0..41u64 {
            let r = loop {
                let v: [f64; 3] = [
                    rng.gen_range(-0.6..0.6),
                    rng.gen_range(-0.6..0.6),
                    rng.gen_range(-0.6..0.6),
                ];
                if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
                    break BlochState::new(v).unwrap();
                }
            };
            let report = roundtrip(
                &scheme,
                &r,
                Shots::Count(budget),
                1000 * (b_idx as u64 + 1) + s,
            )
            .unwrap();
            let err = report
                .abs_error
                .iter()
                .fold(0.0f64, |acc, e| acc.max(*e));
            errors.push(err);
        }
        errors.sort_by(f64::total_cmp);
        medians.push(errors[errors.len() / 2]);
    }
    assert!(medians[0] > medians[1] && medians[1] > medians[2], "{medians:?}");
}

#[test]
fn jcm_roundtrip_at_a_well_conditioned_time() {
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    // Locate the first strong determinant peak.
    let grid: Vec<f64> = (1..200).map(|i| i as f64 * 2.5e-7).collect();
    let rows = sweep(&Scheme::jcm(cfg, 0.0), "t", &grid).unwrap();
    let best = rows
        .iter()
        .max_by(|a, b| a.determinant.abs().total_cmp(&b.determinant.abs()))
        .unwrap();
    let scheme = Scheme::jcm(cfg, best.parameter);
    let r = BlochState::new([0.3, -0.4, 0.2]).unwrap();
    let report = roundtrip(&scheme, &r, Shots::Exact, 0).unwrap();
    assert!(report.abs_error.iter().all(|e| *e < 1e-6), "{report:?}");
}

#[test]
fn jcm_shot_mode_errors_are_statistically_consistent() {
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let scheme = Scheme::jcm(cfg, 5e-5);
    let r = BlochState::new([0.3, -0.4, 0.2]).unwrap();
    let report = roundtrip(&scheme, &r, Shots::Count(1_000_000), 23).unwrap();
    let se = report.recovered_std_errors.unwrap();
    for i in 0..3 {
        assert!(
            report.abs_error[i] <= 5.0 * se[i],
            "component {i}: error {} vs 5 se {}",
            report.abs_error[i],
            5.0 * se[i]
        );
    }
}

#[test]
fn resonant_cavity_roundtrip_is_singular() {
    let cfg = JcmConfig::new(0.0, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let scheme = Scheme::jcm(cfg, 1.5e-5);
    let r = BlochState::new([0.3, 0.0, 0.1]).unwrap();
    assert!(matches!(
        roundtrip(&scheme, &r, Shots::Exact, 0),
        Err(TomographyError::Jcm(jcm_assistant::JcmError::SingularScheme { .. }))
    ));
}

#[test]
fn stronger_detuning_gives_larger_peaks() {
    let grid: Vec<f64> = (1..=400).map(|i| i as f64 * 2.5e-7).collect();
    let mut peaks = Vec::new();
    for detuning in [1e4, 1e5] {
        let cfg = JcmConfig::new(detuning, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
        let rows = sweep(&Scheme::jcm(cfg, 0.0), "t", &grid).unwrap();
        peaks.push(
            rows.iter()
                .map(|row| row.determinant.abs())
                .fold(0.0f64, f64::max),
        );
    }
    assert!(peaks[1] >= 5.0 * peaks[0], "peaks {peaks:?}");
}

#[test]
fn exact_roundtrip_through_pure_hamiltonian_scheme() {
    let u = qmath::unitary_exp(&spin_assistant::pure_hamiltonian(), 1.0).unwrap();
    let scheme = Scheme::spin_from_unitary(u, AssistantPurity::pure());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let r = loop {
            let v: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
                break BlochState::new(v).unwrap();
            }
        };
        let report = roundtrip(&scheme, &r, Shots::Exact, 0).unwrap();
        assert!(report.abs_error.iter().all(|e| *e < 1e-8));
    }
}
