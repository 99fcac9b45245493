//! The closed-form series against brute-force matrix-exponential evolution,
//! plus the propagator and determinant identities.

use jcm_assistant::*;
use qmath::{unitary_exp, BlochState, CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bloch(rng: &mut ChaCha8Rng) -> BlochState {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        if v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0 {
            return BlochState::new(v).unwrap();
        }
    }
}

fn random_config(rng: &mut ChaCha8Rng) -> (JcmConfig, f64) {
    let g = rng.gen_range(2e4..8e4);
    let detuning = rng.gen_range(-1.5e5..1.5e5);
    let n_bar: f64 = rng.gen_range(0.0..3.0);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let alpha = Complex64::from_polar(n_bar.sqrt(), phase);
    let fock_dim = default_fock_dim(n_bar).min(45);
    let t = rng.gen_range(0.0..4e-5);
    (JcmConfig::new(detuning, g, alpha, fock_dim).unwrap(), t)
}

#[test]
fn series_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    for trial in 0..20 {
        let (cfg, t) = random_config(&mut rng);
        let r = random_bloch(&mut rng);
        let series = expectation_series(&cfg, &r, t).unwrap();
        let brute = oracle_evolve(&cfg, &r, t).unwrap();
        assert!(
            (series.sys_avg - brute.sys_avg).abs() < 1e-8,
            "trial {trial}: atom {} vs {}",
            series.sys_avg,
            brute.sys_avg
        );
        assert!(
            (series.assist_avg - brute.assist_avg).abs() < 1e-8,
            "trial {trial}: photons {} vs {}",
            series.assist_avg,
            brute.assist_avg
        );
        assert!(
            (series.correlator - brute.correlator).abs() < 1e-8,
            "trial {trial}: correlator {} vs {}",
            series.correlator,
            brute.correlator
        );
        // Physical ranges: |<sigma_z>| <= 1 and the correlator is bounded
        // by the photon number.
        assert!(series.sys_avg.abs() <= 1.0 + 1e-10);
        assert!(series.correlator.abs() <= series.assist_avg + 1e-10);
    }
}

#[test]
fn fixed_point_against_oracle() {
    // g = 50 kHz, detuning 100 kHz (angular), two mean photons, 20 us.
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let r = BlochState::new([1.0, 0.0, 0.0]).unwrap();
    let t = 2e-5;
    let series = expectation_series(&cfg, &r, t).unwrap();
    let brute = oracle_evolve(&cfg, &r, t).unwrap();
    assert!((series.sys_avg - brute.sys_avg).abs() < 1e-8);
    assert!((series.assist_avg - brute.assist_avg).abs() < 1e-8);
    assert!((series.correlator - brute.correlator).abs() < 1e-8);
}

#[test]
fn propagator_matches_the_exponential_in_the_interior() {
    let cfg = JcmConfig::new(7e4, 5e4, Complex64::new(1.3, 0.2), 30).unwrap();
    let t = 1.9e-5;
    let closed = jc_propagator(&cfg, t).unwrap();
    // Reconstructed generator on the same truncated space, cavity frequency
    // zero: detuning/2 on the atom plus the exchange coupling.
    let fock = qmath::FockSpace::new(cfg.fock_dim);
    let raising = CMatrix::from_rows(&[
        &[qmath::ZERO, qmath::ONE],
        &[qmath::ZERO, qmath::ZERO],
    ]);
    let mut h = qmath::kron(
        &CMatrix::identity(cfg.fock_dim),
        &qmath::cmatrix::sigma_z(),
    )
    .scale(Complex64::new(cfg.detuning / 2.0, 0.0));
    let exchange = qmath::kron(&fock.annihilator, &raising)
        .add(&qmath::kron(&fock.creator, &raising.dagger()));
    h = h.add(&exchange.scale(Complex64::new(cfg.coupling, 0.0)));
    let brute = unitary_exp(&h, t).unwrap();
    // Compare on the subspace that excludes the two highest Fock levels.
    let keep = 2 * (cfg.fock_dim - 2);
    let mut worst = 0.0f64;
    for i in 0..keep {
        for j in 0..keep {
            worst = worst.max((closed[(i, j)] - brute[(i, j)]).norm());
        }
    }
    assert!(worst < 1e-8, "interior mismatch {worst}");
}

#[test]
fn measurement_matrix_agrees_with_series_probes() {
    let mut rng = ChaCha8Rng::seed_from_u64(223);
    for _ in 0..100 {
        let (cfg, t) = random_config(&mut rng);
        let sys = measurement_matrix(&cfg, t).unwrap();
        let zero = expectation_series(&cfg, &BlochState::new([0.0; 3]).unwrap(), t).unwrap();
        let origin = triple_as_vector(&zero);
        for i in 0..3 {
            assert!((origin[i] - sys.offset[i]).abs() < 1e-9);
        }
        for (j, probe) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
            .into_iter()
            .enumerate()
        {
            let m = expectation_series(&cfg, &BlochState::new(probe).unwrap(), t).unwrap();
            let v = triple_as_vector(&m);
            for i in 0..3 {
                assert!(
                    (v[i] - origin[i] - sys.coeffs[i][j]).abs() < 1e-9,
                    "coefficient ({i}, {j})"
                );
            }
        }
    }
}

#[test]
fn determinant_series_equals_assembled_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(227);
    for _ in 0..100 {
        let (cfg, t) = random_config(&mut rng);
        let series = determinant_series(&cfg, t).unwrap();
        let assembled = measurement_matrix(&cfg, t).unwrap().det;
        let scale = assembled.abs().max(1e-15);
        assert!(
            (series - assembled).abs() / scale < 1e-8,
            "series {series} vs assembled {assembled}"
        );
    }
}

#[test]
fn round_trip_recovers_planted_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(229);
    let mut done = 0;
    while done < 30 {
        let (cfg, t) = random_config(&mut rng);
        let sys = measurement_matrix(&cfg, t).unwrap();
        // Keep only well-conditioned draws.
        if sys.det.abs() < 1e-6 * sys.row_norm_scale() {
            continue;
        }
        let r = random_bloch(&mut rng);
        let m = expectation_series(&cfg, &r, t).unwrap();
        let rec = reconstruct(&m, &cfg, t).unwrap();
        for i in 0..3 {
            assert!((rec.r[i] - r.components()[i]).abs() < 1e-7);
        }
        done += 1;
    }
}

#[test]
fn outputs_are_invariant_under_common_frequency_shifts() {
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let r = BlochState::new([0.4, -0.2, 0.3]).unwrap();
    let t = 1.7e-5;
    let base = oracle_evolve_with_cavity_freq(&cfg, &r, t, 0.0).unwrap();
    for &nu in &[3e4, -8e4, 2.2e5] {
        let shifted = oracle_evolve_with_cavity_freq(&cfg, &r, t, nu).unwrap();
        assert!((base.sys_avg - shifted.sys_avg).abs() < 1e-10);
        assert!((base.assist_avg - shifted.assist_avg).abs() < 1e-10);
        assert!((base.correlator - shifted.correlator).abs() < 1e-10);
    }
}

#[test]
fn zero_state_maps_to_zero_under_inversion() {
    let cfg = JcmConfig::new(1e5, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let t = 5e-5;
    let m = expectation_series(&cfg, &BlochState::new([0.0; 3]).unwrap(), t).unwrap();
    let rec = reconstruct(&m, &cfg, t).unwrap();
    for c in rec.r {
        assert!(c.abs() < 1e-10);
    }
}

#[test]
fn growing_jitter_monotonically_suppresses_peaks() {
    let cfg = JcmConfig::new(1e4, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 32).unwrap();
    let grid: Vec<f64> = (1..=120).map(|i| i as f64 * 1e-6).collect();
    let peak_at = |sigma: f64| {
        grid.iter()
            .map(|&t0| averaged_determinant(&cfg, t0, sigma).unwrap().abs())
            .fold(0.0f64, f64::max)
    };
    let peaks: Vec<f64> = [0.0, 1e-10, 1e-9, 1e-8, 1e-7]
        .iter()
        .map(|&s| peak_at(s))
        .collect();
    for pair in peaks.windows(2) {
        assert!(pair[1] < pair[0], "peaks not decreasing: {peaks:?}");
    }
}

#[test]
fn averaged_determinant_matches_quadrature() {
    let cfg = JcmConfig::new(1e4, 5e4, Complex64::new(2.0f64.sqrt(), 0.0), 40).unwrap();
    let sigma = 5e-11; // variance in s^2
    for &t0 in &[1.0e-5, 3.1e-5] {
        let closed = averaged_determinant(&cfg, t0, sigma).unwrap();
        // Simpson quadrature of the normalized Gaussian against D(t).
        let halfwidth = 8.0 * sigma.sqrt();
        let steps = 4000usize; // even
        let h = 2.0 * halfwidth / steps as f64;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * sigma).sqrt();
        let mut acc = 0.0;
        for k in 0..=steps {
            let t = t0 - halfwidth + k as f64 * h;
            let weight = if k == 0 || k == steps {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let gauss = norm * (-(t - t0) * (t - t0) / (2.0 * sigma)).exp();
            acc += weight * gauss * determinant_series(&cfg, t).unwrap();
        }
        let quad = acc * h / 3.0;
        assert!(
            (closed - quad).abs() / quad.abs().max(1e-12) < 1e-6,
            "t0 = {t0}: closed {closed} vs quadrature {quad}"
        );
    }
}
