//! End-to-end checks of the accelerated-observer simulation on the
//! reference configuration. The transfer table is built once per binary.

use std::sync::OnceLock;
use zpf_core::kinematics::AcceleratedFrame;
use zpf_core::zpf_unruh::field::inertial_correlation;
use zpf_core::zpf_unruh::modes::amplitude_at;
use zpf_core::zpf_unruh::theory::zeropoint_convolved;
use zpf_core::zpf_unruh::*;
use zpf_core::{Complex64, PhysicalConstants};

const N: PhysicalConstants = PhysicalConstants::NATURAL;

struct Reference {
    frame: AcceleratedFrame,
    modes: ModeSet,
    table: TransferTable,
    estimate: SpectrumEstimate,
}

fn reference() -> &'static Reference {
    static CELL: OnceLock<Reference> = OnceLock::new();
    CELL.get_or_init(|| {
        let config = SimulationConfig::default();
        let frame = config.frame(N).unwrap();
        let window = config.window().unwrap();
        let modes = config.modeset(&N).unwrap();
        let table =
            TransferTable::new(&modes, &frame, &window, &config.omegas_out(), &PeriodogramOptions::default()).unwrap();
        let estimate = estimate_from_table(&table, &modes, &frame, &window, None).unwrap();
        Reference {
            frame,
            modes,
            table,
            estimate,
        }
    })
}

#[test]
fn reference_band_and_modes() {
    let r = reference();
    assert_eq!(r.estimate.len(), 26);
    assert_eq!(r.estimate.omegas_out[0], 0.5);
    assert!((r.estimate.omegas_out[25] - 3.0).abs() < 1e-12);
    assert!((r.modes.omegas()[0] - 0.025).abs() < 1e-15);
    assert!(*r.modes.omegas().last().unwrap() <= 3.0 * 12f64.exp());
    assert!(r.estimate.expected.iter().all(|&e| e > 0.0));
}

#[test]
fn expected_matches_convolved_theory() {
    let r = reference();
    assert!(r.estimate.max_theory_deviation() <= 0.03, "{}", r.estimate.max_theory_deviation());
}

#[test]
fn thermal_curve_is_distinguishable_from_vacuum_curve() {
    let r = reference();
    let zp = zeropoint_convolved(&r.frame, &r.estimate.window, &r.estimate.omegas_out).unwrap();
    let gap = (r.estimate.expected[0] / zp[0] - 1.0).abs();
    assert!(gap > 5.0 * 0.03, "gap {gap}");
}

#[test]
fn fitted_temperature_is_unruh_temperature() {
    let r = reference();
    let fit = fit_unruh_temperature(&r.estimate, &r.frame).unwrap();
    let target = 1.0 / (2.0 * std::f64::consts::PI);
    assert!((fit.temperature / target - 1.0).abs() <= 0.15, "{fit:?}");
}

#[test]
fn monte_carlo_agrees_with_expectation() {
    let r = reference();
    let mc = monte_carlo(&r.table, &r.modes, 100, 7, false).unwrap();
    let inside = mc
        .mean
        .iter()
        .zip(&mc.stderr)
        .zip(&r.estimate.expected)
        .filter(|((m, s), e)| (*m - *e).abs() <= 4.0 * *s)
        .count();
    assert!(inside as f64 >= 0.95 * mc.mean.len() as f64, "{inside}/{}", mc.mean.len());
}

#[test]
fn monte_carlo_error_shrinks_like_root_n() {
    let r = reference();
    let few = monte_carlo(&r.table, &r.modes, 2, 3, false).unwrap();
    let many = monte_carlo(&r.table, &r.modes, 100, 3, false).unwrap();
    let mut ratios: Vec<f64> = few.stderr.iter().zip(&many.stderr).map(|(a, b)| a / b).collect();
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = ratios[ratios.len() / 2];
    // √50 ≈ 7.1; a two-sample spread is itself very noisy
    assert!((3.0..=15.0).contains(&median), "median ratio {median}");
}

#[test]
fn monte_carlo_is_reproducible_and_order_independent() {
    let r = reference();
    let a = monte_carlo(&r.table, &r.modes, 40, 11, false).unwrap();
    let b = monte_carlo(&r.table, &r.modes, 40, 11, false).unwrap();
    assert_eq!(a, b);
    let c = monte_carlo(&r.table, &r.modes, 40, 11, true).unwrap();
    assert_eq!(a, c);
    // the ensemble mean is the mean of independently computed draws
    let mut manual = vec![0.0; a.mean.len()];
    for i in (0..40u64).rev() {
        let amps: Vec<Complex64> = (0..r.modes.len()).map(|n| amplitude_at(11, i, n)).collect();
        for (m, v) in manual.iter_mut().zip(r.table.periodogram(r.modes.weights(), &amps)) {
            *m += v / 40.0;
        }
    }
    for (m, x) in manual.iter().zip(&a.mean) {
        assert!((m / x - 1.0).abs() < 1e-12);
    }
}

fn ensemble(n: usize, seed: u64, f: impl Fn(&ModeSet) -> f64) -> (f64, f64) {
    let r = reference();
    let v: Vec<f64> = (0..n as u64).map(|i| f(&r.modes.realization(seed, i))).collect();
    let mean = v.iter().sum::<f64>() / n as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

#[test]
fn field_variance_is_mode_sum() {
    let r = reference();
    let target = r.modes.variance();
    let (m, s) = ensemble(4000, 21, |m| eval_field_accelerated(m, &r.frame, 2.0).powi(2));
    assert!((m - target).abs() <= 4.0 * s, "{m} vs {target} ± {s}");
    let (m, s) = ensemble(4000, 22, |m| eval_field_inertial(m, 0.7).powi(2));
    assert!((m - target).abs() <= 4.0 * s);
}

#[test]
fn inertial_correlation_is_stationary() {
    let r = reference();
    let lag = 0.8;
    let exact = inertial_correlation(&r.modes, lag);
    for (t, seed) in [(0.0, 31), (5.0, 32)] {
        let (m, s) = ensemble(3000, seed, |m| eval_field_inertial(m, t) * eval_field_inertial(m, t + lag));
        assert!((m - exact).abs() <= 4.0 * s, "t={t}: {m} vs {exact} ± {s}");
    }
}

/// Periodograms taken over windows that start at different proper times
/// agree: the chirp only relabels modes along the log-uniform grid.
#[test]
fn accelerated_spectrum_is_stationary() {
    let frame = AcceleratedFrame::new(1.0, N).unwrap();
    let t_obs = 6.0;
    let window = ObservationWindow::hann(t_obs, 0.02).unwrap();
    let omegas: Vec<f64> = (0..11).map(|i| 0.5 + 0.25 * i as f64).collect();
    let modes = build_modeset(0.025, 3.0 * (1.3 * t_obs).exp(), 0.02, 0, &N).unwrap();
    let opts = PeriodogramOptions::default();
    let mut runs = Vec::new();
    for (k, origin) in [0.1 * t_obs, 0.3 * t_obs].into_iter().enumerate() {
        let shifted = window.with_origin(origin);
        let table = TransferTable::new(&modes, &frame, &shifted, &omegas, &opts).unwrap();
        let est = estimate_from_table(&table, &modes, &frame, &shifted, None).unwrap();
        assert!(est.max_theory_deviation() <= 0.03, "origin {origin}");
        let mc = monte_carlo(&table, &modes, 200, 50 + k as u64, false).unwrap();
        runs.push((est.expected, mc));
    }
    let (e0, m0) = &runs[0];
    let (e1, m1) = &runs[1];
    for i in 0..omegas.len() {
        assert!((e0[i] / e1[i] - 1.0).abs() < 1e-3, "bin {i}: {} vs {}", e0[i], e1[i]);
        let spread = (m0.stderr[i].powi(2) + m1.stderr[i].powi(2)).sqrt();
        assert!((m0.mean[i] - m1.mean[i]).abs() <= 4.0 * spread, "bin {i}");
    }
}

#[test]
fn amplitude_statistics() {
    let n = 10_000u64;
    let pairs = [(0usize, 0usize), (3, 3), (0, 1), (5, 17), (100, 400)];
    let sigma = (0.125f64 / n as f64).sqrt();
    for (a, b) in pairs {
        let mut cross = Complex64::new(0.0, 0.0);
        let mut direct = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let x = amplitude_at(1, i, a);
            let y = amplitude_at(1, i, b);
            cross += x.conj() * y;
            direct += x * y;
        }
        cross /= n as f64;
        direct /= n as f64;
        if a == b {
            assert!((cross.re - 0.5).abs() < 1e-12 && cross.im.abs() < 1e-12);
        } else {
            assert!(cross.re.abs() <= 4.0 * sigma && cross.im.abs() <= 4.0 * sigma, "{a},{b}: {cross}");
        }
        assert!(direct.re.abs() <= 4.0 * sigma && direct.im.abs() <= 4.0 * sigma, "{a},{b}: {direct}");
    }
    for mode in [0usize, 9] {
        let mean: Complex64 = (0..n).map(|i| amplitude_at(2, i, mode)).sum::<Complex64>() / n as f64;
        assert!(mean.norm() <= 4.0 / (2.0 * n as f64).sqrt());
    }
}
