//! Field samples g(t) for inertial and uniformly accelerated observers.

use super::modes::ModeSet;
use crate::kinematics::{chirp_phase_offset, AcceleratedFrame};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Σ C_n(α e^{iθ} + α* e^{−iθ}) = Σ 2C_n Re(α e^{iθ}).
fn real_sum(modes: &ModeSet, phase: impl Fn(f64) -> f64) -> f64 {
    modes
        .omegas()
        .iter()
        .zip(modes.weights())
        .zip(modes.amplitudes())
        .map(|((&w, &c), &a)| 2.0 * c * (a * Complex64::from_polar(1.0, phase(w))).re)
        .sum()
}

/// g(t) = Σ C_n(α_n e^{−iω_n t} + α*_n e^{iω_n t}).
pub fn eval_field_inertial(modes: &ModeSet, t: f64) -> f64 {
    real_sum(modes, |w| -w * t)
}

/// g(τ) = Σ C_n(α_n e^{iφ_n(τ)} + α*_n e^{−iφ_n(τ)}) with the chirp phase
/// φ_n(τ) = (ω_n c/a)(e^{−aτ/c} − 1). The constant ω_n c/a dropped from the
/// phase is a fixed rotation of α_n, so the ensemble is unchanged; keeping
/// the offset form makes φ_n → −ω_nτ as a → 0.
pub fn eval_field_accelerated(modes: &ModeSet, frame: &AcceleratedFrame, tau: f64) -> f64 {
    real_sum(modes, |w| chirp_phase_offset(frame, w, tau))
}

/// Ensemble correlation ⟨g(τ₀)g(τ₀ + s)⟩ = Σ C_n² cos(φ_n(τ₀ + s) − φ_n(τ₀)).
pub fn accelerated_correlation(modes: &ModeSet, frame: &AcceleratedFrame, tau0: f64, lag: f64) -> f64 {
    modes
        .omegas()
        .iter()
        .zip(modes.weights())
        .map(|(&w, &c)| {
            let d = chirp_phase_offset(frame, w, tau0 + lag) - chirp_phase_offset(frame, w, tau0);
            c * c * d.cos()
        })
        .sum()
}

/// Ensemble correlation ⟨g(t)g(t + s)⟩ = Σ C_n² cos(ω_n s).
pub fn inertial_correlation(modes: &ModeSet, lag: f64) -> f64 {
    modes
        .omegas()
        .iter()
        .zip(modes.weights())
        .map(|(&w, &c)| c * c * (w * lag).cos())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::zpf_unruh::modes::build_modeset;
    use alloc::vec;
    use core::f64::consts::{FRAC_1_SQRT_2, LN_2};

    const N: PhysicalConstants = PhysicalConstants::NATURAL;

    #[test]
    fn single_mode_at_zero_phase() {
        let m = ModeSet::from_parts(vec![2.0], vec![0.3], vec![Complex64::new(FRAC_1_SQRT_2, 0.0)], 0.1).unwrap();
        assert!((eval_field_inertial(&m, 0.0) - 2f64.sqrt() * 0.3).abs() < 1e-15);
        let f = AcceleratedFrame::new(1.0, N).unwrap();
        assert!((eval_field_accelerated(&m, &f, 0.0) - 2f64.sqrt() * 0.3).abs() < 1e-15);
        assert_eq!(eval_field_inertial(&ModeSet::empty(), 1.0), 0.0);
    }

    #[test]
    fn small_acceleration_recovers_inertial_field() {
        let m = build_modeset(0.2, 5.0, 0.1, 4, &N).unwrap();
        let f = AcceleratedFrame::new(1e-9, N).unwrap();
        for &t in &[0.0, 0.7, 3.0] {
            let a = eval_field_accelerated(&m, &f, t);
            let b = eval_field_inertial(&m, t);
            assert!((a - b).abs() < 1e-6, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn chirp_halves_every_ln2() {
        let f = AcceleratedFrame::new(1.0, N).unwrap();
        let rate = |tau: f64| {
            let h = 1e-6;
            -(chirp_phase_offset(&f, 3.0, tau + h) - chirp_phase_offset(&f, 3.0, tau - h)) / (2.0 * h)
        };
        for &tau in &[0.0, 0.5, 2.0] {
            assert!((rate(tau + LN_2) / rate(tau) - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn correlation_at_zero_lag_is_variance() {
        let m = build_modeset(0.05, 50.0, 0.02, 1, &N).unwrap();
        let f = AcceleratedFrame::new(1.0, N).unwrap();
        assert!((accelerated_correlation(&m, &f, 1.0, 0.0) - m.variance()).abs() < 1e-12);
        assert!((inertial_correlation(&m, 0.0) - m.variance()).abs() < 1e-12);
    }
}
