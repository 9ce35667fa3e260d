//! The accelerated-observer spectrum and its window-smeared counterpart.

use super::window::ObservationWindow;
use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use crate::gamma_integrals::complex_gamma;
use crate::kinematics::AcceleratedFrame;
use crate::quadrature::GaussLegendre;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// (ħc/2|ν|)coth(ħ|ν|/2k_bT); T = 0 gives the vacuum part ħc/2|ν|.
pub fn thermal_spectrum(nu: f64, temperature: f64, k: &PhysicalConstants) -> f64 {
    let v = nu.abs();
    let base = k.hbar * k.c / (2.0 * v);
    if temperature <= 0.0 {
        return base;
    }
    base / (k.hbar * v / (2.0 * k.k_b * temperature)).tanh()
}

/// S(Ω) = (ħc/2Ω)coth(πΩc/a).
pub fn theory_spectrum(frame: &AcceleratedFrame, omega_out: f64) -> Result<f64> {
    if !(omega_out > 0.0) {
        return Err(domain("theory_spectrum", format!("omega must be > 0, got {omega_out}")));
    }
    let k = frame.constants();
    let x = PI * omega_out * k.c / frame.acceleration();
    Ok(k.hbar * k.c / (2.0 * omega_out) / x.tanh())
}

/// The same spectrum through the Gamma-function route,
/// (c/2πa)²·2πħa·|Γ(iΩc/a)|²cosh(πΩc/a), relative to [`theory_spectrum`].
pub fn gamma_chain_residual(frame: &AcceleratedFrame, omega_out: f64) -> Result<f64> {
    let direct = theory_spectrum(frame, omega_out)?;
    let k = frame.constants();
    let a = frame.acceleration();
    let x = omega_out * k.c / a;
    let g = complex_gamma(Complex64::new(0.0, x))?.norm_sqr();
    let pre = (k.c / (2.0 * PI * a)).powi(2) * 2.0 * PI * k.hbar * a;
    Ok((pre * g * (PI * x).cosh() - direct) / direct)
}

/// Quadrature for ∫S(|ν|)|κ(Ω,ν)|²dν / N_w over a fixed ν grid, where κ is
/// [`ObservationWindow::kernel`] and N_w the window normalization.
#[derive(Debug, Clone)]
pub struct ConvolutionKernel {
    omegas_out: Vec<f64>,
    nodes: Vec<f64>,
    /// Row-major, one row of node weights per output frequency.
    weights: Vec<f64>,
}

impl ConvolutionKernel {
    /// Gauss–Legendre panels over ν ∈ [−L, L] with L covering the output
    /// band plus 60 units of leakage tail; panels are aligned to ν = 0 where
    /// the integrand has a kink.
    pub fn new(window: &ObservationWindow, omegas_out: &[f64]) -> Result<Self> {
        if omegas_out.is_empty() || omegas_out.iter().any(|&w| !(w > 0.0)) {
            return Err(domain("ConvolutionKernel", "output frequencies must be > 0"));
        }
        let top = omegas_out.iter().fold(0.0f64, |m, &w| m.max(w));
        let width = (3.0 / window.t_obs()).min(0.25);
        let per_side = ((60.0 + top) / width).ceil() as usize;
        let rule = GaussLegendre::new(16);
        let mut nodes = Vec::with_capacity(2 * per_side * rule.len());
        let mut quad = Vec::with_capacity(nodes.capacity());
        for p in 0..2 * per_side {
            let lo = (p as f64 - per_side as f64) * width;
            for (x, w) in rule.mapped(lo, lo + width) {
                nodes.push(x);
                quad.push(w);
            }
        }
        let norm = window.normalization();
        let mut weights = Vec::with_capacity(omegas_out.len() * nodes.len());
        for &om in omegas_out {
            weights.extend(
                nodes
                    .iter()
                    .zip(&quad)
                    .map(|(&nu, &q)| q * window.kernel(om, nu).norm_sqr() / norm),
            );
        }
        Ok(Self {
            omegas_out: omegas_out.to_vec(),
            nodes,
            weights,
        })
    }

    pub fn omegas_out(&self) -> &[f64] {
        &self.omegas_out
    }

    /// Applies the kernel to a two-sided spectrum given as a function of |ν|.
    pub fn convolve(&self, spectrum: impl Fn(f64) -> f64) -> Vec<f64> {
        let s: Vec<f64> = self.nodes.iter().map(|&nu| spectrum(nu.abs())).collect();
        self.weights
            .chunks(self.nodes.len())
            .map(|row| row.iter().zip(&s).map(|(w, v)| w * v).sum())
            .collect()
    }

    /// Window-smeared thermal spectrum at temperature T.
    pub fn thermal(&self, temperature: f64, k: &PhysicalConstants) -> Vec<f64> {
        self.convolve(|nu| thermal_spectrum(nu, temperature, k))
    }
}

/// Window-smeared S(Ω) for the given frame (normalized by N_w).
pub fn theory_convolved(frame: &AcceleratedFrame, window: &ObservationWindow, omegas_out: &[f64]) -> Result<Vec<f64>> {
    Ok(ConvolutionKernel::new(window, omegas_out)?.thermal(frame.unruh_temperature(), frame.constants()))
}

/// Window-smeared vacuum-only curve ħc/2|ν| (normalized by N_w).
pub fn zeropoint_convolved(frame: &AcceleratedFrame, window: &ObservationWindow, omegas_out: &[f64]) -> Result<Vec<f64>> {
    Ok(ConvolutionKernel::new(window, omegas_out)?.thermal(0.0, frame.constants()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planck_classic::mean_energy_with_zeropoint;
    use crate::quadrature::{integrate_with_breaks, Tolerance};

    const N: PhysicalConstants = PhysicalConstants::NATURAL;

    fn frame(a: f64) -> AcceleratedFrame {
        AcceleratedFrame::new(a, N).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        let f = frame(1.0);
        assert!((theory_spectrum(&f, 0.5).unwrap() - 1.090_331_410_727_368_2).abs() < 1e-13);
        for &om in &[5.0, 10.0] {
            let s = theory_spectrum(&f, om).unwrap();
            let zp = 1.0 / (2.0 * om);
            assert!((s / zp - 1.0).abs() <= 2.5 * (-2.0 * PI * om).exp());
        }
        assert!(theory_spectrum(&f, 0.0).is_err());
        assert!(theory_spectrum(&f, -1.0).is_err());
    }

    #[test]
    fn thermal_factor_is_planck_ratio() {
        let f = frame(1.7);
        let t = f.unruh_temperature();
        for &om in &[0.2, 1.0, 4.0] {
            let factor = theory_spectrum(&f, om).unwrap() * 2.0 * om;
            let ratio = 2.0 * mean_energy_with_zeropoint(om, t, &N).unwrap() / om;
            assert!((factor / ratio - 1.0).abs() < 1e-13);
            assert!((thermal_spectrum(om, t, &N) / theory_spectrum(&f, om).unwrap() - 1.0).abs() < 1e-14);
        }
        let f = frame(2.0 * PI);
        assert!((f.unruh_temperature() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_route_agrees() {
        for &a in &[0.5, 1.0, 3.0] {
            for &om in &[0.05, 0.5, 1.0, 3.0, 7.0] {
                assert!(gamma_chain_residual(&frame(a), om).unwrap().abs() <= 1e-10, "a={a} om={om}");
            }
        }
    }

    #[test]
    fn kernel_matches_adaptive_convolution() {
        let w = ObservationWindow::hann(6.0, 0.02).unwrap();
        let f = frame(1.0);
        let omegas = [0.5, 1.0, 2.5];
        let fast = theory_convolved(&f, &w, &omegas).unwrap();
        for (&om, &v) in omegas.iter().zip(&fast) {
            let breaks: Vec<f64> = (-200..=200).map(|k| k as f64 * 0.25).collect();
            let slow = integrate_with_breaks(
                |nu| {
                    let s = if nu == 0.0 { 0.0 } else { thermal_spectrum(nu, f.unruh_temperature(), &N) };
                    Complex64::new(s * w.kernel(om, nu).norm_sqr(), 0.0)
                },
                -400.0,
                400.0,
                &breaks,
                Tolerance::new(1e-14, 1e-11),
            )
            .unwrap()
            .value
            .re
                / w.normalization();
            assert!((v / slow - 1.0).abs() < 1e-7, "om={om}: {v} vs {slow}");
        }
    }

    #[test]
    fn smearing_tends_to_raw_spectrum_for_long_windows() {
        let f = frame(1.0);
        let w = ObservationWindow::hann(200.0, 0.02).unwrap();
        let c = theory_convolved(&f, &w, &[1.0, 2.0]).unwrap();
        assert!((c[0] / theory_spectrum(&f, 1.0).unwrap() - 1.0).abs() < 2e-3);
        assert!((c[1] / theory_spectrum(&f, 2.0).unwrap() - 1.0).abs() < 2e-3);
    }

    #[test]
    fn thermal_exceeds_vacuum_curve() {
        let f = frame(1.0);
        let w = ObservationWindow::hann(12.0, 0.02).unwrap();
        let th = theory_convolved(&f, &w, &[0.5, 3.0]).unwrap();
        let zp = zeropoint_convolved(&f, &w, &[0.5, 3.0]).unwrap();
        assert!(th[0] / zp[0] > 1.3);
        assert!(th[1] > zp[1]);
    }
}
