//! One-parameter least-squares fit of the window-smeared thermal spectrum.

use super::periodogram::SpectrumEstimate;
use super::theory::ConvolutionKernel;
use super::window::ObservationWindow;
use crate::error::{domain, Error, Result};
use crate::kinematics::AcceleratedFrame;
use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest RMS relative residual accepted.
pub const FIT_RMS_LIMIT: f64 = 0.1;

/// Minimum number of bins in the fitted band.
pub const FIT_MIN_BINS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureFit {
    pub temperature: f64,
    /// One-sigma uncertainty from the curvature of the residual sum, scaled
    /// by the residual variance.
    pub uncertainty: f64,
    /// RMS of (model − data)/data at the optimum.
    pub rms: f64,
}

/// Fits T in (ħc/2|ν|)coth(ħ|ν|/2k_bT), smeared by `window`, to `values`
/// on `omegas_out`. The search runs over ln T within a factor 50 of the
/// frame's Unruh temperature.
pub fn fit_temperature(
    omegas_out: &[f64],
    values: &[f64],
    window: &ObservationWindow,
    frame: &AcceleratedFrame,
) -> Result<TemperatureFit> {
    if omegas_out.len() != values.len() {
        return Err(domain("fit_temperature", "frequencies and values differ in length"));
    }
    if omegas_out.len() < FIT_MIN_BINS {
        return Err(domain("fit_temperature", format!("need at least {FIT_MIN_BINS} bins")));
    }
    let k = *frame.constants();
    let unit = frame.acceleration() / k.c;
    let lo = omegas_out.iter().fold(f64::INFINITY, |m, &w| m.min(w));
    let hi = omegas_out.iter().fold(0.0f64, |m, &w| m.max(w));
    if lo > 0.5 * unit * (1.0 + 1e-9) || hi < 3.0 * unit * (1.0 - 1e-9) {
        return Err(domain("fit_temperature", "bins must cover [0.5, 3]·a/c"));
    }
    if values.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(domain("fit_temperature", "values must be finite and > 0"));
    }

    let kernel = ConvolutionKernel::new(window, omegas_out)?;
    let chi2 = |ln_t: f64| -> f64 {
        kernel
            .thermal(ln_t.exp(), &k)
            .iter()
            .zip(values)
            .map(|(m, d)| ((m - d) / d).powi(2))
            .sum()
    };

    let centre = frame.unruh_temperature().ln();
    let span = 50f64.ln();
    let scan = 120;
    let grid = |i: usize| centre - span + 2.0 * span * i as f64 / scan as f64;
    let best = (0..=scan)
        .map(|i| (i, chi2(grid(i))))
        .fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b })
        .0;
    let (mut a, mut b) = (grid(best.saturating_sub(1)), grid((best + 1).min(scan)));

    // golden section
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (chi2(x1), chi2(x2));
    while b - a > 1e-11 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = chi2(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = chi2(x2);
        }
    }
    let ln_t = 0.5 * (a + b);
    let t_hat = ln_t.exp();
    let chi_min = chi2(ln_t);
    let n = values.len() as f64;
    let rms = (chi_min / n).sqrt();
    if !(rms <= FIT_RMS_LIMIT) {
        return Err(Error::FitFailure {
            rms,
            limit: FIT_RMS_LIMIT,
        });
    }
    // curvature in T
    let h = 1e-3 * t_hat;
    let c = |t: f64| chi2(t.ln());
    let curvature = (c(t_hat + h) - 2.0 * chi_min + c(t_hat - h)) / (h * h);
    let s2 = chi_min / (n - 1.0);
    let uncertainty = if curvature > 0.0 { (2.0 * s2 / curvature).sqrt() } else { f64::INFINITY };
    Ok(TemperatureFit {
        temperature: t_hat,
        uncertainty,
        rms,
    })
}

/// [`fit_temperature`] on the deterministic expectation of an estimate.
pub fn fit_unruh_temperature(estimate: &SpectrumEstimate, frame: &AcceleratedFrame) -> Result<TemperatureFit> {
    fit_temperature(&estimate.omegas_out, &estimate.expected, &estimate.window, frame)
}
