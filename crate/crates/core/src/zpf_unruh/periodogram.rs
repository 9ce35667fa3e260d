//! Windowed periodograms of the accelerated field: the exact ensemble
//! expectation and a Monte Carlo estimate, both built from per-mode transfer
//! coefficients.
//!
//! For output frequency Ω the windowed transform of the field is
//! g_T(Ω) = Σ_n C_n(α_n A⁺_n(Ω) + α*_n A⁻_n(Ω)) with
//! A^±_n(Ω) = (1/2π)∫w(τ)(e^{−iΩτ} − r(Ω))e^{±iφ_n(τ)}dτ. Random phases
//! give ⟨|g_T|²⟩ = Σ_n C_n²(|A⁺_n|² + |A⁻_n|²)/2. All periodogram values are
//! divided by the window normalization so they estimate S(Ω) directly.

use super::field::eval_field_accelerated;
use super::modes::{amplitude_at, ModeSet};
use super::theory::{theory_convolved, theory_spectrum};
use super::window::ObservationWindow;
use crate::error::{domain, Error, Result};
use crate::kinematics::{chirp_phase_offset, AcceleratedFrame};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest phase advance per quadrature step, in radians.
pub const MAX_PHASE_STEP: f64 = 0.3;

/// Proper-time width of the segments of the adaptive grid.
pub const SEGMENT_WIDTH: f64 = 0.25;

/// How the proper-time integrals are discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    /// Trapezoid on segments of width [`SEGMENT_WIDTH`]; each mode's step is
    /// the window grid step, shrunk where needed so that its instantaneous
    /// phase rate plus Ω_max advances at most [`MAX_PHASE_STEP`] per step.
    Adaptive,
    /// Trapezoid on the window's own uniform grid; modes that advance more
    /// than [`MAX_PHASE_STEP`] per step are rejected.
    WindowGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodogramOptions {
    pub refinement: Refinement,
    /// Spread the work over the rayon pool; ignored without the `parallel`
    /// feature. Results do not depend on this flag.
    pub parallel: bool,
}

impl Default for PeriodogramOptions {
    fn default() -> Self {
        Self {
            refinement: Refinement::Adaptive,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

fn validate_outputs(omegas_out: &[f64]) -> Result<f64> {
    if omegas_out.is_empty() || omegas_out.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
        return Err(domain("periodogram", "output frequencies must be finite and > 0"));
    }
    Ok(omegas_out.iter().fold(0.0, |m: f64, &w| m.max(w)))
}

/// Map over indices in order, optionally on the rayon pool.
fn ordered_map<T: Send>(n: usize, parallel: bool, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// A^±_n(Ω_k) for every mode and output bin.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferTable {
    omegas_out: Vec<f64>,
    modes: usize,
    /// Mode-major: entry n·K + k.
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
    normalization: f64,
}

/// Σ_j q_j v_j e^{−iu_k τ_j} on one uniform segment, by Horner in
/// z_k = e^{−iu_k h} from the last node backwards.
struct SegmentSum {
    z_re: Vec<f64>,
    z_im: Vec<f64>,
    acc_re: Vec<f64>,
    acc_im: Vec<f64>,
}

impl SegmentSum {
    fn new(k: usize) -> Self {
        Self {
            z_re: vec![0.0; k],
            z_im: vec![0.0; k],
            acc_re: vec![0.0; k],
            acc_im: vec![0.0; k],
        }
    }

    fn reset(&mut self, freqs: &[f64], h: f64) {
        for (i, &u) in freqs.iter().enumerate() {
            let (s, c) = (-u * h).sin_cos();
            self.z_re[i] = c;
            self.z_im[i] = s;
            self.acc_re[i] = 0.0;
            self.acc_im[i] = 0.0;
        }
    }

    #[inline]
    fn push(&mut self, vr: f64, vi: f64) {
        let n = self.acc_re.len();
        let (ar, ai) = (&mut self.acc_re[..n], &mut self.acc_im[..n]);
        let (zr, zi) = (&self.z_re[..n], &self.z_im[..n]);
        for i in 0..n {
            let r = ar[i] * zr[i] - ai[i] * zi[i] + vr;
            let m = ar[i] * zi[i] + ai[i] * zr[i] + vi;
            ar[i] = r;
            ai[i] = m;
        }
    }
}

/// F(u) = ∫ w(τ) e^{iφ(τ)} e^{−iuτ}dτ for all `freqs`, on uniform segments.
fn mode_transform(
    omega: f64,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    freqs: &[f64],
    segments: &[(f64, f64, usize)],
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); freqs.len()];
    let mut sum = SegmentSum::new(freqs.len());
    for &(s0, s1, m) in segments {
        let h = (s1 - s0) / m as f64;
        sum.reset(freqs, h);
        for j in (0..=m).rev() {
            let tau = if j == m { s1 } else { s0 + h * j as f64 };
            let q = if j == 0 || j == m { 0.5 * h } else { h };
            let amp = q * window.weight(tau);
            let (s, c) = chirp_phase_offset(frame, omega, tau).sin_cos();
            sum.push(amp * c, amp * s);
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += Complex64::new(sum.acc_re[i], sum.acc_im[i]) * Complex64::from_polar(1.0, -freqs[i] * s0);
        }
    }
    out
}

fn mode_segments(
    mode: usize,
    omega: f64,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    omega_top: f64,
    refinement: Refinement,
) -> Result<Vec<(f64, f64, usize)>> {
    let t = window.t_obs();
    match refinement {
        Refinement::WindowGrid => {
            let h = window.grid_step();
            let rate = omega * (-frame.rapidity(window.origin())).exp() + omega_top;
            let step = rate * h;
            if step > MAX_PHASE_STEP {
                return Err(Error::Nyquist {
                    mode,
                    omega,
                    phase_step: step,
                    limit: MAX_PHASE_STEP,
                });
            }
            Ok(vec![(window.origin(), window.end(), window.grid_intervals())])
        }
        Refinement::Adaptive => {
            let count = (t / SEGMENT_WIDTH - 1e-9).ceil().max(1.0) as usize;
            let width = t / count as f64;
            Ok((0..count)
                .map(|s| {
                    let s0 = window.origin() + s as f64 * width;
                    let s1 = if s + 1 == count { window.end() } else { s0 + width };
                    let rate = omega * (-frame.rapidity(s0)).exp() + omega_top;
                    let h = window.grid_step().min(MAX_PHASE_STEP / rate);
                    (s0, s1, ((s1 - s0) / h).ceil().max(1.0) as usize)
                })
                .collect())
        }
    }
}

impl TransferTable {
    pub fn new(
        modes: &ModeSet,
        frame: &AcceleratedFrame,
        window: &ObservationWindow,
        omegas_out: &[f64],
        options: &PeriodogramOptions,
    ) -> Result<Self> {
        let top = validate_outputs(omegas_out)?;
        let k = omegas_out.len();
        // u = 0, +Ω_k, −Ω_k
        let mut freqs = Vec::with_capacity(2 * k + 1);
        freqs.push(0.0);
        freqs.extend_from_slice(omegas_out);
        freqs.extend(omegas_out.iter().map(|w| -w));
        let ratios: Vec<Complex64> = omegas_out.iter().map(|&w| window.detrend_ratio(w)).collect();

        let segments: Vec<Vec<(f64, f64, usize)>> = modes
            .omegas()
            .iter()
            .enumerate()
            .map(|(n, &w)| mode_segments(n, w, frame, window, top, options.refinement))
            .collect::<Result<_>>()?;

        let per_mode = ordered_map(modes.len(), options.parallel, |n| {
            let f = mode_transform(modes.omegas()[n], frame, window, &freqs, &segments[n]);
            let mut plus = Vec::with_capacity(k);
            let mut minus = Vec::with_capacity(k);
            for (i, r) in ratios.iter().enumerate() {
                plus.push((f[1 + i] - r * f[0]) / (2.0 * PI));
                minus.push((f[1 + k + i].conj() - r * f[0].conj()) / (2.0 * PI));
            }
            (plus, minus)
        });
        let mut plus = Vec::with_capacity(modes.len() * k);
        let mut minus = Vec::with_capacity(modes.len() * k);
        for (p, m) in per_mode {
            plus.extend(p);
            minus.extend(m);
        }
        Ok(Self {
            omegas_out: omegas_out.to_vec(),
            modes: modes.len(),
            plus,
            minus,
            normalization: window.normalization(),
        })
    }

    pub fn omegas_out(&self) -> &[f64] {
        &self.omegas_out
    }

    pub fn plus(&self, mode: usize, bin: usize) -> Complex64 {
        self.plus[mode * self.omegas_out.len() + bin]
    }

    pub fn minus(&self, mode: usize, bin: usize) -> Complex64 {
        self.minus[mode * self.omegas_out.len() + bin]
    }

    /// Σ_n C_n²(|A⁺|² + |A⁻|²)/2, normalized.
    pub fn expected(&self, weights: &[f64]) -> Vec<f64> {
        let k = self.omegas_out.len();
        let mut out = vec![0.0; k];
        for (n, &c) in weights.iter().enumerate().take(self.modes) {
            for (b, o) in out.iter_mut().enumerate() {
                let i = n * k + b;
                *o += c * c * 0.5 * (self.plus[i].norm_sqr() + self.minus[i].norm_sqr());
            }
        }
        out.iter().map(|v| v / self.normalization).collect()
    }

    /// g_T(Ω_k) for one set of amplitudes.
    pub fn transform(&self, weights: &[f64], amplitudes: &[Complex64]) -> Vec<Complex64> {
        let k = self.omegas_out.len();
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        for (n, (&c, &a)) in weights.iter().zip(amplitudes).enumerate().take(self.modes) {
            for (b, o) in out.iter_mut().enumerate() {
                let i = n * k + b;
                *o += (a * self.plus[i] + a.conj() * self.minus[i]) * c;
            }
        }
        out
    }

    /// |g_T(Ω_k)|², normalized.
    pub fn periodogram(&self, weights: &[f64], amplitudes: &[Complex64]) -> Vec<f64> {
        self.transform(weights, amplitudes)
            .iter()
            .map(|g| g.norm_sqr() / self.normalization)
            .collect()
    }
}

/// Ensemble mean and standard error of the periodogram.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloStats {
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub n_realizations: usize,
    pub seed: u64,
}

/// Periodogram estimates on the output grid, with the raw and window-smeared
/// theory curves for comparison. All values estimate S(Ω).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub omegas_out: Vec<f64>,
    pub expected: Vec<f64>,
    pub mc: Option<MonteCarloStats>,
    pub theory_convolved: Vec<f64>,
    pub theory_raw: Vec<f64>,
    pub window: ObservationWindow,
}

impl SpectrumEstimate {
    pub fn len(&self) -> usize {
        self.omegas_out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas_out.is_empty()
    }

    /// Rows of (Ω, expected, mc_mean, mc_stderr, theory_convolved, theory_raw);
    /// the Monte Carlo entries are `None` for a deterministic-only estimate.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, Option<f64>, Option<f64>, f64, f64)> + '_ {
        (0..self.len()).map(move |i| {
            (
                self.omegas_out[i],
                self.expected[i],
                self.mc.as_ref().map(|m| m.mean[i]),
                self.mc.as_ref().map(|m| m.stderr[i]),
                self.theory_convolved[i],
                self.theory_raw[i],
            )
        })
    }

    /// Largest |expected/theory_convolved − 1| over the bins.
    pub fn max_theory_deviation(&self) -> f64 {
        self.expected
            .iter()
            .zip(&self.theory_convolved)
            .map(|(e, t)| (e / t - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Expected periodogram and theory curves from a prepared table, with
/// optional Monte Carlo statistics.
pub fn estimate_from_table(
    table: &TransferTable,
    modes: &ModeSet,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    mc: Option<MonteCarloStats>,
) -> Result<SpectrumEstimate> {
    let omegas_out = table.omegas_out().to_vec();
    Ok(SpectrumEstimate {
        expected: table.expected(modes.weights()),
        theory_convolved: theory_convolved(frame, window, &omegas_out)?,
        theory_raw: omegas_out.iter().map(|&w| theory_spectrum(frame, w)).collect::<Result<_>>()?,
        omegas_out,
        mc,
        window: *window,
    })
}

/// Deterministic ensemble expectation of the periodogram.
pub fn expected_periodogram(
    modes: &ModeSet,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    omegas_out: &[f64],
    options: &PeriodogramOptions,
) -> Result<SpectrumEstimate> {
    let table = TransferTable::new(modes, frame, window, omegas_out, options)?;
    estimate_from_table(&table, modes, frame, window, None)
}

/// Mean and standard error over realizations 0..n of `seed`; each
/// realization's amplitudes depend only on (seed, realization, mode) and the
/// reduction runs in realization order.
pub fn monte_carlo(table: &TransferTable, modes: &ModeSet, n_realizations: usize, seed: u64, parallel: bool) -> Result<MonteCarloStats> {
    if n_realizations < 2 {
        return Err(domain("mc_periodogram", "need at least two realizations"));
    }
    let draws = ordered_map(n_realizations, parallel, |i| {
        let amps: Vec<Complex64> = (0..modes.len()).map(|n| amplitude_at(seed, i as u64, n)).collect();
        table.periodogram(modes.weights(), &amps)
    });
    let k = table.omegas_out().len();
    let nf = n_realizations as f64;
    let mut mean = vec![0.0; k];
    for d in &draws {
        for (m, v) in mean.iter_mut().zip(d) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= nf);
    let mut var = vec![0.0; k];
    for d in &draws {
        for ((s, v), m) in var.iter_mut().zip(d).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    let stderr = var.iter().map(|s| (s / (nf - 1.0) / nf).sqrt()).collect();
    Ok(MonteCarloStats {
        mean,
        stderr,
        n_realizations,
        seed,
    })
}

/// Ensemble-averaged periodogram over `n_realizations` draws of the phases,
/// together with the exact expectation.
pub fn mc_periodogram(
    modes: &ModeSet,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    omegas_out: &[f64],
    n_realizations: usize,
    seed: u64,
    options: &PeriodogramOptions,
) -> Result<SpectrumEstimate> {
    if n_realizations < 2 {
        return Err(domain("mc_periodogram", "need at least two realizations"));
    }
    let table = TransferTable::new(modes, frame, window, omegas_out, options)?;
    let mc = monte_carlo(&table, modes, n_realizations, seed, options.parallel)?;
    estimate_from_table(&table, modes, frame, window, Some(mc))
}

/// Periodogram of one realization from field samples on the window grid
/// (trapezoid), independent of the transfer table.
pub fn sampled_periodogram(
    modes: &ModeSet,
    frame: &AcceleratedFrame,
    window: &ObservationWindow,
    omegas_out: &[f64],
) -> Result<Vec<f64>> {
    validate_outputs(omegas_out)?;
    let h = window.grid_step();
    let n = window.grid_intervals();
    let samples: Vec<(f64, f64)> = window
        .tau_grid()
        .enumerate()
        .map(|(j, tau)| {
            let q = if j == 0 || j == n { 0.5 * h } else { h };
            (tau, q * window.weight(tau) * eval_field_accelerated(modes, frame, tau))
        })
        .collect();
    Ok(omegas_out
        .iter()
        .map(|&om| {
            let r = window.detrend_ratio(om);
            let g: Complex64 = samples
                .iter()
                .map(|&(tau, v)| (Complex64::from_polar(1.0, -om * tau) - r) * v)
                .sum::<Complex64>()
                / (2.0 * PI);
            g.norm_sqr() / window.normalization()
        })
        .collect())
}
