//! A discretized 1-D random-phase vacuum field on a log-uniform frequency grid.

use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use crate::rng::uniform_at;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, TAU};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Mode n of realization i has phase θ = 2π·u(seed, i, n).
pub fn amplitude_at(seed: u64, realization: u64, mode: usize) -> Complex64 {
    Complex64::from_polar(FRAC_1_SQRT_2, TAU * uniform_at(seed, realization, mode as u64))
}

/// Frequencies ω_n = ω_min e^{nΔx}, weights C_n and amplitudes α_n.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    omegas: Vec<f64>,
    weights: Vec<f64>,
    amplitudes: Vec<Complex64>,
    delta_x: f64,
    seed: u64,
}

/// Modes ω_min e^{nΔx} ≤ ω_max with C_n = √(ħcΔx) and amplitudes of
/// realization 0 under `seed`.
pub fn build_modeset(
    omega_min: f64,
    omega_max: f64,
    delta_x: f64,
    seed: u64,
    constants: &PhysicalConstants,
) -> Result<ModeSet> {
    if !(omega_min > 0.0 && omega_max > omega_min && omega_max.is_finite()) {
        return Err(domain(
            "build_modeset",
            format!("need 0 < omega_min < omega_max, got [{omega_min}, {omega_max}]"),
        ));
    }
    if !(delta_x > 0.0 && delta_x.is_finite()) {
        return Err(domain("build_modeset", format!("delta_x must be > 0, got {delta_x}")));
    }
    let count = ((omega_max / omega_min).ln() / delta_x + 1e-9).floor() as usize + 1;
    let omegas: Vec<f64> = (0..count).map(|n| omega_min * (n as f64 * delta_x).exp()).collect();
    let c_n = (constants.hbar * constants.c * delta_x).sqrt();
    Ok(ModeSet {
        weights: alloc::vec![c_n; count],
        amplitudes: (0..count).map(|n| amplitude_at(seed, 0, n)).collect(),
        omegas,
        delta_x,
        seed,
    })
}

impl ModeSet {
    /// Explicit modes; frequencies must be positive and strictly increasing.
    pub fn from_parts(omegas: Vec<f64>, weights: Vec<f64>, amplitudes: Vec<Complex64>, delta_x: f64) -> Result<Self> {
        if omegas.len() != weights.len() || omegas.len() != amplitudes.len() {
            return Err(domain("ModeSet::from_parts", "omegas, weights and amplitudes differ in length"));
        }
        if omegas.first().is_some_and(|&w| !(w > 0.0)) || omegas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("ModeSet::from_parts", "omegas must be positive and strictly increasing"));
        }
        Ok(Self {
            omegas,
            weights,
            amplitudes,
            delta_x,
            seed: 0,
        })
    }

    pub fn empty() -> Self {
        Self {
            omegas: Vec::new(),
            weights: Vec::new(),
            amplitudes: Vec::new(),
            delta_x: 0.0,
            seed: 0,
        }
    }

    /// Same frequencies and weights with the amplitudes of another draw.
    pub fn realization(&self, seed: u64, index: u64) -> Self {
        Self {
            amplitudes: (0..self.len()).map(|n| amplitude_at(seed, index, n)).collect(),
            seed,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn delta_x(&self) -> f64 {
        self.delta_x
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Σ C_n², the ensemble value of ⟨g²⟩.
    pub fn variance(&self) -> f64 {
        self.weights.iter().map(|c| c * c).sum()
    }
}
