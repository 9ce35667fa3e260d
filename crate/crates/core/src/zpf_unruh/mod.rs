//! Stochastic vacuum field seen by a uniformly accelerated observer: mode
//! sets, field samples, windowed periodograms, the thermal theory curve and
//! temperature extraction.

pub mod field;
pub mod fit;
pub mod modes;
pub mod periodogram;
pub mod theory;
pub mod window;

pub use field::{eval_field_accelerated, eval_field_inertial};
pub use fit::{fit_temperature, fit_unruh_temperature, TemperatureFit};
pub use modes::{build_modeset, ModeSet};
pub use periodogram::{
    estimate_from_table, expected_periodogram, mc_periodogram, monte_carlo, MonteCarloStats, PeriodogramOptions, Refinement, SpectrumEstimate, TransferTable,
};
pub use theory::{theory_spectrum, thermal_spectrum};
pub use window::{ObservationWindow, WindowKind};

use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::kinematics::AcceleratedFrame;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Parameters of one simulation run. The defaults are the reference
/// configuration in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub acceleration: f64,
    pub t_obs: f64,
    pub dtau: f64,
    pub delta_x: f64,
    pub omega_out_min: f64,
    pub omega_out_max: f64,
    pub bins: usize,
    /// Lowest mode as a fraction of `omega_out_min`.
    pub mode_floor: f64,
    pub window: WindowKind,
    pub seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            acceleration: 1.0,
            t_obs: 12.0,
            dtau: 0.02,
            delta_x: 0.02,
            omega_out_min: 0.5,
            omega_out_max: 3.0,
            bins: 26,
            mode_floor: 0.05,
            window: WindowKind::Hann,
            seed: 0,
        }
    }
}

impl SimulationConfig {
    pub fn frame(&self, constants: PhysicalConstants) -> Result<AcceleratedFrame> {
        AcceleratedFrame::new(self.acceleration, constants)
    }

    pub fn window(&self) -> Result<ObservationWindow> {
        ObservationWindow::new(self.window, self.t_obs, self.dtau)
    }

    /// Evenly spaced output frequencies from min to max inclusive.
    pub fn omegas_out(&self) -> Vec<f64> {
        if self.bins <= 1 {
            return alloc::vec![self.omega_out_min];
        }
        let step = (self.omega_out_max - self.omega_out_min) / (self.bins - 1) as f64;
        (0..self.bins).map(|i| self.omega_out_min + step * i as f64).collect()
    }

    /// Modes from `mode_floor`·Ω_min up to Ω_max·e^{aT_obs/c}: every mode
    /// whose chirp crosses the output band inside the window.
    pub fn modeset(&self, constants: &PhysicalConstants) -> Result<ModeSet> {
        let top = self.omega_out_max * (self.acceleration * self.t_obs / constants.c).exp();
        build_modeset(self.mode_floor * self.omega_out_min, top, self.delta_x, self.seed, constants)
    }
}
