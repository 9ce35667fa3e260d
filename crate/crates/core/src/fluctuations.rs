//! Maximum-entropy energy statistics, the thermal/zeropoint variance split,
//! and the fluctuation ODE for the spectral density.

use crate::constants::PhysicalConstants;
use crate::error::{domain, Error, Result};
use crate::planck_classic::mean_energy_with_zeropoint;
use crate::quadrature::{integrate_real_semi_infinite, Tolerance};
use crate::rng::CounterRng;
use crate::spectra::zeropoint_density;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Local relative error bound for [`solve_spectrum_ode`].
pub const ODE_LOCAL_ERROR_BOUND: f64 = 1e-4;

/// Lowest reduced temperature k_bT/ħω the integrator accepts; the equation
/// is singular at T = 0.
pub const ODE_MIN_REDUCED_TEMPERATURE: f64 = 0.05;

/// P(E) = e^{−E/⟨E⟩}/⟨E⟩, the maximum-entropy law at fixed mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDistribution {
    mean_energy: f64,
}

impl EnergyDistribution {
    pub fn new(mean_energy: f64) -> Result<Self> {
        if !(mean_energy > 0.0 && mean_energy.is_finite()) {
            return Err(domain("EnergyDistribution", format!("mean energy must be > 0, got {mean_energy}")));
        }
        Ok(Self { mean_energy })
    }

    pub fn mean_energy(&self) -> f64 {
        self.mean_energy
    }
}

pub fn maxent_density(dist: &EnergyDistribution, energy: f64) -> Result<f64> {
    if !(energy >= 0.0) {
        return Err(domain("maxent_density", format!("energy must be >= 0, got {energy}")));
    }
    let m = dist.mean_energy;
    Ok((-energy / m).exp() / m)
}

/// Inverse-transform samples E_i = −⟨E⟩ ln(1 − u_i); draw i is word i of the
/// counter stream keyed by `seed`.
pub fn sample_energies(dist: &EnergyDistribution, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("sample_energies", "need at least one sample"));
    }
    let mut rng = CounterRng::new(seed, 0);
    Ok((0..n)
        .map(|_| -dist.mean_energy * (-rng.next_open01()).ln_1p())
        .collect())
}

/// ⟨E²⟩ = 2⟨E⟩².
pub fn second_moment(dist: &EnergyDistribution) -> f64 {
    2.0 * dist.mean_energy * dist.mean_energy
}

/// −∫₀^∞ P ln P dE in units of k_b, for comparing trial densities.
pub fn entropy_functional(density: impl Fn(f64) -> f64) -> Result<f64> {
    integrate_real_semi_infinite(
        |e| {
            let p = density(e);
            if p > 0.0 {
                -p * p.ln()
            } else {
                0.0
            }
        },
        0.0,
        Tolerance::new(1e-13, 1e-11),
    )
}

/// Energy variance split into total, thermal and zeropoint parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceDecomposition {
    pub total: f64,
    pub thermal: f64,
    pub zeropoint: f64,
}

/// k_bT² ∂⟨E⟩/∂T by central difference of relative step `fd_step`.
pub fn thermal_variance(omega: f64, temperature: f64, k: &PhysicalConstants, fd_step: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(domain("thermal_variance", format!("temperature must be > 0, got {temperature}")));
    }
    if !(fd_step > 0.0 && fd_step < 1.0) {
        return Err(domain("thermal_variance", "fd_step must lie in (0, 1)"));
    }
    let h = fd_step * temperature;
    let up = mean_energy_with_zeropoint(omega, temperature + h, k)?;
    let down = mean_energy_with_zeropoint(omega, temperature - h, k)?;
    Ok(k.k_b * temperature * temperature * (up - down) / (2.0 * h))
}

/// Applies ⟨E²⟩ − ⟨E⟩² = ⟨E⟩² to the full mean energy and to the vacuum
/// energy ħω/2; the thermal part is their difference.
pub fn decompose_variance(omega: f64, temperature: f64, k: &PhysicalConstants) -> Result<VarianceDecomposition> {
    let mean = mean_energy_with_zeropoint(omega, temperature, k)?;
    let half = 0.5 * k.hbar * omega;
    let total = mean * mean;
    let zeropoint = half * half;
    Ok(VarianceDecomposition {
        total,
        zeropoint,
        thermal: total - zeropoint,
    })
}

/// dρ/dT = (π²c³/ω²k_bT²)[ρ² − ρ_vac²] for one angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOde {
    pub omega: f64,
    pub constants: PhysicalConstants,
    /// ρ_vac; zero gives the classical (ħ → 0) equation.
    pub vacuum_density: f64,
}

impl SpectrumOde {
    pub fn new(omega: f64, constants: PhysicalConstants) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(domain("SpectrumOde", format!("omega must be > 0, got {omega}")));
        }
        Ok(Self {
            omega,
            constants,
            vacuum_density: zeropoint_density(omega, &constants),
        })
    }

    /// The ħ → 0 equation, whose solution is Rayleigh–Jeans.
    pub fn classical(omega: f64, constants: PhysicalConstants) -> Result<Self> {
        Ok(Self {
            vacuum_density: 0.0,
            ..Self::new(omega, constants)?
        })
    }

    pub fn rhs(&self, rho: f64, temperature: f64) -> f64 {
        let k = &self.constants;
        let coeff = PI * PI * k.c.powi(3) / (self.omega * self.omega * k.k_b * temperature * temperature);
        coeff * (rho - self.vacuum_density) * (rho + self.vacuum_density)
    }

    /// Solution that matches equipartition at high T: ρ_vac coth(ħω/2k_bT),
    /// or ω²k_bT/π²c³ for the classical equation.
    pub fn closed_form(&self, temperature: f64) -> f64 {
        let k = &self.constants;
        if self.vacuum_density == 0.0 {
            return self.omega * self.omega * k.k_b * temperature / (PI * PI * k.c.powi(3));
        }
        let y = k.hbar * self.omega / (2.0 * k.k_b * temperature);
        self.vacuum_density / y.tanh()
    }
}

pub fn spectrum_ode_rhs(rho: f64, omega: f64, temperature: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(domain("spectrum_ode_rhs", format!("temperature must be > 0, got {temperature}")));
    }
    Ok(SpectrumOde::new(omega, *k)?.rhs(rho, temperature))
}

/// ρ(T) sampled on the integrator's uniform temperature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution {
    pub omega: f64,
    pub temperatures: Vec<f64>,
    pub densities: Vec<f64>,
    /// Largest step-doubling local error estimate seen.
    pub max_local_error: f64,
}

impl OdeSolution {
    /// max |ρ_num/ρ_ref − 1| against a reference curve.
    pub fn max_relative_error(&self, reference: impl Fn(f64) -> f64) -> f64 {
        self.temperatures
            .iter()
            .zip(&self.densities)
            .map(|(&t, &r)| (r / reference(t) - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn rk4_step(ode: &SpectrumOde, t: f64, y: f64, h: f64) -> f64 {
    let k1 = ode.rhs(y, t);
    let k2 = ode.rhs(y + 0.5 * h * k1, t + 0.5 * h);
    let k3 = ode.rhs(y + 0.5 * h * k2, t + 0.5 * h);
    let k4 = ode.rhs(y + h * k3, t + h);
    y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
}

/// Classical fixed-step RK4 from `t_start` to `t_end` (either direction).
/// Each grid step is taken once whole and once as two half steps; the half
/// steps are kept, and their Richardson error estimate must stay below
/// [`ODE_LOCAL_ERROR_BOUND`]. Forward integration away from the vacuum fixed
/// point amplifies early errors by about e^{ħω/k_bT_start}, which is why the
/// finer pair is the one propagated.
pub fn solve_ode(ode: &SpectrumOde, t_start: f64, t_end: f64, rho_start: f64, steps: usize) -> Result<OdeSolution> {
    let k = &ode.constants;
    let t_floor = ODE_MIN_REDUCED_TEMPERATURE * k.hbar * ode.omega / k.k_b;
    if !(t_start > 0.0 && t_end > 0.0) || t_start.min(t_end) < t_floor {
        return Err(domain(
            "solve_spectrum_ode",
            format!("temperatures must be >= {t_floor:e} (k_bT >= {ODE_MIN_REDUCED_TEMPERATURE} ħω)"),
        ));
    }
    if steps == 0 {
        return Err(domain("solve_spectrum_ode", "need at least one step"));
    }
    if rho_start < ode.vacuum_density || !(rho_start > 0.0) {
        return Err(domain(
            "solve_spectrum_ode",
            format!("rho_start {rho_start:e} lies below the vacuum fixed point {:e}", ode.vacuum_density),
        ));
    }

    let h = (t_end - t_start) / steps as f64;
    let mut temperatures = Vec::with_capacity(steps + 1);
    let mut densities = Vec::with_capacity(steps + 1);
    temperatures.push(t_start);
    densities.push(rho_start);
    let mut y = rho_start;
    let mut max_local_error: f64 = 0.0;
    for i in 0..steps {
        let t = t_start + h * i as f64;
        let full = rk4_step(ode, t, y, h);
        let half = rk4_step(ode, t + 0.5 * h, rk4_step(ode, t, y, 0.5 * h), 0.5 * h);
        let local = ((half - full) / 15.0 / half).abs();
        max_local_error = max_local_error.max(local);
        if !(local <= ODE_LOCAL_ERROR_BOUND) {
            return Err(Error::StepSize {
                at: t,
                local_error: local,
                bound: ODE_LOCAL_ERROR_BOUND,
            });
        }
        y = half;
        temperatures.push(if i + 1 == steps { t_end } else { t + h });
        densities.push(y);
    }
    Ok(OdeSolution {
        omega: ode.omega,
        temperatures,
        densities,
        max_local_error,
    })
}

/// [`solve_ode`] for the equation with the physical vacuum density.
pub fn solve_spectrum_ode(
    omega: f64,
    t_start: f64,
    t_end: f64,
    rho_start: f64,
    steps: usize,
    k: &PhysicalConstants,
) -> Result<OdeSolution> {
    solve_ode(&SpectrumOde::new(omega, *k)?, t_start, t_end, rho_start, steps)
}
