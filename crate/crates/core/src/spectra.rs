//! Spectral energy densities: Rayleigh–Jeans, zeropoint and Planck plus
//! zeropoint, the density of modes, and the power-spectrum conversion.
//!
//! Densities count both polarizations of each mode:
//! ρ(ω, T) = 2 · [ω²/2π²c³] · ⟨E⟩, where the bracket is [`density_of_modes`].

use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Polarization states per mode.
pub const POLARIZATIONS: f64 = 2.0;

/// Which curve a density refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    RayleighJeans,
    Zeropoint,
    PlanckZeropoint,
    /// A numerically estimated spectrum.
    Estimated,
}

impl SpectrumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumKind::RayleighJeans => "rayleigh_jeans",
            SpectrumKind::Zeropoint => "zeropoint",
            SpectrumKind::PlanckZeropoint => "planck_zp",
            SpectrumKind::Estimated => "estimated",
        }
    }

    /// Inverse of [`SpectrumKind::as_str`].
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "rayleigh_jeans" => SpectrumKind::RayleighJeans,
            "zeropoint" => SpectrumKind::Zeropoint,
            "planck_zp" => SpectrumKind::PlanckZeropoint,
            "estimated" => SpectrumKind::Estimated,
            _ => return None,
        })
    }
}

/// The temperature of a radiation bath, T ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermodynamicState {
    temperature: f64,
}

impl ThermodynamicState {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(domain("ThermodynamicState", format!("temperature must be >= 0, got {temperature}")));
        }
        Ok(Self { temperature })
    }

    pub const fn zero() -> Self {
        Self { temperature: 0.0 }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// β = 1/k_bT (infinite at T = 0).
    pub fn beta(&self, k: &PhysicalConstants) -> f64 {
        1.0 / (k.k_b * self.temperature)
    }
}

/// Modes per unit volume per unit angular frequency, per polarization:
/// ω²/2π²c³.
pub fn density_of_modes(omega: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(domain("density_of_modes", format!("omega must be >= 0, got {omega}")));
    }
    Ok(omega * omega / (2.0 * PI * PI * k.c.powi(3)))
}

/// ħω³/2π²c³, the temperature-independent vacuum density.
#[inline]
pub fn zeropoint_density(omega: f64, k: &PhysicalConstants) -> f64 {
    k.hbar * omega.powi(3) / (2.0 * PI * PI * k.c.powi(3))
}

/// Spectral energy density of the requested curve at (ω, T).
pub fn spectral_density(
    kind: SpectrumKind,
    omega: f64,
    state: ThermodynamicState,
    k: &PhysicalConstants,
) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(domain("spectral_density", format!("omega must be > 0, got {omega}")));
    }
    let t = state.temperature();
    match kind {
        SpectrumKind::RayleighJeans => {
            if !(t > 0.0) {
                return Err(domain("spectral_density", "rayleigh_jeans needs T > 0"));
            }
            Ok(POLARIZATIONS * density_of_modes(omega, k)? * k.k_b * t)
        }
        SpectrumKind::Zeropoint => Ok(zeropoint_density(omega, k)),
        SpectrumKind::PlanckZeropoint => {
            if t == 0.0 {
                return Ok(zeropoint_density(omega, k));
            }
            let y = k.hbar * omega / (2.0 * k.k_b * t);
            // coth y = 1 + 2/(e^{2y} − 1)
            let coth = 1.0 + 2.0 * crate::planck_classic::bose_occupation(2.0 * y);
            Ok(zeropoint_density(omega, k) * coth)
        }
        SpectrumKind::Estimated => Err(domain("spectral_density", "estimated curves have no closed form")),
    }
}

/// S(Ω) = (2π/3) ρ(Ω).
pub fn power_spectrum_from_density(rho_value: f64) -> f64 {
    2.0 * PI / 3.0 * rho_value
}

/// ∫₀^{ω_c} ħω³/2π²c³ dω = ħω_c⁴/8π²c³. Grows without bound with the cutoff.
pub fn cumulative_vacuum_energy(omega_cutoff: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(omega_cutoff > 0.0) {
        return Err(domain(
            "cumulative_vacuum_energy",
            format!("cutoff must be > 0, got {omega_cutoff}"),
        ));
    }
    Ok(k.hbar * omega_cutoff.powi(4) / (8.0 * PI * PI * k.c.powi(3)))
}

/// A sampled spectral curve with enough metadata to label it unambiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    kind: SpectrumKind,
    temperature: f64,
    omegas: Vec<f64>,
    values: Vec<f64>,
    constants: PhysicalConstants,
}

impl SpectralCurve {
    /// Validates ordering, positivity and lengths.
    pub fn new(
        kind: SpectrumKind,
        temperature: f64,
        omegas: Vec<f64>,
        values: Vec<f64>,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if omegas.len() != values.len() {
            return Err(domain(
                "SpectralCurve",
                format!("{} frequencies but {} values", omegas.len(), values.len()),
            ));
        }
        if !(temperature >= 0.0) {
            return Err(domain("SpectralCurve", "temperature must be >= 0"));
        }
        if omegas.first().is_some_and(|&w| !(w > 0.0)) || omegas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("SpectralCurve", "frequencies must be positive and strictly increasing"));
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(domain("SpectralCurve", "values must be non-negative"));
        }
        Ok(Self {
            kind,
            temperature,
            omegas,
            values,
            constants,
        })
    }

    /// Samples a closed-form curve on the given grid.
    pub fn sample(
        kind: SpectrumKind,
        state: ThermodynamicState,
        omegas: Vec<f64>,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let values = omegas
            .iter()
            .map(|&w| spectral_density(kind, w, state, &constants))
            .collect::<Result<Vec<_>>>()?;
        Self::new(kind, state.temperature(), omegas, values, constants)
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }
    pub fn temperature(&self) -> f64 {
        self.temperature
    }
    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }
    pub fn len(&self) -> usize {
        self.omegas.len()
    }
    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    /// (omega, value) pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.omegas.iter().copied().zip(self.values.iter().copied())
    }
}

/// `n` log-spaced points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planck_classic::mean_energy_with_zeropoint;
    use crate::quadrature::{integrate_real, Tolerance};

    const N: PhysicalConstants = PhysicalConstants::NATURAL;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn at(t: f64) -> ThermodynamicState {
        ThermodynamicState::new(t).unwrap()
    }

    #[test]
    fn density_of_modes_examples() {
        assert_eq!(density_of_modes(0.0, &N).unwrap(), 0.0);
        // 1/2π²
        assert!(rel(density_of_modes(1.0, &N).unwrap(), 0.050_660_591_821_168_89) < 1e-15);
        assert_eq!(density_of_modes(2.6, &N).unwrap(), 4.0 * density_of_modes(1.3, &N).unwrap());
        assert!(density_of_modes(-1.0, &N).is_err());
    }

    #[test]
    fn spectral_density_examples() {
        let zp = spectral_density(SpectrumKind::Zeropoint, 1.0, at(3.0), &N).unwrap();
        assert!(rel(zp, 0.050_660_591_821_168_89) < 1e-15);
        // (1/2π²)·coth(1/2), coth(0.5) = 2.163953413738653
        let pz = spectral_density(SpectrumKind::PlanckZeropoint, 1.0, at(1.0), &N).unwrap();
        assert!(rel(pz, 0.050_660_591_821_168_89 * 2.163_953_413_738_653) < 1e-14, "{pz}");
        let cold = spectral_density(SpectrumKind::PlanckZeropoint, 1.0, at(1e-6), &N).unwrap();
        assert_eq!(cold, zp);
        assert_eq!(spectral_density(SpectrumKind::PlanckZeropoint, 1.0, at(0.0), &N).unwrap(), zp);
        assert!(spectral_density(SpectrumKind::RayleighJeans, 1.0, at(0.0), &N).is_err());
        assert!(spectral_density(SpectrumKind::Zeropoint, 0.0, at(1.0), &N).is_err());
    }

    #[test]
    fn power_spectrum_examples() {
        assert_eq!(power_spectrum_from_density(0.0), 0.0);
        assert!((power_spectrum_from_density(3.0 / (2.0 * PI)) - 1.0).abs() < 1e-15);
        let pz = spectral_density(SpectrumKind::PlanckZeropoint, 1.0, at(1.0), &N).unwrap();
        assert!(rel(power_spectrum_from_density(pz), 0.229_602_588_278_059) < 1e-12);
    }

    #[test]
    fn cumulative_energy_examples() {
        let e1 = cumulative_vacuum_energy(1.0, &N).unwrap();
        assert!(rel(e1, 1.0 / (8.0 * PI * PI)) < 1e-15);
        assert!(rel(cumulative_vacuum_energy(2.0, &N).unwrap(), 16.0 * e1) < 1e-15);
        let q = integrate_real(
            |w| spectral_density(SpectrumKind::Zeropoint, w.max(1e-300), at(0.0), &N).unwrap(),
            0.0,
            1.0,
            Tolerance::new(1e-16, 1e-13),
        )
        .unwrap();
        assert!(rel(q, e1) < 1e-10);
        assert!(cumulative_vacuum_energy(0.0, &N).is_err());
    }

    #[test]
    fn planck_zp_is_modes_times_mean_energy() {
        for &(w, t) in &[(0.1, 0.2), (1.0, 1.0), (7.0, 0.5), (3.0, 100.0)] {
            let lhs = spectral_density(SpectrumKind::PlanckZeropoint, w, at(t), &N).unwrap();
            let rhs = POLARIZATIONS * density_of_modes(w, &N).unwrap() * mean_energy_with_zeropoint(w, t, &N).unwrap();
            assert!(rel(lhs, rhs) < 1e-14);
        }
    }

    #[test]
    fn thermal_part_approaches_rayleigh_jeans() {
        for &x in &[1e-1, 1e-2, 1e-3, 1e-4] {
            let t = 1.0 / x;
            let pz = spectral_density(SpectrumKind::PlanckZeropoint, 1.0, at(t), &N).unwrap();
            let zp = spectral_density(SpectrumKind::Zeropoint, 1.0, at(t), &N).unwrap();
            let rj = spectral_density(SpectrumKind::RayleighJeans, 1.0, at(t), &N).unwrap();
            assert!(pz - zp >= 0.0);
            // thermal/RJ = x/(e^x − 1) = 1 − x/2 + …; relative to RJ after restoring the ZP
            let err = rel(pz, rj);
            assert!(err <= x * x / 12.0 * 1.01 + 1e-14, "x={x} err={err}");
        }
    }

    #[test]
    fn si_units_scale() {
        let k = PhysicalConstants::SI;
        let w = 1e14;
        let zp = spectral_density(SpectrumKind::Zeropoint, w, ThermodynamicState::zero(), &k).unwrap();
        assert!(rel(zp, k.hbar * w * w * w / (2.0 * PI * PI * k.c.powi(3))) < 1e-15);
    }

    #[test]
    fn curve_validation() {
        let ok = SpectralCurve::sample(SpectrumKind::Zeropoint, at(0.0), log_grid(0.1, 10.0, 5), N).unwrap();
        assert_eq!(ok.len(), 5);
        assert!(SpectralCurve::new(SpectrumKind::Zeropoint, 0.0, alloc::vec![1.0, 1.0], alloc::vec![0.0, 0.0], N).is_err());
        assert!(SpectralCurve::new(SpectrumKind::Zeropoint, 0.0, alloc::vec![1.0], alloc::vec![-1.0], N).is_err());
        assert!(SpectralCurve::new(SpectrumKind::Zeropoint, 0.0, alloc::vec![1.0], alloc::vec![], N).is_err());
        assert_eq!(SpectrumKind::parse(SpectrumKind::PlanckZeropoint.as_str()), Some(SpectrumKind::PlanckZeropoint));
    }
}
