//! Oscillator entropy, Planck mean energy, its high-temperature expansion and
//! the zeropoint-corrected mean energy.

use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

/// Above this reduced frequency the Planck occupation is evaluated as
/// e^{−x}/(1 − e^{−x}).
const LARGE_X: f64 = 700.0;

/// An energy quantum together with the mean energy it carries at a temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub epsilon: f64,
    pub mean_energy: f64,
    pub temperature: f64,
}

impl OscillatorState {
    pub fn at_temperature(epsilon: f64, temperature: f64, k: &PhysicalConstants) -> Result<Self> {
        if !(temperature >= 0.0) {
            return Err(domain("OscillatorState", format!("temperature must be >= 0, got {temperature}")));
        }
        let mean_energy = if temperature == 0.0 {
            0.0
        } else {
            mean_energy_planck(epsilon, temperature, k)?
        };
        Ok(Self {
            epsilon,
            mean_energy,
            temperature,
        })
    }

    pub fn entropy(&self, k: &PhysicalConstants) -> Result<f64> {
        entropy_of_mean_energy(self.mean_energy, self.epsilon, k)
    }
}

/// Mean occupation 1/(e^x − 1), overflow-safe for large x.
#[inline]
pub(crate) fn bose_occupation(x: f64) -> f64 {
    if x > LARGE_X {
        let e = (-x).exp();
        e / (1.0 - e)
    } else {
        1.0 / x.exp_m1()
    }
}

/// Entropy of an oscillator with mean energy ⟨E⟩ split into quanta ε:
/// S = k_b[(1+u)ln(1+u) − u ln u], u = ⟨E⟩/ε. The u → 0 limit is 0.
pub fn entropy_of_mean_energy(mean_energy: f64, epsilon: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(domain("entropy_of_mean_energy", format!("epsilon must be > 0, got {epsilon}")));
    }
    if !(mean_energy >= 0.0) {
        return Err(domain(
            "entropy_of_mean_energy",
            format!("mean energy must be >= 0, got {mean_energy}"),
        ));
    }
    let u = mean_energy / epsilon;
    if u == 0.0 {
        return Ok(0.0);
    }
    Ok(k.k_b * ((1.0 + u) * u.ln_1p() - u * u.ln()))
}

/// Planck's mean oscillator energy ε/(e^{ε/k_bT} − 1).
pub fn mean_energy_planck(epsilon: f64, temperature: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(domain("mean_energy_planck", format!("epsilon must be > 0, got {epsilon}")));
    }
    if !(temperature > 0.0) {
        return Err(domain(
            "mean_energy_planck",
            format!("temperature must be > 0, got {temperature} (T = 0 is the limit 0)"),
        ));
    }
    Ok(epsilon * bose_occupation(epsilon / (k.k_b * temperature)))
}

/// ħω/2 + ħω/(e^{ħω/k_bT} − 1); exactly ħω/2 at T = 0.
pub fn mean_energy_with_zeropoint(omega: f64, temperature: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(domain("mean_energy_with_zeropoint", format!("omega must be > 0, got {omega}")));
    }
    if !(temperature >= 0.0) {
        return Err(domain(
            "mean_energy_with_zeropoint",
            format!("temperature must be >= 0, got {temperature}"),
        ));
    }
    let quantum = k.hbar * omega;
    if temperature == 0.0 {
        return Ok(0.5 * quantum);
    }
    Ok(0.5 * quantum + quantum * bose_occupation(quantum / (k.k_b * temperature)))
}

/// Planck energy minus the equipartition value; tends to −ħω/2 at high T.
pub fn high_temperature_deficit(omega: f64, temperature: f64, k: &PhysicalConstants) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(domain("high_temperature_deficit", format!("omega must be > 0, got {omega}")));
    }
    if !(temperature > 0.0) {
        return Err(domain("high_temperature_deficit", format!("temperature must be > 0, got {temperature}")));
    }
    let quantum = k.hbar * omega;
    let kt = k.k_b * temperature;
    let x = quantum / kt;
    if x < 1e-3 {
        // ε/(e^x − 1) − kT = kT[x/(e^x−1) − 1], Bernoulli series avoids the cancellation.
        let x2 = x * x;
        let tail = -x / 2.0 + x2 / 12.0 - x2 * x2 / 720.0 + x2 * x2 * x2 / 30240.0;
        return Ok(kt * tail);
    }
    Ok(mean_energy_planck(quantum, temperature, k)? - kt)
}
