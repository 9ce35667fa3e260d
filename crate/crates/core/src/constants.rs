use crate::error::{domain, Result};
use alloc::format;

/// ħ, c and k_b. Every formula in the crate is written against this record,
/// so natural units and SI share one code path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
}

impl PhysicalConstants {
    /// ħ = c = k_b = 1.
    pub const NATURAL: Self = Self {
        hbar: 1.0,
        c: 1.0,
        k_b: 1.0,
    };

    /// CODATA 2018 exact / recommended values.
    pub const SI: Self = Self {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        k_b: 1.380_649e-23,
    };

    pub fn new(hbar: f64, c: f64, k_b: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("c", c), ("k_b", k_b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(
                    "PhysicalConstants::new",
                    format!("{name} must be finite and > 0, got {v}"),
                ));
            }
        }
        Ok(Self { hbar, c, k_b })
    }

    pub const fn natural() -> Self {
        Self::NATURAL
    }

    /// ħω / k_bT.
    #[inline]
    pub fn reduced_frequency(&self, omega: f64, temperature: f64) -> f64 {
        self.hbar * omega / (self.k_b * temperature)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::NATURAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_is_exactly_one() {
        let k = PhysicalConstants::natural();
        assert_eq!((k.hbar, k.c, k.k_b), (1.0, 1.0, 1.0));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PhysicalConstants::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, -1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(1.0, 1.0, f64::NAN).is_err());
        assert!(PhysicalConstants::new(1.0, 2.0, 3.0).is_ok());
    }
}
