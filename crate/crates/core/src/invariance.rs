//! Lorentz and Wien characterizations of the vacuum spectrum.
//!
//! Propagation is restricted to the boost axis (k_y = k_z = 0 for the
//! residuals): the functional equation only depends on k_x/ω.

use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
#[allow(unused_imports)]
use num_traits::Float;

/// Default relative step for the central differences in this module.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// A boost along x with velocity β = v/c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    beta: f64,
    gamma: f64,
}

impl Boost {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.abs() < 1.0) {
            return Err(domain("Boost::new", format!("|beta| must be < 1, got {beta}")));
        }
        Ok(Self {
            beta,
            gamma: 1.0 / (1.0 - beta * beta).sqrt(),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Relativistic velocity addition.
    pub fn compose(&self, other: &Boost) -> Boost {
        let beta = (self.beta + other.beta) / (1.0 + self.beta * other.beta);
        Boost::new(beta).expect("composition of sub-luminal boosts is sub-luminal")
    }
}

/// Propagation sense along the boost axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    PlusX,
    MinusX,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::PlusX => 1.0,
            Direction::MinusX => -1.0,
        }
    }
}

/// (ω, k_x, k_y, k_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector4 {
    pub omega: f64,
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl WaveVector4 {
    pub fn new(omega: f64, kx: f64, ky: f64, kz: f64) -> Self {
        Self { omega, kx, ky, kz }
    }

    /// A light-like vector (ω = c|k|) along ±x.
    pub fn light_like(omega: f64, direction: Direction, k: &PhysicalConstants) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(domain("WaveVector4::light_like", format!("omega must be > 0, got {omega}")));
        }
        Ok(Self::new(omega, direction.sign() * omega / k.c, 0.0, 0.0))
    }

    /// A light-like vector with an arbitrary propagation direction.
    pub fn light_like_along(omega: f64, n: [f64; 3], k: &PhysicalConstants) -> Result<Self> {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !(omega > 0.0 && norm > 0.0) {
            return Err(domain("WaveVector4::light_like_along", "need omega > 0 and a non-zero direction"));
        }
        let s = omega / (k.c * norm);
        Ok(Self::new(omega, s * n[0], s * n[1], s * n[2]))
    }

    pub fn k_norm(&self) -> f64 {
        (self.kx * self.kx + self.ky * self.ky + self.kz * self.kz).sqrt()
    }

    /// |ω − c|k|| / ω.
    pub fn null_defect(&self, k: &PhysicalConstants) -> f64 {
        ((self.omega - k.c * self.k_norm()) / self.omega).abs()
    }
}

/// Transforms (ω, k) into the frame moving with the boost velocity.
pub fn boost_wavevector(w: WaveVector4, boost: Boost, k: &PhysicalConstants) -> WaveVector4 {
    let v = boost.beta * k.c;
    let g = boost.gamma;
    WaveVector4 {
        omega: g * (w.omega - v * w.kx),
        kx: g * (w.kx - v * w.omega / (k.c * k.c)),
        ky: w.ky,
        kz: w.kz,
    }
}

/// An energy density per wavevector volume, f(ω).
pub struct SpectrumModel {
    pub label: String,
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SpectrumModel {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Box::new(f),
        }
    }

    /// f(ω) = αω, the invariant family.
    pub fn linear(alpha: f64) -> Self {
        Self::new(format!("linear(alpha={alpha})"), move |w| alpha * w)
    }

    /// f ≡ 0.
    pub fn empty() -> Self {
        Self::new("empty", |_| 0.0)
    }

    pub fn eval(&self, omega: f64) -> f64 {
        (self.f)(omega)
    }
}

impl core::fmt::Debug for SpectrumModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SpectrumModel").field("label", &self.label).finish()
    }
}

/// f(Dω) − D f(ω) with D = γ(1 − v k_x/ω), relative to f(ω) when f(ω) > 0
/// (the raw residual otherwise).
pub fn lorentz_residual(model: &SpectrumModel, boost: Boost, w: WaveVector4, k: &PhysicalConstants) -> Result<f64> {
    if w.null_defect(k) > 1e-12 {
        return Err(domain("lorentz_residual", "wave vector is not light-like"));
    }
    let d = boost.gamma * (1.0 - boost.beta * k.c * w.kx / w.omega);
    let f0 = model.eval(w.omega);
    let raw = model.eval(d * w.omega) - f0 * d;
    Ok(if f0 > 0.0 { raw / f0 } else { raw })
}

/// Adiabatic change of a spectral density, [(ω/3)ρ′(ω) − ρ(ω)]·δV/V,
/// with ρ′ from a central difference of relative step `fd_step`.
pub fn wien_adiabatic_delta(rho: impl Fn(f64) -> f64, omega: f64, dv_over_v: f64, fd_step: f64) -> Result<f64> {
    if !(omega > 0.0) || !(fd_step > 0.0) {
        return Err(domain("wien_adiabatic_delta", "need omega > 0 and fd_step > 0"));
    }
    let h = fd_step * omega;
    let derivative = (rho(omega + h) - rho(omega - h)) / (2.0 * h);
    Ok((omega / 3.0 * derivative - rho(omega)) * dv_over_v)
}

/// ρ(λω, λT)/(λω)³ − ρ(ω, T)/ω³, relative to the second term.
pub fn wien_scaling_check(rho: impl Fn(f64, f64) -> f64, omega: f64, temperature: f64, lambda: f64) -> Result<f64> {
    if !(omega > 0.0 && temperature > 0.0 && lambda > 0.0) {
        return Err(domain("wien_scaling_check", "omega, temperature and lambda must be > 0"));
    }
    let base = rho(omega, temperature) / omega.powi(3);
    let scaled = rho(lambda * omega, lambda * temperature) / (lambda * omega).powi(3);
    Ok((scaled - base) / base)
}
