//! Hyperbolic motion at constant proper acceleration, starting from rest at
//! the origin at t = τ = 0.

use crate::constants::PhysicalConstants;
use crate::error::{domain, Result};
use crate::invariance::Boost;
use alloc::format;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Inputs with |aτ/c| above this are rejected to avoid overflow.
pub const MAX_RAPIDITY: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceleratedFrame {
    a: f64,
    constants: PhysicalConstants,
}

impl AcceleratedFrame {
    pub fn new(a: f64, constants: PhysicalConstants) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(domain("AcceleratedFrame", format!("proper acceleration must be > 0, got {a}")));
        }
        Ok(Self { a, constants })
    }

    pub fn acceleration(&self) -> f64 {
        self.a
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// ħa/2πk_bc.
    pub fn unruh_temperature(&self) -> f64 {
        let k = &self.constants;
        k.hbar * self.a / (2.0 * PI * k.k_b * k.c)
    }

    /// aτ/c, the rapidity reached at proper time τ.
    pub fn rapidity(&self, tau: f64) -> f64 {
        self.a * tau / self.constants.c
    }

    fn checked_rapidity(&self, op: &'static str, tau: f64) -> Result<f64> {
        let eta = self.rapidity(tau);
        if !(eta.abs() <= MAX_RAPIDITY) {
            return Err(domain(op, format!("|a tau / c| = {} exceeds {MAX_RAPIDITY}", eta.abs())));
        }
        Ok(eta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub tau: f64,
    pub t: f64,
    pub x: f64,
    pub v: f64,
}

pub fn trajectory_coordinate(frame: &AcceleratedFrame, t: f64) -> TrajectoryPoint {
    let c = frame.constants.c;
    let a = frame.a;
    let s = a * t / c;
    let root = 1.0f64.hypot(s);
    TrajectoryPoint {
        tau: c / a * s.asinh(),
        t,
        // √(1+s²) − 1 without cancellation
        x: c * c / a * (s * s / (root + 1.0)),
        v: c * s / root,
    }
}

pub fn trajectory_proper(frame: &AcceleratedFrame, tau: f64) -> Result<TrajectoryPoint> {
    let eta = frame.checked_rapidity("trajectory_proper", tau)?;
    let c = frame.constants.c;
    let a = frame.a;
    let half = (0.5 * eta).sinh();
    Ok(TrajectoryPoint {
        tau,
        t: c / a * eta.sinh(),
        x: c * c / a * 2.0 * half * half,
        v: c * eta.tanh(),
    })
}

/// Four-acceleration (βγa, γa, 0, 0) in the frame related to the proper frame
/// by `boost`.
pub fn boost_four_acceleration(frame: &AcceleratedFrame, boost: Boost) -> [f64; 4] {
    let g = boost.gamma();
    [boost.beta() * g * frame.a, g * frame.a, 0.0, 0.0]
}

/// a^μ a_μ with signature (+, −, −, −).
pub fn minkowski_norm(v: [f64; 4]) -> f64 {
    v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3]
}

/// Frequency seen at proper time τ of a wave with lab frequency ω:
/// ω e^{−aτ/c} for a wave moving with the observer, ω e^{+aτ/c} against.
pub fn doppler_chirp(frame: &AcceleratedFrame, omega: f64, tau: f64, copropagating: bool) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(domain("doppler_chirp", format!("omega must be > 0, got {omega}")));
    }
    let eta = frame.checked_rapidity("doppler_chirp", tau)?;
    Ok(omega * if copropagating { (-eta).exp() } else { eta.exp() })
}

/// φ(τ) = (ωc/a) e^{−aτ/c}.
pub fn chirp_phase(frame: &AcceleratedFrame, omega: f64, tau: f64) -> f64 {
    omega * frame.constants.c / frame.a * (-frame.rapidity(tau)).exp()
}

/// φ(τ) − φ(0) = (ωc/a)(e^{−aτ/c} − 1); same derivative as [`chirp_phase`]
/// but without the large constant, so it stays accurate for big ωc/a.
pub fn chirp_phase_offset(frame: &AcceleratedFrame, omega: f64, tau: f64) -> f64 {
    omega * frame.constants.c / frame.a * (-frame.rapidity(tau)).exp_m1()
}
