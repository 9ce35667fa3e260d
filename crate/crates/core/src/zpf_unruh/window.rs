//! Finite observation windows and their closed-form Fourier transforms.

use crate::error::{domain, Result};
use alloc::format;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowKind {
    /// sin²(πτ/T_obs).
    Hann,
    Rectangular,
}

impl WindowKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WindowKind::Hann => "hann",
            WindowKind::Rectangular => "rectangular",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hann" => Some(WindowKind::Hann),
            "rectangular" | "rect" => Some(WindowKind::Rectangular),
            _ => None,
        }
    }
}

/// A taper on [τ₀, τ₀ + T_obs] (τ₀ = 0 unless moved with
/// [`ObservationWindow::with_origin`]) with a uniform reference grid of
/// spacing at most `dtau`.
///
/// Periodograms weight the signal by w(τ)(e^{−iΩτ} − r(Ω)) with
/// r(Ω) = W(Ω)/W(0): a window-weighted mean is removed before the
/// transform, which keeps the 1/ν² infrared growth of the accelerated
/// spectrum integrable against the window kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationWindow {
    kind: WindowKind,
    t_obs: f64,
    dtau: f64,
    origin: f64,
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

impl ObservationWindow {
    pub fn new(kind: WindowKind, t_obs: f64, dtau: f64) -> Result<Self> {
        if !(t_obs > 0.0 && t_obs.is_finite()) {
            return Err(domain("ObservationWindow", format!("T_obs must be > 0, got {t_obs}")));
        }
        if !(dtau > 0.0 && dtau <= t_obs) {
            return Err(domain("ObservationWindow", format!("dtau must lie in (0, T_obs], got {dtau}")));
        }
        Ok(Self {
            kind,
            t_obs,
            dtau,
            origin: 0.0,
        })
    }

    pub fn hann(t_obs: f64, dtau: f64) -> Result<Self> {
        Self::new(WindowKind::Hann, t_obs, dtau)
    }

    /// The same window starting at proper time `origin`.
    pub fn with_origin(self, origin: f64) -> Self {
        Self { origin, ..self }
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn end(&self) -> f64 {
        self.origin + self.t_obs
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn t_obs(&self) -> f64 {
        self.t_obs
    }

    pub fn dtau(&self) -> f64 {
        self.dtau
    }

    /// Number of intervals of the reference grid.
    pub fn grid_intervals(&self) -> usize {
        (self.t_obs / self.dtau - 1e-9).ceil().max(1.0) as usize
    }

    /// Actual spacing T_obs / intervals, never above `dtau`.
    pub fn grid_step(&self) -> f64 {
        self.t_obs / self.grid_intervals() as f64
    }

    /// Reference grid τ₀, τ₀ + h, ..., τ₀ + T_obs.
    pub fn tau_grid(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.grid_intervals();
        let h = self.grid_step();
        (0..=n).map(move |j| if j == n { self.end() } else { self.origin + j as f64 * h })
    }

    pub fn weight(&self, tau: f64) -> f64 {
        let tau = tau - self.origin;
        if !(0.0..=self.t_obs).contains(&tau) {
            return 0.0;
        }
        match self.kind {
            WindowKind::Hann => {
                let s = (PI * tau / self.t_obs).sin();
                s * s
            }
            WindowKind::Rectangular => 1.0,
        }
    }

    fn boxcar(&self, u: f64) -> Complex64 {
        let t = self.t_obs;
        Complex64::from_polar(t * sinc(0.5 * u * t), -0.5 * u * t)
    }

    /// W(u) = ∫ w(τ)e^{−iuτ}dτ over the window.
    pub fn transform(&self, u: f64) -> Complex64 {
        let local = match self.kind {
            WindowKind::Hann => {
                let b = 2.0 * PI / self.t_obs;
                self.boxcar(u) * 0.5 - (self.boxcar(u - b) + self.boxcar(u + b)) * 0.25
            }
            WindowKind::Rectangular => self.boxcar(u),
        };
        if self.origin == 0.0 {
            local
        } else {
            local * Complex64::from_polar(1.0, -u * self.origin)
        }
    }

    /// r(u) = W(u)/W(0), the weight of the removed mean.
    pub fn detrend_ratio(&self, u: f64) -> Complex64 {
        self.transform(u) / self.energy_weight()
    }

    /// ∫w dτ = W(0).
    pub fn energy_weight(&self) -> f64 {
        match self.kind {
            WindowKind::Hann => 0.5 * self.t_obs,
            WindowKind::Rectangular => self.t_obs,
        }
    }

    /// Transform of the detrended kernel at signal frequency ν for output
    /// frequency Ω: [W(Ω − ν) − r(Ω)W(−ν)]/2π.
    pub fn kernel(&self, omega_out: f64, nu: f64) -> Complex64 {
        (self.transform(omega_out - nu) - self.detrend_ratio(omega_out) * self.transform(-nu)) / (2.0 * PI)
    }

    /// ∫w²dτ.
    pub fn energy(&self) -> f64 {
        match self.kind {
            WindowKind::Hann => 3.0 * self.t_obs / 8.0,
            WindowKind::Rectangular => self.t_obs,
        }
    }

    /// (1/2π)∫w²dτ: a flat two-sided spectrum S gives an expected
    /// periodogram of S times this factor.
    pub fn normalization(&self) -> f64 {
        self.energy() / (2.0 * PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, integrate_real, Tolerance};

    #[test]
    fn validation_and_grid() {
        assert!(ObservationWindow::hann(0.0, 0.1).is_err());
        assert!(ObservationWindow::hann(1.0, 0.0).is_err());
        let w = ObservationWindow::hann(1.0, 0.3).unwrap();
        let g: alloc::vec::Vec<f64> = w.tau_grid().collect();
        assert_eq!(g, [0.0, 0.25, 0.5, 0.75, 1.0]);
        let w = ObservationWindow::hann(12.0, 0.02).unwrap();
        assert_eq!(w.grid_intervals(), 600);
    }

    #[test]
    fn hann_shape() {
        let w = ObservationWindow::hann(12.0, 0.02).unwrap();
        assert_eq!(w.weight(0.0), 0.0);
        assert!(w.weight(12.0) < 1e-30);
        assert!((w.weight(6.0) - 1.0).abs() < 1e-15);
        assert!(w.tau_grid().all(|t| w.weight(t) >= 0.0));
    }

    #[test]
    fn transforms_match_quadrature() {
        let tol = Tolerance::new(1e-13, 1e-12);
        for kind in [WindowKind::Hann, WindowKind::Rectangular] {
            let w = ObservationWindow::new(kind, 7.0, 0.01).unwrap();
            for &u in &[0.0, 0.3, -1.1, 2.0 * PI / 7.0, 5.0] {
                let q = integrate(
                    |t| Complex64::from_polar(w.weight(t), -u * t),
                    0.0,
                    7.0,
                    tol,
                )
                .unwrap()
                .value;
                assert!((w.transform(u) - q).norm() < 1e-11, "{kind:?} u={u}");
            }
            let e = integrate_real(|t| w.weight(t).powi(2), 0.0, 7.0, tol).unwrap();
            assert!((w.energy() - e).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_vanishes_at_zero_signal_frequency() {
        let w = ObservationWindow::hann(12.0, 0.02).unwrap();
        for &om in &[0.5, 1.0, 3.0] {
            assert!(w.kernel(om, 0.0).norm() < 1e-16);
        }
        assert_eq!(w.detrend_ratio(0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn shifted_window_kernel_has_same_modulus() {
        let w = ObservationWindow::hann(6.0, 0.02).unwrap();
        let s = w.with_origin(1.8);
        assert_eq!(s.weight(1.8 + 3.0), w.weight(3.0));
        assert_eq!(s.tau_grid().next(), Some(1.8));
        for &nu in &[-2.0, 0.1, 1.3] {
            assert!((s.kernel(1.0, nu).norm() - w.kernel(1.0, nu).norm()).abs() < 1e-15);
        }
        let q = integrate(|t| Complex64::from_polar(s.weight(t), -0.7 * t), 1.8, 7.8, Tolerance::new(1e-13, 1e-12))
            .unwrap()
            .value;
        assert!((s.transform(0.7) - q).norm() < 1e-11);
    }

    #[test]
    fn hann_normalization() {
        let w = ObservationWindow::hann(12.0, 0.02).unwrap();
        assert!((w.normalization() - 3.0 * 12.0 / (16.0 * PI)).abs() < 1e-15);
    }
}
