//! Numerical core for zeropoint-field spectra.
//!
//! Closed-form Planck and zeropoint formulas, Lorentz and Wien invariance
//! checks, the fluctuation ODE whose solution is the blackbody-plus-zeropoint
//! spectrum, hyperbolic-motion kinematics, a stochastic 1-D zeropoint field
//! seen by a uniformly accelerated observer, and the complex-Gamma /
//! oscillatory-integral machinery that backs the thermal result.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature. The `parallel` feature distributes the periodogram work over
//! rayon; results are bit-identical to the serial path.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]
// `!(x > 0.0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod constants;
pub mod error;
pub mod fluctuations;
pub mod gamma_integrals;
pub mod invariance;
pub mod kinematics;
pub mod planck_classic;
pub mod quadrature;
pub mod rng;
pub mod spectra;
pub mod zpf_unruh;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use num_complex::Complex64;
