use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Gamma evaluated at a non-positive integer.
    #[error("Gamma pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// An iterative or extrapolated quantity failed to settle.
    #[error("no convergence in {op}: residual {residual:e} exceeds {tolerance:e}")]
    NonConvergence {
        op: &'static str,
        residual: f64,
        tolerance: f64,
    },

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature failed: error estimate {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    /// The fixed-step integrator's local error estimate exceeded its bound.
    #[error("step-size error at T = {at}: local relative error {local_error:e} > {bound:e}")]
    StepSize {
        at: f64,
        local_error: f64,
        bound: f64,
    },

    /// The proper-time grid undersamples a mode's instantaneous phase.
    #[error("Nyquist violation: mode {mode} (omega = {omega:e}) advances {phase_step:.3} rad per step (limit {limit})")]
    Nyquist {
        mode: usize,
        omega: f64,
        phase_step: f64,
        limit: f64,
    },

    /// A least-squares fit did not describe the data.
    #[error("fit failure: rms relative residual {rms:e} exceeds {limit:e}")]
    FitFailure { rms: f64, limit: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
