//! The computation behind each command: a data table plus the checks that
//! decide the exit code.

use crate::checks;
use crate::config::*;
use crate::emit::{Cell, Table};
use crate::error::{CliError, InModule, Result};
use crate::report::Check;
use std::f64::consts::PI;
use zpf_core::fluctuations::{
    decompose_variance, sample_energies, second_moment, solve_ode, thermal_variance, EnergyDistribution, SpectrumOde,
};
use zpf_core::gamma_integrals::gamma_imag_identity_residual;
use zpf_core::invariance::{lorentz_residual, wien_adiabatic_delta, wien_scaling_check, Boost, Direction, SpectrumModel, WaveVector4};
use zpf_core::kinematics::{
    boost_four_acceleration, doppler_chirp, minkowski_norm, trajectory_coordinate, trajectory_proper, AcceleratedFrame,
};
use zpf_core::planck_classic::mean_energy_with_zeropoint;
use zpf_core::spectra::{
    density_of_modes, log_grid, spectral_density, SpectralCurve, SpectrumKind, ThermodynamicState, POLARIZATIONS,
};
use zpf_core::zpf_unruh::{
    estimate_from_table, monte_carlo, ModeSet, ObservationWindow, PeriodogramOptions, SpectrumEstimate, TransferTable,
};
use zpf_core::PhysicalConstants;

/// A command's data and verdicts.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub checks: Vec<Check>,
    pub criteria: Vec<crate::report::Criterion>,
}

impl Outcome {
    fn new(table: Table, checks: Vec<Check>) -> Self {
        Self {
            table,
            checks,
            criteria: Vec::new(),
        }
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect()
}

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken value fails its check
    values
        .into_iter()
        .fold(0.0, |m: f64, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn spectra(p: &SpectraParams, k: &PhysicalConstants) -> Result<Outcome> {
    const M: &str = "spectra";
    let kind = SpectrumKind::from(p.kind);
    let state = ThermodynamicState::new(p.temperature).in_module(M)?;
    let curve = SpectralCurve::sample(kind, state, log_grid(p.omega_min, p.omega_max, p.points), *k).in_module(M)?;
    let gaps = curve
        .points()
        .map(|(w, v)| {
            let energy = match kind {
                SpectrumKind::RayleighJeans => Ok(k.k_b * p.temperature),
                SpectrumKind::Zeropoint => Ok(0.5 * k.hbar * w),
                _ => mean_energy_with_zeropoint(w, p.temperature, k),
            }
            .in_module(M)?;
            Ok(rel(v, POLARIZATIONS * density_of_modes(w, k).in_module(M)? * energy))
        })
        .collect::<Result<Vec<f64>>>()?;
    let check = Check::at_most("curve vs modes x mean energy", max_abs(gaps), p.tolerance);
    Ok(Outcome::new(Table::from(&curve), vec![check]))
}

/// Integrates `ode` over the configured range and compares with its closed form.
pub fn ode_with(ode: &SpectrumOde, p: &OdeParams, name: &str) -> Result<(Table, Check)> {
    let rho0 = p.rho_start.unwrap_or_else(|| ode.closed_form(p.t_start));
    let sol = solve_ode(ode, p.t_start, p.t_end, rho0, p.steps).in_module("fluctuations")?;
    let mut table = Table::new(vec!["T", "rho_numeric", "rho_closed", "rel_err"]);
    for (&t, &rho) in sol.temperatures.iter().zip(&sol.densities) {
        let closed = ode.closed_form(t);
        table.push(vec![t.into(), rho.into(), closed.into(), rel(rho, closed).into()]);
    }
    let err = sol.max_relative_error(|t| ode.closed_form(t));
    let check = Check::at_most(name, err, p.tolerance).with_detail(format!("max local error {:.1e}", sol.max_local_error));
    Ok((table, check))
}

pub fn ode(p: &OdeParams, k: &PhysicalConstants) -> Result<Outcome> {
    let ode = SpectrumOde::new(p.omega, *k).in_module("fluctuations")?;
    let (table, check) = ode_with(&ode, p, "ode vs coth closed form")?;
    Ok(Outcome::new(table, vec![check]))
}

pub fn invariance(p: &InvarianceParams, k: &PhysicalConstants) -> Result<Outcome> {
    const M: &str = "invariance";
    let linear = SpectrumModel::linear(p.alpha);
    let square = SpectrumModel::new("square", |w| w * w);
    let mut table = Table::new(vec!["beta", "theta", "residual_linear", "residual_square"]);
    let mut worst = 0.0f64;
    for beta in linspace(-p.beta_max, p.beta_max, p.points) {
        let boost = Boost::new(beta).in_module(M)?;
        for theta in linspace(0.0, PI, p.points) {
            let w = WaveVector4::light_like_along(p.omega, [theta.cos(), theta.sin(), 0.0], k).in_module(M)?;
            let r_lin = lorentz_residual(&linear, boost, w, k).in_module(M)?;
            let r_sq = lorentz_residual(&square, boost, w, k).in_module(M)?;
            worst = max_abs([worst, r_lin]);
            table.push(vec![beta.into(), theta.into(), r_lin.into(), r_sq.into()]);
        }
    }
    let w = WaveVector4::light_like(p.omega, Direction::PlusX, k).in_module(M)?;
    let b = Boost::new(p.discriminating_beta).in_module(M)?;
    let reject = lorentz_residual(&square, b, w, k).in_module(M)?.abs();
    let checks = vec![
        Check::at_most("linear spectrum residual", worst, p.tolerance),
        Check::at_least("omega^2 residual", reject, p.discrimination_min)
            .with_detail(format!("beta = {}", p.discriminating_beta)),
    ];
    Ok(Outcome::new(table, checks))
}

pub fn wien(p: &WienParams, k: &PhysicalConstants) -> Result<Outcome> {
    const M: &str = "invariance";
    let c = p.cubic_coefficient;
    let planck = |w: f64, t: f64| {
        ThermodynamicState::new(t)
            .and_then(|s| spectral_density(SpectrumKind::PlanckZeropoint, w, s, k))
            .unwrap_or(f64::NAN)
    };
    let mut table = Table::new(vec!["omega", "adiabatic_rel", "scaling_residual"]);
    let (mut worst_a, mut worst_s) = (0.0f64, 0.0f64);
    for w in log_grid(p.omega_min, p.omega_max, p.points) {
        let delta = wien_adiabatic_delta(|x| c * x.powi(3), w, p.dv_over_v, p.fd_step).in_module(M)?;
        let a = (delta / (c * w.powi(3))).abs();
        let s = max_abs(
            p.lambdas
                .iter()
                .map(|&l| wien_scaling_check(planck, w, p.temperature, l))
                .collect::<zpf_core::Result<Vec<_>>>()
                .in_module(M)?,
        );
        worst_a = max_abs([worst_a, a]);
        worst_s = max_abs([worst_s, s]);
        table.push(vec![w.into(), a.into(), s.into()]);
    }
    let checks = vec![
        Check::at_most("adiabatic |d rho|/rho for rho ~ omega^3", worst_a, p.tolerance),
        Check::at_most("planck+zp scaling form", worst_s, p.scaling_tolerance),
    ];
    Ok(Outcome::new(table, checks))
}

pub fn kinematics(p: &KinematicsParams, k: &PhysicalConstants) -> Result<Outcome> {
    const M: &str = "kinematics";
    let frame = AcceleratedFrame::new(p.acceleration, *k).in_module(M)?;
    let a2 = p.acceleration * p.acceleration;
    let mut table = Table::new(vec!["tau", "t", "x", "v", "omega_co", "omega_counter"]);
    let (mut round, mut doppler, mut norm) = (0.0f64, 0.0f64, 0.0f64);
    for tau in linspace(p.tau_min, p.tau_max, p.points) {
        let pt = trajectory_proper(&frame, tau).in_module(M)?;
        let back = trajectory_coordinate(&frame, pt.t);
        round = max_abs([round, (back.tau - tau) * p.acceleration / k.c]);
        let co = doppler_chirp(&frame, p.omega, tau, true).in_module(M)?;
        let counter = doppler_chirp(&frame, p.omega, tau, false).in_module(M)?;
        doppler = max_abs([doppler, co * counter / (p.omega * p.omega) - 1.0]);
        let boost = Boost::new(pt.v / k.c).in_module(M)?;
        norm = max_abs([norm, minkowski_norm(boost_four_acceleration(&frame, boost)) / a2 + 1.0]);
        table.push(vec![tau.into(), pt.t.into(), pt.x.into(), pt.v.into(), co.into(), counter.into()]);
    }
    let checks = vec![
        Check::at_most("proper/coordinate round trip (a tau/c)", round, p.tolerance),
        Check::at_most("Doppler product omega_co omega_counter / omega^2", doppler, p.tolerance),
        Check::at_most("four-acceleration norm + a^2", norm, p.tolerance),
    ];
    Ok(Outcome::new(table, checks))
}

pub fn variance_decomposition(p: &FluctuationParams, k: &PhysicalConstants) -> Result<(Table, Check)> {
    const M: &str = "fluctuations";
    let mut table = Table::new(vec!["x", "temperature", "total", "thermal", "zeropoint", "thermal_fd", "rel_err"]);
    let mut worst = 0.0f64;
    for x in log_grid(p.x_min, p.x_max, p.points) {
        let t = k.hbar * p.omega / (k.k_b * x);
        let d = decompose_variance(p.omega, t, k).in_module(M)?;
        let fd = thermal_variance(p.omega, t, k, p.fd_step).in_module(M)?;
        let e = rel(d.thermal, fd);
        worst = max_abs([worst, e]);
        table.push(vec![
            x.into(),
            t.into(),
            d.total.into(),
            d.thermal.into(),
            d.zeropoint.into(),
            fd.into(),
            e.into(),
        ]);
    }
    Ok((table, Check::at_most("thermal = total - zeropoint vs k T^2 dE/dT", worst, p.tolerance)))
}

/// |mean(E²) − 2⟨E⟩²| in standard errors over `n` exponential samples.
pub fn energy_second_moment(mean_energy: f64, n: usize, seed: u64, sigma: f64) -> Result<Check> {
    const M: &str = "fluctuations";
    let dist = EnergyDistribution::new(mean_energy).in_module(M)?;
    let sq: Vec<f64> = sample_energies(&dist, n, seed).in_module(M)?.into_iter().map(|e| e * e).collect();
    let (mean, stderr) = mean_and_stderr(&sq);
    let z = (mean - second_moment(&dist)).abs() / stderr;
    Ok(Check::at_most("<E^2> = 2<E>^2 (sigmas)", z, sigma).with_detail(format!("n = {n}")))
}

pub(crate) fn mean_and_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn fluctuations(p: &FluctuationParams, k: &PhysicalConstants, seed: u64) -> Result<Outcome> {
    let (table, decomposition) = variance_decomposition(p, k)?;
    let sampling = energy_second_moment(p.mean_energy, p.samples, seed, p.sigma_limit)?;
    Ok(Outcome::new(table, vec![decomposition, sampling]))
}

/// Everything built for one accelerated-observer run.
pub struct UnruhRun {
    pub frame: AcceleratedFrame,
    pub window: ObservationWindow,
    pub modes: ModeSet,
    pub table: TransferTable,
    pub estimate: SpectrumEstimate,
    pub options: PeriodogramOptions,
}

impl UnruhRun {
    pub fn build(p: &UnruhParams, seed: u64, k: &PhysicalConstants) -> Result<Self> {
        const M: &str = "zpf_unruh";
        let sim = p.simulation(seed);
        let frame = sim.frame(*k).in_module(M)?;
        let window = sim.window().in_module(M)?;
        let modes = sim.modeset(k).in_module(M)?;
        let options = PeriodogramOptions::default();
        let table = TransferTable::new(&modes, &frame, &window, &sim.omegas_out(), &options).in_module(M)?;
        let estimate = estimate_from_table(&table, &modes, &frame, &window, None).in_module(M)?;
        Ok(Self {
            frame,
            window,
            modes,
            table,
            estimate,
            options,
        })
    }

    /// Attaches Monte Carlo statistics over realizations 0..n of `seed`.
    pub fn with_monte_carlo(&self, n: usize, seed: u64, parallel: bool) -> Result<SpectrumEstimate> {
        let mc = monte_carlo(&self.table, &self.modes, n, seed, parallel).in_module("zpf_unruh")?;
        Ok(SpectrumEstimate {
            mc: Some(mc),
            ..self.estimate.clone()
        })
    }
}

/// Fraction of bins whose Monte Carlo mean lies within `sigma` standard
/// errors of the expectation.
pub fn mc_coverage(est: &SpectrumEstimate, sigma: f64) -> f64 {
    let Some(mc) = &est.mc else { return 0.0 };
    let inside = mc
        .mean
        .iter()
        .zip(&mc.stderr)
        .zip(&est.expected)
        .filter(|((m, s), e)| (*m - *e).abs() <= sigma * *s)
        .count();
    inside as f64 / est.len() as f64
}

pub fn unruh_expected(p: &UnruhParams, k: &PhysicalConstants, seed: u64) -> Result<Outcome> {
    let run = UnruhRun::build(p, seed, k)?;
    let check = Check::at_most("max |expected/theory_convolved - 1|", run.estimate.max_theory_deviation(), p.tolerance);
    Ok(Outcome::new(Table::from(&run.estimate), vec![check]))
}

pub fn unruh_mc(p: &UnruhParams, k: &PhysicalConstants, seed: u64) -> Result<Outcome> {
    let run = UnruhRun::build(p, seed, k)?;
    let est = run.with_monte_carlo(p.n_realizations, seed, run.options.parallel)?;
    let checks = vec![
        Check::at_most("max |expected/theory_convolved - 1|", est.max_theory_deviation(), p.tolerance),
        Check::at_least(format!("bins within {} sigma", p.sigma_limit), mc_coverage(&est, p.sigma_limit), p.coverage)
            .with_detail(format!("n = {}", p.n_realizations)),
    ];
    Ok(Outcome::new(Table::from(&est), checks))
}

pub fn gamma_check(p: &GammaParams) -> Result<Outcome> {
    let mut table = Table::new(vec!["x", "residual"]);
    let mut worst = 0.0f64;
    for x in log_grid(p.x_min, p.x_max, p.points) {
        let r = gamma_imag_identity_residual(x).in_module("gamma_integrals")?;
        worst = max_abs([worst, r]);
        table.push(vec![x.into(), r.into()]);
    }
    Ok(Outcome::new(table, vec![Check::at_most("|Gamma(ix)|^2 identity", worst, p.tolerance)]))
}

pub fn all_checks() -> Result<Outcome> {
    let criteria = checks::all_criteria()?;
    let mut table = Table::new(vec!["criterion", "title", "check", "value", "tolerance", "relation", "passed"]);
    for c in &criteria {
        for ch in &c.checks {
            table.push(vec![
                Cell::Int(c.id as u64),
                c.title.into(),
                ch.name.as_str().into(),
                ch.value.into(),
                ch.tolerance.into(),
                ch.relation.symbol().into(),
                ch.passed.into(),
            ]);
        }
    }
    let checks = criteria.iter().flat_map(|c| c.checks.iter().cloned()).collect();
    Ok(Outcome {
        table,
        checks,
        criteria,
    })
}

/// Dispatches on the configured command.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.constants()?;
    match cfg.command {
        Command::Spectra => spectra(&cfg.spectra, &k),
        Command::Ode => ode(&cfg.ode, &k),
        Command::Invariance => invariance(&cfg.invariance, &k),
        Command::Wien => wien(&cfg.wien, &k),
        Command::Kinematics => kinematics(&cfg.kinematics, &k),
        Command::Fluctuations => fluctuations(&cfg.fluctuations, &k, cfg.seed),
        Command::UnruhExpected => unruh_expected(&cfg.unruh, &k, cfg.seed),
        Command::UnruhMc => unruh_mc(&cfg.unruh, &k, cfg.seed),
        Command::GammaCheck => gamma_check(&cfg.gamma),
        Command::AllChecks => {
            if cfg.unit_system != UnitSystem::Natural {
                return Err(CliError::usage("all-checks runs in natural units"));
            }
            all_checks()
        }
    }
}
