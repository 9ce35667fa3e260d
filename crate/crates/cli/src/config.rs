//! Run configuration: defaults, overlaid by an optional TOML file, overlaid
//! by command-line flags.

use crate::error::{CliError, Result};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use zpf_core::spectra::SpectrumKind;
use zpf_core::zpf_unruh::{SimulationConfig, WindowKind};
use zpf_core::PhysicalConstants;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "ZPF_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectra,
    Ode,
    Invariance,
    Wien,
    Kinematics,
    Fluctuations,
    UnruhExpected,
    UnruhMc,
    GammaCheck,
    AllChecks,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Spectra => "spectra",
            Command::Ode => "ode",
            Command::Invariance => "invariance",
            Command::Wien => "wien",
            Command::Kinematics => "kinematics",
            Command::Fluctuations => "fluctuations",
            Command::UnruhExpected => "unruh-expected",
            Command::UnruhMc => "unruh-mc",
            Command::GammaCheck => "gamma-check",
            Command::AllChecks => "all-checks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    #[default]
    Natural,
    Si,
}

impl UnitSystem {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "si",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
pub enum CurveKind {
    #[serde(rename = "rayleigh_jeans")]
    #[value(name = "rayleigh_jeans")]
    RayleighJeans,
    #[serde(rename = "zeropoint")]
    #[value(name = "zeropoint")]
    Zeropoint,
    #[default]
    #[serde(rename = "planck_zp")]
    #[value(name = "planck_zp")]
    PlanckZp,
}

impl From<CurveKind> for SpectrumKind {
    fn from(k: CurveKind) -> Self {
        match k {
            CurveKind::RayleighJeans => SpectrumKind::RayleighJeans,
            CurveKind::Zeropoint => SpectrumKind::Zeropoint,
            CurveKind::PlanckZp => SpectrumKind::PlanckZeropoint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WindowArg {
    #[default]
    Hann,
    Rectangular,
}

impl From<WindowArg> for WindowKind {
    fn from(w: WindowArg) -> Self {
        match w {
            WindowArg::Hann => WindowKind::Hann,
            WindowArg::Rectangular => WindowKind::Rectangular,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectraParams {
    pub kind: CurveKind,
    pub temperature: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    /// Allowed relative gap between the curve and modes × mean energy.
    pub tolerance: f64,
}

impl Default for SpectraParams {
    fn default() -> Self {
        Self {
            kind: CurveKind::PlanckZp,
            temperature: 1.0,
            omega_min: 0.01,
            omega_max: 10.0,
            points: 64,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OdeParams {
    pub omega: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    /// Initial density; the closed form at `t_start` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_start: Option<f64>,
    pub tolerance: f64,
}

impl Default for OdeParams {
    fn default() -> Self {
        Self {
            omega: 1.0,
            t_start: 0.1,
            t_end: 2.0,
            steps: 2000,
            rho_start: None,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvarianceParams {
    pub alpha: f64,
    pub omega: f64,
    pub beta_max: f64,
    pub points: usize,
    pub tolerance: f64,
    /// Velocity at which ω² must visibly fail.
    pub discriminating_beta: f64,
    pub discrimination_min: f64,
}

impl Default for InvarianceParams {
    fn default() -> Self {
        Self {
            alpha: 0.7,
            omega: 1.3,
            beta_max: 0.95,
            points: 20,
            tolerance: 1e-12,
            discriminating_beta: 0.6,
            discrimination_min: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WienParams {
    /// Coefficient of ρ = cω³.
    pub cubic_coefficient: f64,
    pub temperature: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub dv_over_v: f64,
    pub fd_step: f64,
    pub lambdas: Vec<f64>,
    pub tolerance: f64,
    pub scaling_tolerance: f64,
}

impl Default for WienParams {
    fn default() -> Self {
        Self {
            cubic_coefficient: 0.3,
            temperature: 0.7,
            omega_min: 0.1,
            omega_max: 10.0,
            points: 20,
            dv_over_v: 0.1,
            fd_step: zpf_core::invariance::DEFAULT_FD_STEP,
            lambdas: vec![0.01, 0.5, 3.0, 1e4],
            tolerance: 1e-8,
            scaling_tolerance: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KinematicsParams {
    pub acceleration: f64,
    pub omega: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub tolerance: f64,
}

impl Default for KinematicsParams {
    fn default() -> Self {
        Self {
            acceleration: 1.0,
            omega: 1.0,
            tau_min: -3.0,
            tau_max: 3.0,
            points: 61,
            tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FluctuationParams {
    pub omega: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub fd_step: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub mean_energy: f64,
    pub sigma_limit: f64,
}

impl Default for FluctuationParams {
    fn default() -> Self {
        Self {
            omega: 1.0,
            x_min: 0.1,
            x_max: 10.0,
            points: 20,
            fd_step: 1e-5,
            tolerance: 1e-6,
            samples: 100_000,
            mean_energy: 1.0,
            sigma_limit: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UnruhParams {
    pub acceleration: f64,
    pub t_obs: f64,
    pub dtau: f64,
    pub delta_x: f64,
    pub omega_out_min: f64,
    pub omega_out_max: f64,
    pub bins: usize,
    pub mode_floor: f64,
    pub window: WindowArg,
    pub n_realizations: usize,
    /// Per-bin relative tolerance against the convolved theory.
    pub tolerance: f64,
    pub sigma_limit: f64,
    /// Fraction of bins that must fall inside `sigma_limit` standard errors.
    pub coverage: f64,
}

impl Default for UnruhParams {
    fn default() -> Self {
        let s = SimulationConfig::default();
        Self {
            acceleration: s.acceleration,
            t_obs: s.t_obs,
            dtau: s.dtau,
            delta_x: s.delta_x,
            omega_out_min: s.omega_out_min,
            omega_out_max: s.omega_out_max,
            bins: s.bins,
            mode_floor: s.mode_floor,
            window: WindowArg::Hann,
            n_realizations: 100,
            tolerance: 0.03,
            sigma_limit: 4.0,
            coverage: 0.95,
        }
    }
}

impl UnruhParams {
    pub fn simulation(&self, seed: u64) -> SimulationConfig {
        SimulationConfig {
            acceleration: self.acceleration,
            t_obs: self.t_obs,
            dtau: self.dtau,
            delta_x: self.delta_x,
            omega_out_min: self.omega_out_min,
            omega_out_max: self.omega_out_max,
            bins: self.bins,
            mode_floor: self.mode_floor,
            window: self.window.into(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GammaParams {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub tolerance: f64,
}

impl Default for GammaParams {
    fn default() -> Self {
        Self {
            x_min: 0.05,
            x_max: 10.0,
            points: 50,
            tolerance: 1e-9,
        }
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub unit_system: UnitSystem,
    /// TOML file with `hbar`, `c`, `k_b`; required for SI units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants_file: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub spectra: SpectraParams,
    #[serde(default)]
    pub ode: OdeParams,
    #[serde(default)]
    pub invariance: InvarianceParams,
    #[serde(default)]
    pub wien: WienParams,
    #[serde(default)]
    pub kinematics: KinematicsParams,
    #[serde(default)]
    pub fluctuations: FluctuationParams,
    #[serde(default)]
    pub unruh: UnruhParams,
    #[serde(default)]
    pub gamma: GammaParams,
}

impl RunConfig {
    /// Defaults for `command`.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            unit_system: UnitSystem::Natural,
            constants_file: None,
            seed: 0,
            output_path: None,
            report_path: None,
            format: Format::Csv,
            spectra: SpectraParams::default(),
            ode: OdeParams::default(),
            invariance: InvarianceParams::default(),
            wien: WienParams::default(),
            kinematics: KinematicsParams::default(),
            fluctuations: FluctuationParams::default(),
            unruh: UnruhParams::default(),
            gamma: GammaParams::default(),
        }
    }

    /// The configuration as a TOML document accepted by `--config`.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Serialize(e.to_string()))
    }

    /// Physical constants for the configured unit system.
    pub fn constants(&self) -> Result<PhysicalConstants> {
        match (self.unit_system, &self.constants_file) {
            (UnitSystem::Natural, _) => Ok(PhysicalConstants::NATURAL),
            (UnitSystem::Si, Some(path)) => load_constants(path),
            (UnitSystem::Si, None) => Err(CliError::usage("--unit-system si needs --constants <file>")),
        }
    }

    /// Where the data file goes: the explicit path, else `$ZPF_OUT_DIR/<command>.<ext>`,
    /// else standard output (`None`).
    pub fn resolved_output(&self) -> Option<PathBuf> {
        self.output_path.clone().or_else(|| {
            std::env::var_os(OUT_DIR_ENV)
                .filter(|d| !d.is_empty())
                .map(|d| PathBuf::from(d).join(format!("{}.{}", self.command.as_str(), self.format.extension())))
        })
    }

    /// Where the run report goes: the explicit path, else next to the data file.
    pub fn resolved_report(&self) -> Option<PathBuf> {
        self.report_path
            .clone()
            .or_else(|| self.resolved_output().map(|p| p.with_extension("report.json")))
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("spectra.tolerance", self.spectra.tolerance),
            ("spectra.omega_min", self.spectra.omega_min),
            ("ode.tolerance", self.ode.tolerance),
            ("ode.omega", self.ode.omega),
            ("invariance.tolerance", self.invariance.tolerance),
            ("invariance.discrimination_min", self.invariance.discrimination_min),
            ("invariance.omega", self.invariance.omega),
            ("wien.tolerance", self.wien.tolerance),
            ("wien.scaling_tolerance", self.wien.scaling_tolerance),
            ("wien.fd_step", self.wien.fd_step),
            ("wien.omega_min", self.wien.omega_min),
            ("wien.temperature", self.wien.temperature),
            ("kinematics.tolerance", self.kinematics.tolerance),
            ("kinematics.acceleration", self.kinematics.acceleration),
            ("kinematics.omega", self.kinematics.omega),
            ("fluctuations.tolerance", self.fluctuations.tolerance),
            ("fluctuations.fd_step", self.fluctuations.fd_step),
            ("fluctuations.sigma_limit", self.fluctuations.sigma_limit),
            ("fluctuations.x_min", self.fluctuations.x_min),
            ("fluctuations.omega", self.fluctuations.omega),
            ("fluctuations.mean_energy", self.fluctuations.mean_energy),
            ("unruh.tolerance", self.unruh.tolerance),
            ("unruh.sigma_limit", self.unruh.sigma_limit),
            ("unruh.coverage", self.unruh.coverage),
            ("gamma.tolerance", self.gamma.tolerance),
            ("gamma.x_min", self.gamma.x_min),
        ];
        for (key, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::usage(format!("{key} must be finite and > 0, got {v}")));
            }
        }
        let ranges = [
            ("spectra.omega", self.spectra.omega_min, self.spectra.omega_max),
            ("wien.omega", self.wien.omega_min, self.wien.omega_max),
            ("kinematics.tau", self.kinematics.tau_min, self.kinematics.tau_max),
            ("fluctuations.x", self.fluctuations.x_min, self.fluctuations.x_max),
            ("gamma.x", self.gamma.x_min, self.gamma.x_max),
            ("unruh.omega_out", self.unruh.omega_out_min, self.unruh.omega_out_max),
        ];
        for (key, lo, hi) in ranges {
            if !(lo < hi && hi.is_finite()) {
                return Err(CliError::usage(format!("{key}_min must be below {key}_max, got [{lo}, {hi}]")));
            }
        }
        let counts = [
            ("spectra.points", self.spectra.points),
            ("invariance.points", self.invariance.points),
            ("wien.points", self.wien.points),
            ("kinematics.points", self.kinematics.points),
            ("fluctuations.points", self.fluctuations.points),
            ("fluctuations.samples", self.fluctuations.samples),
            ("gamma.points", self.gamma.points),
            ("unruh.bins", self.unruh.bins),
            ("unruh.n_realizations", self.unruh.n_realizations),
        ];
        for (key, n) in counts {
            if n < 2 {
                return Err(CliError::usage(format!("{key} must be at least 2, got {n}")));
            }
        }
        if self.ode.steps == 0 {
            return Err(CliError::usage("ode.steps must be at least 1"));
        }
        if self.unruh.coverage > 1.0 {
            return Err(CliError::usage("unruh.coverage must not exceed 1"));
        }
        if self.wien.lambdas.is_empty() || self.wien.lambdas.iter().any(|&l| l.is_nan() || l <= 0.0) {
            return Err(CliError::usage("wien.lambdas must be a non-empty list of positive numbers"));
        }
        if self.unit_system == UnitSystem::Si && self.constants_file.is_none() {
            return Err(CliError::usage("--unit-system si needs --constants <file>"));
        }
        if self.unit_system == UnitSystem::Natural && self.constants_file.is_some() {
            return Err(CliError::usage("--constants only applies with --unit-system si"));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    hbar: f64,
    c: f64,
    k_b: f64,
}

fn load_constants(path: &Path) -> Result<PhysicalConstants> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let raw: ConstantsFile =
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message())))?;
    PhysicalConstants::new(raw.hbar, raw.c, raw.k_b)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// Command-line flags. Every value is optional so that file and default
/// values show through. Grid and tolerance flags apply to the selected
/// command and are rejected elsewhere.
#[derive(Debug, Default, Parser)]
#[command(name = "zpf", version, about = "Zeropoint-field spectra, fluctuation and accelerated-observer checks")]
pub struct Flags {
    /// Command to run; may instead be given as `command` in the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub unit_system: Option<UnitSystem>,
    /// TOML file with `hbar`, `c`, `k_b` (SI values).
    #[arg(long)]
    pub constants: Option<PathBuf>,
    /// Output file; defaults to $ZPF_OUT_DIR/<command>.<ext> or standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run report (JSON); defaults to the output path with `.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Primary tolerance of the selected command.
    #[arg(long, help_heading = "Grids and tolerances")]
    pub tolerance: Option<f64>,
    /// Number of grid points.
    #[arg(long, help_heading = "Grids and tolerances")]
    pub points: Option<usize>,
    /// Angular frequency (ode, invariance, kinematics, fluctuations).
    #[arg(long, help_heading = "Grids and tolerances")]
    pub omega: Option<f64>,
    /// Temperature (spectra, wien).
    #[arg(long, help_heading = "Grids and tolerances")]
    pub temperature: Option<f64>,
    #[arg(long, help_heading = "Grids and tolerances")]
    pub omega_min: Option<f64>,
    #[arg(long, help_heading = "Grids and tolerances")]
    pub omega_max: Option<f64>,
    #[arg(long, help_heading = "Grids and tolerances")]
    pub x_min: Option<f64>,
    #[arg(long, help_heading = "Grids and tolerances")]
    pub x_max: Option<f64>,

    #[arg(long, value_enum, help_heading = "spectra")]
    pub kind: Option<CurveKind>,

    #[arg(long, help_heading = "ode")]
    pub t_start: Option<f64>,
    #[arg(long, help_heading = "ode")]
    pub t_end: Option<f64>,
    #[arg(long, help_heading = "ode")]
    pub steps: Option<usize>,
    #[arg(long, help_heading = "ode")]
    pub rho_start: Option<f64>,

    #[arg(long, help_heading = "invariance")]
    pub alpha: Option<f64>,
    #[arg(long, help_heading = "invariance")]
    pub beta_max: Option<f64>,

    #[arg(long, help_heading = "kinematics")]
    pub tau_min: Option<f64>,
    #[arg(long, help_heading = "kinematics")]
    pub tau_max: Option<f64>,

    /// Proper acceleration (kinematics, unruh-*).
    #[arg(long = "a", help_heading = "unruh")]
    pub acceleration: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub t_obs: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub dtau: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub delta_x: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub omega_out_min: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub omega_out_max: Option<f64>,
    #[arg(long, help_heading = "unruh")]
    pub bins: Option<usize>,
    #[arg(long, help_heading = "unruh")]
    pub mode_floor: Option<f64>,
    #[arg(long, value_enum, help_heading = "unruh")]
    pub window: Option<WindowArg>,
    /// Monte Carlo realizations (unruh-mc) or energy samples (fluctuations).
    #[arg(long, help_heading = "unruh")]
    pub n: Option<usize>,
}

/// Copies a flag value into the field it maps to for this command, or fails
/// if the flag has no meaning here.
fn route<T>(flag: &str, command: Command, value: Option<T>, target: Option<&mut T>) -> Result<()> {
    match (value, target) {
        (None, _) => Ok(()),
        (Some(v), Some(t)) => {
            *t = v;
            Ok(())
        }
        (Some(_), None) => Err(CliError::usage(format!("{flag} does not apply to `{}`", command.as_str()))),
    }
}

impl Flags {
    fn apply(self, cfg: &mut RunConfig) -> Result<()> {
        use Command::*;
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.unit_system {
            cfg.unit_system = v;
        }
        if let Some(v) = self.constants {
            cfg.constants_file = Some(v);
        }
        if let Some(v) = self.out {
            cfg.output_path = Some(v);
        }
        if let Some(v) = self.report {
            cfg.report_path = Some(v);
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }

        let c = cfg.command;
        route("--tolerance", c, self.tolerance, match c {
            Spectra => Some(&mut cfg.spectra.tolerance),
            Ode => Some(&mut cfg.ode.tolerance),
            Invariance => Some(&mut cfg.invariance.tolerance),
            Wien => Some(&mut cfg.wien.tolerance),
            Kinematics => Some(&mut cfg.kinematics.tolerance),
            Fluctuations => Some(&mut cfg.fluctuations.tolerance),
            UnruhExpected | UnruhMc => Some(&mut cfg.unruh.tolerance),
            GammaCheck => Some(&mut cfg.gamma.tolerance),
            AllChecks => None,
        })?;
        route("--points", c, self.points, match c {
            Spectra => Some(&mut cfg.spectra.points),
            Invariance => Some(&mut cfg.invariance.points),
            Wien => Some(&mut cfg.wien.points),
            Kinematics => Some(&mut cfg.kinematics.points),
            Fluctuations => Some(&mut cfg.fluctuations.points),
            GammaCheck => Some(&mut cfg.gamma.points),
            _ => None,
        })?;
        route("--omega", c, self.omega, match c {
            Ode => Some(&mut cfg.ode.omega),
            Invariance => Some(&mut cfg.invariance.omega),
            Kinematics => Some(&mut cfg.kinematics.omega),
            Fluctuations => Some(&mut cfg.fluctuations.omega),
            _ => None,
        })?;
        route("--temperature", c, self.temperature, match c {
            Spectra => Some(&mut cfg.spectra.temperature),
            Wien => Some(&mut cfg.wien.temperature),
            _ => None,
        })?;
        route("--omega-min", c, self.omega_min, match c {
            Spectra => Some(&mut cfg.spectra.omega_min),
            Wien => Some(&mut cfg.wien.omega_min),
            _ => None,
        })?;
        route("--omega-max", c, self.omega_max, match c {
            Spectra => Some(&mut cfg.spectra.omega_max),
            Wien => Some(&mut cfg.wien.omega_max),
            _ => None,
        })?;
        route("--x-min", c, self.x_min, match c {
            Fluctuations => Some(&mut cfg.fluctuations.x_min),
            GammaCheck => Some(&mut cfg.gamma.x_min),
            _ => None,
        })?;
        route("--x-max", c, self.x_max, match c {
            Fluctuations => Some(&mut cfg.fluctuations.x_max),
            GammaCheck => Some(&mut cfg.gamma.x_max),
            _ => None,
        })?;
        route("--kind", c, self.kind, (c == Spectra).then_some(&mut cfg.spectra.kind))?;
        route("--t-start", c, self.t_start, (c == Ode).then_some(&mut cfg.ode.t_start))?;
        route("--t-end", c, self.t_end, (c == Ode).then_some(&mut cfg.ode.t_end))?;
        route("--steps", c, self.steps, (c == Ode).then_some(&mut cfg.ode.steps))?;
        route("--rho-start", c, self.rho_start.map(Some), (c == Ode).then_some(&mut cfg.ode.rho_start))?;
        route("--alpha", c, self.alpha, (c == Invariance).then_some(&mut cfg.invariance.alpha))?;
        route("--beta-max", c, self.beta_max, (c == Invariance).then_some(&mut cfg.invariance.beta_max))?;
        route("--tau-min", c, self.tau_min, (c == Kinematics).then_some(&mut cfg.kinematics.tau_min))?;
        route("--tau-max", c, self.tau_max, (c == Kinematics).then_some(&mut cfg.kinematics.tau_max))?;
        route("--a", c, self.acceleration, match c {
            Kinematics => Some(&mut cfg.kinematics.acceleration),
            UnruhExpected | UnruhMc => Some(&mut cfg.unruh.acceleration),
            _ => None,
        })?;
        route("--n", c, self.n, match c {
            UnruhMc => Some(&mut cfg.unruh.n_realizations),
            Fluctuations => Some(&mut cfg.fluctuations.samples),
            _ => None,
        })?;
        let unruh = matches!(c, UnruhExpected | UnruhMc);
        let u = &mut cfg.unruh;
        route("--t-obs", c, self.t_obs, unruh.then_some(&mut u.t_obs))?;
        route("--dtau", c, self.dtau, unruh.then_some(&mut u.dtau))?;
        route("--delta-x", c, self.delta_x, unruh.then_some(&mut u.delta_x))?;
        route("--omega-out-min", c, self.omega_out_min, unruh.then_some(&mut u.omega_out_min))?;
        route("--omega-out-max", c, self.omega_out_max, unruh.then_some(&mut u.omega_out_max))?;
        route("--bins", c, self.bins, unruh.then_some(&mut u.bins))?;
        route("--mode-floor", c, self.mode_floor, unruh.then_some(&mut u.mode_floor))?;
        route("--window", c, self.window, unruh.then_some(&mut u.window))?;
        Ok(())
    }
}

/// Parses `argv` (program name first) into a validated configuration.
/// Precedence: flags, then the `--config` file, then defaults.
pub fn parse_config<I, S>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let flags = Flags::try_parse_from(argv).map_err(|e| CliError::usage(e.to_string()))?;
    resolve(flags)
}

/// Merges parsed flags with the config file they name and the defaults.
pub fn resolve(mut flags: Flags) -> Result<RunConfig> {
    let mut table = match flags.config.take() {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
            text.parse::<toml::Table>()
                .map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message())))?
        }
        None => toml::Table::new(),
    };
    if let Some(command) = flags.command.take() {
        table.insert("command".into(), toml::Value::String(command.as_str().into()));
    }
    if !table.contains_key("command") {
        return Err(CliError::usage("no command given (pass one or set `command` in the config file)"));
    }
    let mut cfg: RunConfig = table
        .try_into()
        .map_err(|e: toml::de::Error| CliError::usage(format!("config: {}", e.message())))?;
    flags.apply(&mut cfg)?;
    cfg.validate()?;
    Ok(cfg)
}
