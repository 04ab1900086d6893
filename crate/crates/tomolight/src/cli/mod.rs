//! Command-line front end: every computation as a reproducible run that
//! writes one CSV and a JSON sidecar echoing the resolved configuration.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 numerical failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::beamsplitter::{bs_transform, log_negativity};
use crate::decoherence::{
    amp_decay_density, amp_decay_tomogram, phase_damp_density, two_mode_amp_decay,
    two_mode_phase_damp, two_mode_phase_damp_state, DecoherenceModel, DecoherenceParams,
};
use crate::entropy::{renyi_sum_series_with, RenyiOrderPair};
use crate::error::{invalid, Error, Result};
use crate::fock::{symmetric_grid, FockVector, TruncationPolicy, C64};
use crate::kerr::{
    evolve_kerr, evolve_superposition, moment_a_power, moment_x_power, FractionalRevivalSpec,
    KerrParams,
};
use crate::output::{
    phase_plane_table, series_table, tomogram_table, two_mode_table, write_atomic, CsvTable,
};
use crate::phase_space::{husimi_q, wigner_superposition, PhasePlaneGrid};
use crate::states::{
    cat_superposition_form, density_from_pure, make_cat_at, CatSpec, CoherentSuperposition,
};
use crate::tomography::{
    conditional_tomogram, tomogram_density, tomogram_pure, tomogram_two_mode_slice, QuadratureGrid,
};

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "TOMOLIGHT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "tomolight",
    version,
    about = "Optical tomograms, Kerr revivals, decoherence and entanglement"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Single-mode tomogram over the θ × X grid.
    Tomogram(RunArgs),
    /// Two-mode tomogram slice at fixed (θ1, θ2) after the beam splitter.
    Tomogram2(RunArgs),
    /// Wigner function of the (revival-time) coherent superposition.
    Wigner(RunArgs),
    /// Husimi Q function of the Kerr-evolved state.
    Husimi(RunArgs),
    /// Quadrature and ladder moments over one revival period.
    EvolveMoments(RunArgs),
    /// Rényi entropy sum over one revival period.
    Renyi(RunArgs),
    /// Beam-splitter entanglement over time or under decoherence.
    Entangle(RunArgs),
    /// Tomogram of the decohered single-mode state.
    Decohere(RunArgs),
    /// Tomogram of mode c conditioned on a mode-d quadrature outcome.
    Conditional(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Amplitude,
    Phase,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Cat order l (1 = coherent state).
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Cat residue h in 0..l.
    #[arg(long, default_value_t = 0)]
    h: usize,
    /// Mean photon number |α|².
    #[arg(long, default_value_t = 0.0)]
    nbar: f64,
    /// Phase δ of α.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    /// Kerr nonlinearity χ.
    #[arg(long, default_value_t = 1.0)]
    chi: f64,
    /// Evolution time as a fraction of the revival time.
    #[arg(long, conflicts_with = "k")]
    t: Option<f64>,
    /// Numerator j of the revival time j T_rev / k.
    #[arg(long, requires = "k")]
    j: Option<u64>,
    /// Denominator k of the revival time j T_rev / k.
    #[arg(long)]
    k: Option<u64>,
    /// Decoherence channel.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Scaled decoherence time γτ or κτ.
    #[arg(long)]
    scaled: Option<f64>,
    /// Number of θ samples on [0, 2π] (default 201).
    #[arg(long)]
    n_theta: Option<usize>,
    /// Quadrature range half-width (default 12).
    #[arg(long)]
    x_max: Option<f64>,
    /// Number of X samples, odd (default 1201; 241 for tomogram2).
    #[arg(long)]
    n_x: Option<usize>,
    /// Phase-plane half-width in x and p (default 12).
    #[arg(long)]
    phase_half_width: Option<f64>,
    /// Phase-plane points per axis (default 481).
    #[arg(long)]
    phase_points: Option<usize>,
    /// Mode-c quadrature angle for tomogram2.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta1: f64,
    /// Mode-d quadrature angle (tomogram2, conditional).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta2: f64,
    /// Measured mode-d quadrature value.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x2: f64,
    /// Number of time (or scaled-time) samples.
    #[arg(long)]
    samples: Option<usize>,
    /// Position order ζ of the Rényi pair; η follows from 1/ζ + 1/η = 2.
    #[arg(long)]
    zeta: Option<f64>,
    /// Fock cutoff; chosen from --epsilon when absent.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Per-mode Fock cutoff for mixed two-mode states.
    #[arg(long)]
    mode_cutoff: Option<usize>,
    /// Poisson-tail truncation tolerance.
    #[arg(long, default_value_t = 1e-12)]
    epsilon: f64,
    /// Output CSV path; the sidecar goes next to it with a .json extension.
    #[arg(long)]
    out: PathBuf,
    /// Reserved; no computation is stochastic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Tomogram,
    Tomogram2,
    Wigner,
    Husimi,
    EvolveMoments,
    Renyi,
    Entangle,
    Decohere,
    Conditional,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Tomogram => "tomogram",
            Self::Tomogram2 => "tomogram2",
            Self::Wigner => "wigner",
            Self::Husimi => "husimi",
            Self::EvolveMoments => "evolve-moments",
            Self::Renyi => "renyi",
            Self::Entangle => "entangle",
            Self::Decohere => "decohere",
            Self::Conditional => "conditional",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateConfig {
    pub l: usize,
    pub h: usize,
    pub nbar: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub chi: f64,
    pub t_over_trev: f64,
    /// (j, k) when the time was given as a revival fraction.
    pub revival: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub n_theta: usize,
    pub x_max: f64,
    pub n_x: usize,
    pub phase_half_width: f64,
    pub phase_points: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub x2: f64,
}

/// Fully resolved run description; echoed into the JSON sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub state: StateConfig,
    pub dynamics: DynamicsConfig,
    pub decoherence: Option<DecoherenceParams>,
    pub grid: GridConfig,
    pub samples: usize,
    pub zeta: f64,
    pub cutoff: usize,
    pub mode_cutoff: usize,
    pub epsilon: f64,
    pub output: PathBuf,
    pub seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    config: RunConfig,
    version: String,
}

impl RunConfig {
    /// Parses argv (including the program name) into a resolved config.
    pub fn from_argv<I, T>(argv: I) -> std::result::Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv).map_err(CliError::Usage)?;
        resolve(cli.command).map_err(CliError::Run)
    }

    /// Reads the `config` field of a sidecar written by [`run`].
    pub fn from_sidecar(json: &str) -> serde_json::Result<Self> {
        Ok(serde_json::from_str::<Sidecar>(json)?.config)
    }

    pub fn to_sidecar(&self) -> String {
        let s = Sidecar {
            config: self.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        serde_json::to_string_pretty(&s).expect("config serialises") + "\n"
    }

    /// Argument list that parses back to this config.
    pub fn to_argv(&self) -> Vec<String> {
        let mut a = vec!["tomolight".to_string(), self.command.name().to_string()];
        let mut flag = |name: &str, value: String| {
            a.push(format!("--{name}"));
            a.push(value);
        };
        flag("l", self.state.l.to_string());
        flag("h", self.state.h.to_string());
        flag("nbar", self.state.nbar.to_string());
        flag("delta", self.state.delta.to_string());
        flag("chi", self.dynamics.chi.to_string());
        match self.dynamics.revival {
            Some((j, k)) => {
                flag("j", j.to_string());
                flag("k", k.to_string());
            }
            None => flag("t", self.dynamics.t_over_trev.to_string()),
        }
        if let Some(p) = self.decoherence {
            let m = match p.model() {
                DecoherenceModel::AmplitudeDecay => "amplitude",
                DecoherenceModel::PhaseDamping => "phase",
            };
            flag("model", m.to_string());
            flag("scaled", p.scaled().to_string());
        }
        let g = &self.grid;
        flag("n-theta", g.n_theta.to_string());
        flag("x-max", g.x_max.to_string());
        flag("n-x", g.n_x.to_string());
        flag("phase-half-width", g.phase_half_width.to_string());
        flag("phase-points", g.phase_points.to_string());
        flag("theta1", g.theta1.to_string());
        flag("theta2", g.theta2.to_string());
        flag("x2", g.x2.to_string());
        flag("samples", self.samples.to_string());
        flag("zeta", self.zeta.to_string());
        flag("cutoff", self.cutoff.to_string());
        flag("mode-cutoff", self.mode_cutoff.to_string());
        flag("epsilon", self.epsilon.to_string());
        flag("out", self.output.display().to_string());
        if let Some(s) = self.seed {
            flag("seed", s.to_string());
        }
        a
    }

    pub fn sidecar_path(&self) -> PathBuf {
        sidecar_path(&self.output)
    }

    fn cat(&self) -> Result<CatSpec> {
        let s = &self.state;
        CatSpec::new(s.l, s.h, C64::from_polar(s.nbar.sqrt(), s.delta))
    }

    fn kerr(&self) -> Result<KerrParams> {
        KerrParams::at_fraction(self.dynamics.chi, self.dynamics.t_over_trev)
    }

    fn initial(&self) -> Result<FockVector> {
        make_cat_at(self.cat()?, self.cutoff)
    }

    fn evolved(&self) -> Result<FockVector> {
        Ok(evolve_kerr(&self.initial()?, &self.kerr()?))
    }

    /// Coherent-superposition form, available at t = 0 and at revival fractions.
    fn evolved_superposition(&self) -> Result<Option<CoherentSuperposition>> {
        let s = cat_superposition_form(self.cat()?)?;
        match self.dynamics.revival {
            Some((j, k)) => Ok(Some(evolve_superposition(
                &s,
                &FractionalRevivalSpec::new(j, k)?,
            ))),
            None if self.dynamics.t_over_trev == 0.0 => Ok(Some(s)),
            None => Ok(None),
        }
    }

    fn quadrature_grid(&self) -> Result<QuadratureGrid> {
        QuadratureGrid::new(self.grid.n_theta, self.grid.x_max, self.grid.n_x)
    }

    fn phase_grid(&self) -> Result<PhasePlaneGrid> {
        PhasePlaneGrid::new(self.grid.phase_half_width, self.grid.phase_points)
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

/// Failure of a CLI invocation.
#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Run(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(e) if !e.use_stderr() => 0,
            Self::Usage(_) => 2,
            Self::Run(e) if e.is_config() => 2,
            Self::Run(_) => 3,
            Self::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(e) => write!(f, "{e}"),
            Self::Run(e) => write!(f, "error: {e}"),
            Self::Io(e) => write!(f, "error: {e}"),
        }
    }
}

fn resolve(cmd: Cmd) -> Result<RunConfig> {
    let (kind, a) = match cmd {
        Cmd::Tomogram(a) => (CommandKind::Tomogram, a),
        Cmd::Tomogram2(a) => (CommandKind::Tomogram2, a),
        Cmd::Wigner(a) => (CommandKind::Wigner, a),
        Cmd::Husimi(a) => (CommandKind::Husimi, a),
        Cmd::EvolveMoments(a) => (CommandKind::EvolveMoments, a),
        Cmd::Renyi(a) => (CommandKind::Renyi, a),
        Cmd::Entangle(a) => (CommandKind::Entangle, a),
        Cmd::Decohere(a) => (CommandKind::Decohere, a),
        Cmd::Conditional(a) => (CommandKind::Conditional, a),
    };
    if !(a.nbar >= 0.0 && a.nbar.is_finite()) {
        return Err(invalid(format!(
            "--nbar {} must be finite and >= 0",
            a.nbar
        )));
    }
    if !a.delta.is_finite() {
        return Err(invalid("--delta must be finite"));
    }
    let (t_over_trev, revival) = match (a.t, a.k) {
        (_, Some(k)) => {
            let j = a.j.unwrap_or(1);
            FractionalRevivalSpec::new(j, k)?;
            (j as f64 / k as f64, Some((j, k)))
        }
        (Some(t), None) => (t, None),
        (None, None) => (0.0, None),
    };
    if !(0.0..=1.0).contains(&t_over_trev) {
        return Err(invalid(format!(
            "time fraction {t_over_trev} outside [0, 1]"
        )));
    }
    let decoherence = match (a.model, a.scaled) {
        (Some(m), s) => {
            let model = match m {
                ModelArg::Amplitude => DecoherenceModel::AmplitudeDecay,
                ModelArg::Phase => DecoherenceModel::PhaseDamping,
            };
            Some(DecoherenceParams::new(model, s.unwrap_or(0.0))?)
        }
        (None, Some(_)) => return Err(invalid("--scaled needs --model")),
        (None, None) => None,
    };
    if kind == CommandKind::Decohere && decoherence.is_none() {
        return Err(invalid("decohere needs --model"));
    }
    let policy = TruncationPolicy::new(a.epsilon, TruncationPolicy::default().hard_max())?;
    let cutoff = match a.cutoff {
        Some(c) => c,
        None => policy.cutoff_for(a.nbar)?,
    };
    let mode_cutoff = match a.mode_cutoff {
        Some(c) => c,
        None => policy.cutoff_for(0.5 * a.nbar)?,
    };
    let default_samples = match (kind, decoherence) {
        (CommandKind::Entangle, Some(_)) => 16,
        _ => 400,
    };
    let samples = a.samples.unwrap_or(default_samples);
    if samples < 2 {
        return Err(invalid("--samples must be at least 2"));
    }
    let zeta = a.zeta.unwrap_or(2.0 / 3.0);
    RenyiOrderPair::conjugate_of(zeta)?;
    let default_n_x = if kind == CommandKind::Tomogram2 {
        241
    } else {
        1201
    };
    let grid = GridConfig {
        n_theta: a.n_theta.unwrap_or(201),
        x_max: a.x_max.unwrap_or(12.0),
        n_x: a.n_x.unwrap_or(default_n_x),
        phase_half_width: a.phase_half_width.unwrap_or(12.0),
        phase_points: a.phase_points.unwrap_or(481),
        theta1: a.theta1,
        theta2: a.theta2,
        x2: a.x2,
    };
    let config = RunConfig {
        command: kind,
        state: StateConfig {
            l: a.l,
            h: a.h,
            nbar: a.nbar,
            delta: a.delta,
        },
        dynamics: DynamicsConfig {
            chi: a.chi,
            t_over_trev,
            revival,
        },
        decoherence,
        grid,
        samples,
        zeta,
        cutoff,
        mode_cutoff,
        epsilon: a.epsilon,
        output: a.out,
        seed: a.seed,
    };
    config.cat()?;
    config.kerr()?;
    config.quadrature_grid()?;
    config.phase_grid()?;
    Ok(config)
}

fn fractions(samples: usize) -> Vec<f64> {
    (0..samples).map(|i| i as f64 / samples as f64).collect()
}

fn decohered_density(
    cfg: &RunConfig,
    p: &DecoherenceParams,
) -> Result<crate::states::DensityMatrix> {
    let rho = density_from_pure(&cfg.evolved()?);
    match p.model() {
        DecoherenceModel::AmplitudeDecay => amp_decay_density(&rho, p),
        DecoherenceModel::PhaseDamping => phase_damp_density(&rho, p),
    }
}

fn two_mode_decohered(
    cfg: &RunConfig,
    p: &DecoherenceParams,
) -> Result<crate::beamsplitter::TwoModeState> {
    let at_rest = cfg.dynamics.t_over_trev == 0.0;
    match p.model() {
        DecoherenceModel::AmplitudeDecay if at_rest => {
            two_mode_amp_decay(cfg.cat()?, p, cfg.mode_cutoff)
        }
        DecoherenceModel::AmplitudeDecay => Err(invalid(
            "two-mode amplitude decay is available for the undelayed cat only (t = 0)",
        )),
        DecoherenceModel::PhaseDamping if at_rest => {
            two_mode_phase_damp(cfg.cat()?, p, cfg.mode_cutoff)
        }
        DecoherenceModel::PhaseDamping => {
            let v = cfg.evolved()?.with_cutoff(cfg.mode_cutoff);
            two_mode_phase_damp_state(&bs_transform(&v), p)
        }
    }
}

/// Computes the table a config describes without touching the file system.
pub fn compute(cfg: &RunConfig) -> Result<CsvTable> {
    match cfg.command {
        CommandKind::Tomogram | CommandKind::Decohere => {
            let grid = cfg.quadrature_grid()?;
            let tomo = match cfg.decoherence {
                None => tomogram_pure(&cfg.evolved()?, &grid),
                Some(p) => match (p.model(), cfg.evolved_superposition()?) {
                    (DecoherenceModel::AmplitudeDecay, Some(s)) => {
                        amp_decay_tomogram(&s, &p, &grid)?
                    }
                    _ => tomogram_density(&decohered_density(cfg, &p)?, &grid)?,
                },
            };
            Ok(tomogram_table(&tomo))
        }
        CommandKind::Tomogram2 => {
            let state = match cfg.decoherence {
                None => bs_transform(&cfg.evolved()?),
                Some(p) => two_mode_decohered(cfg, &p)?,
            };
            let xs = symmetric_grid(cfg.grid.x_max, cfg.grid.n_x);
            let slice = tomogram_two_mode_slice(&state, cfg.grid.theta1, cfg.grid.theta2, &xs, &xs);
            Ok(two_mode_table(&[slice]))
        }
        CommandKind::Wigner => {
            let s = cfg.evolved_superposition()?.ok_or_else(|| {
                invalid("wigner needs t = 0 or a revival fraction given by --j/--k")
            })?;
            Ok(phase_plane_table(&wigner_superposition(
                &s,
                &cfg.phase_grid()?,
            )))
        }
        CommandKind::Husimi => Ok(phase_plane_table(&husimi_q(
            &cfg.evolved()?,
            &cfg.phase_grid()?,
        ))),
        CommandKind::EvolveMoments => {
            let v0 = cfg.initial()?;
            let mut table = CsvTable::new(&[
                "t_over_Trev",
                "x",
                "x2",
                "x3",
                "a2_re",
                "a2_im",
                "a3_re",
                "a3_im",
                "n",
            ]);
            for f in fractions(cfg.samples) {
                let v = evolve_kerr(&v0, &KerrParams::at_fraction(cfg.dynamics.chi, f)?);
                let a2 = moment_a_power(&v, 2);
                let a3 = moment_a_power(&v, 3);
                table.push(vec![
                    f,
                    moment_x_power(&v, 1)?,
                    moment_x_power(&v, 2)?,
                    moment_x_power(&v, 3)?,
                    a2.re,
                    a2.im,
                    a3.re,
                    a3.im,
                    v.mean_photon_number(),
                ]);
            }
            Ok(table)
        }
        CommandKind::Renyi => {
            let f = fractions(cfg.samples);
            let params = f
                .iter()
                .map(|&t| KerrParams::at_fraction(cfg.dynamics.chi, t))
                .collect::<Result<Vec<_>>>()?;
            let orders = RenyiOrderPair::conjugate_of(cfg.zeta)?;
            let values = renyi_sum_series_with(&cfg.initial()?, &params, orders)?;
            Ok(series_table("t_over_Trev", "value", &f, &values))
        }
        CommandKind::Entangle => match cfg.decoherence {
            None => {
                let f = fractions(cfg.samples);
                let v0 = cfg.initial()?;
                let values = f
                    .iter()
                    .map(|&t| {
                        crate::beamsplitter::entanglement_at(
                            &v0,
                            &KerrParams::at_fraction(cfg.dynamics.chi, t)?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(series_table("t_over_Trev", "E", &f, &values))
            }
            Some(p) => {
                let n = cfg.samples;
                let taus: Vec<f64> = (0..n)
                    .map(|i| p.scaled() * i as f64 / (n - 1) as f64)
                    .collect();
                let values = taus
                    .iter()
                    .map(|&s| {
                        let q = DecoherenceParams::new(p.model(), s)?;
                        Ok(log_negativity(&two_mode_decohered(cfg, &q)?)?.value)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(series_table("tau_scaled", "EN", &taus, &values))
            }
        },
        CommandKind::Conditional => {
            let state = bs_transform(&cfg.evolved()?);
            let tomo = conditional_tomogram(
                &state,
                cfg.grid.x2,
                cfg.grid.theta2,
                &cfg.quadrature_grid()?,
            )?;
            Ok(tomogram_table(&tomo))
        }
    }
}

fn thread_count() -> std::result::Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Run(invalid(format!(
                "{THREADS_ENV}={v} is not a positive integer"
            )))),
        },
    }
}

/// Resolves, computes and writes the CSV plus sidecar.
pub fn execute(cfg: &RunConfig) -> std::result::Result<(), CliError> {
    let table = match thread_count()? {
        None => compute(cfg),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Run(invalid(e.to_string())))?
            .install(|| compute(cfg)),
    }
    .map_err(CliError::Run)?;
    if cfg.output.extension().is_some_and(|e| e == "json") {
        return Err(CliError::Run(invalid("--out must not end in .json")));
    }
    write_atomic(&cfg.output, &table.to_bytes()).map_err(CliError::Io)?;
    write_atomic(&cfg.sidecar_path(), cfg.to_sidecar().as_bytes()).map_err(CliError::Io)?;
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = RunConfig::from_argv(argv).and_then(|cfg| execute(&cfg));
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            CliError::Usage(e).exit_code()
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
