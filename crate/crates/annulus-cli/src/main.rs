//! Batch front-end for the annulus laboratory.
//!
//! Every subcommand resolves a band configuration from the command line,
//! runs one pipeline of the library, and emits a single deterministic
//! artifact: JSON with sorted keys or CSV with a header row and 17
//! significant digits. Exit codes separate "no such configuration" (2),
//! numeric/geometry failures (3), bad parameters (4), failed verification
//! (5), and I/O problems (6).

use annulus_lab::dtn::{dtn_matrix, dtn_spectrum};
use annulus_lab::freeboundary::solve_for_radius;
use annulus_lab::mesh::build_mesh;
use annulus_lab::nodal::{analyze, ModeShape, NodalReport, ScalarField};
use annulus_lab::steklov::{
    antipodal_parity, cluster_values, mode_solution, natural_frequency, spectrum, ModeCoeffs,
    Parity, Spectrum,
};
use annulus_lab::{
    AnnulusFamilyParams, Error as LabError, FreeBoundaryConfig, SpaceFormSign, ToleranceConfig,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

/// Relative tolerance for grouping the discrete oracle eigenvalues into
/// multiplicity clusters; far looser than the shooting clusters because the
/// finite-difference values carry truncation error.
const ORACLE_CLUSTER_REL: f64 = 2e-2;

#[derive(Parser)]
#[command(
    name = "annulus-lab",
    version,
    about = "Rotational free-boundary minimal annuli in curved space forms: \
             solves, boundary spectra, oracle cross-checks, nodal reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_epsilon(s: &str) -> Result<SpaceFormSign, String> {
    match s.trim() {
        "+1" | "1" => Ok(SpaceFormSign::Spherical),
        "-1" => Ok(SpaceFormSign::Hyperbolic),
        other => Err(format!("curvature sign must be +1 or -1, got '{other}'")),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid must look like 128x128, got '{s}'"))?;
    let n_s = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let n_theta = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((n_s, n_theta))
}

/// Flags that pin down one band: the curvature sign plus exactly one of the
/// family parameter or the target boundary-sphere radius.
#[derive(Args)]
struct FamilyArgs {
    /// Curvature sign of the ambient space form: +1 (hemisphere) or -1
    /// (hyperbolic space)
    #[arg(long, value_parser = parse_epsilon, allow_hyphen_values = true)]
    epsilon: SpaceFormSign,

    /// Family parameter of the band
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,

    /// Boundary-sphere radius to invert for
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
}

impl FamilyArgs {
    fn resolve(&self, tol: &ToleranceConfig) -> Result<FreeBoundaryConfig, CliError> {
        let cfg = match (self.a, self.radius) {
            (Some(a), None) => {
                let params = AnnulusFamilyParams::new(self.epsilon, a)?;
                FreeBoundaryConfig::solve(params, tol)?
            }
            (None, Some(r)) => solve_for_radius(self.epsilon, r, tol)?,
            _ => {
                return Err(LabError::Config(
                    "exactly one of --a / --radius must be given".into(),
                )
                .into())
            }
        };
        Ok(cfg)
    }
}

/// Overrides for the numeric tolerances; unset flags keep the defaults.
#[derive(Args)]
struct TolArgs {
    /// Absolute quadrature tolerance
    #[arg(long)]
    quad_tol: Option<f64>,
    /// Relative tolerance of the radial integrations
    #[arg(long)]
    ode_tol: Option<f64>,
    /// Root-bracketing tolerance of the width solve
    #[arg(long)]
    root_tol: Option<f64>,
    /// Symmetric eigensolver off-diagonal tolerance
    #[arg(long)]
    eig_tol: Option<f64>,
    /// Relative tolerance for grouping eigenvalues into clusters
    #[arg(long)]
    cluster_tol: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Result<ToleranceConfig, CliError> {
        let mut tol = ToleranceConfig::default();
        if let Some(v) = self.quad_tol {
            tol.quad_abs_tol = v;
        }
        if let Some(v) = self.ode_tol {
            tol.ode_rel_tol = v;
        }
        if let Some(v) = self.root_tol {
            tol.root_tol = v;
        }
        if let Some(v) = self.eig_tol {
            tol.eig_tol = v;
        }
        if let Some(v) = self.cluster_tol {
            tol.cluster_rel_tol = v;
        }
        tol.validate()?;
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the certified free-boundary width; emit the configuration
    /// with its residuals as JSON
    Solve {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive a configuration and check every certificate; exit 5 when
    /// any check fails (the report is still emitted)
    Verify {
        /// Stored configuration JSON, as produced by `solve`
        #[arg(long, conflicts_with_all = ["epsilon", "a", "radius"])]
        config: Option<PathBuf>,
        #[arg(long, value_parser = parse_epsilon, allow_hyphen_values = true, required_unless_present = "config")]
        epsilon: Option<SpaceFormSign>,
        /// Family parameter of the band
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// Boundary-sphere radius to invert for
        #[arg(long, allow_negative_numbers = true)]
        radius: Option<f64>,
        /// Replace the stored half-width before verification
        #[arg(long, allow_negative_numbers = true)]
        s0: Option<f64>,
        #[command(flatten)]
        tol: TolArgs,
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary spectrum of the frequency-shifted problem as CSV
    Spectrum {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Highest circle-mode number included
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent finite-difference eigenvalues of the boundary map as CSV
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Meridian grid size
        #[arg(long, default_value_t = 128)]
        ns: usize,
        /// Circle grid size (must be even)
        #[arg(long, default_value_t = 128)]
        ntheta: usize,
        /// How many eigenvalues to emit
        #[arg(long, default_value_t = 16)]
        count: usize,
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nodal-domain report of one boundary eigenfield as JSON
    Nodal {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Which eigenfield, indexing the flattened spectrum (circle modes
        /// contribute a cosine field then a sine field)
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Highest circle-mode number in the flattened listing
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        /// Sample grid, e.g. 129x128
        #[arg(long, value_parser = parse_grid, default_value = "129x128")]
        grid: (usize, usize),
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangulated immersion of the band as JSON
    ExportMesh {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        tol: TolArgs,
        /// Sample grid, e.g. 64x128
        #[arg(long, value_parser = parse_grid, default_value = "64x128")]
        grid: (usize, usize),
        /// Write the artifact here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Lab(LabError),
    Io(std::io::Error),
    Serialize(serde_json::Error),
    VerificationFailed,
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        CliError::Lab(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lab(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o failure: {e}"),
            CliError::Serialize(e) => write!(f, "serialization failure: {e}"),
            CliError::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lab(e) => match e {
                LabError::NoFreeBoundary(_) | LabError::UnachievableRadius(_) => 2,
                LabError::Numeric(_)
                | LabError::Geometry(_)
                | LabError::Domain(_)
                | LabError::InvalidPoint(_)
                | LabError::DegenerateField(_) => 3,
                LabError::ParamRange(_) | LabError::Config(_) => 4,
            },
            CliError::Io(_) | CliError::Serialize(_) => 6,
            CliError::VerificationFailed => 5,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { family, tol, out } => {
            let cfg = family.resolve(&tol.build()?)?;
            emit(&out, &sorted_json(&cfg)?)
        }
        Command::Verify {
            config,
            epsilon,
            a,
            radius,
            s0,
            tol,
            out,
        } => cmd_verify(config, epsilon, a, radius, s0, &tol, &out),
        Command::Spectrum {
            family,
            tol,
            m_max,
            out,
        } => {
            let tol = tol.build()?;
            let cfg = family.resolve(&tol)?;
            let band = cfg.build_family()?;
            let alpha = natural_frequency(cfg.params.eps());
            let sp = spectrum(&band, cfg.s0, alpha, m_max, &tol)?;
            emit(&out, &spectrum_csv(&sp))
        }
        Command::Oracle {
            family,
            tol,
            ns,
            ntheta,
            count,
            out,
        } => {
            let tol = tol.build()?;
            let cfg = family.resolve(&tol)?;
            let band = cfg.build_family()?;
            let alpha = natural_frequency(cfg.params.eps());
            let matrix = dtn_matrix(&band, cfg.s0, alpha, ns, ntheta)?;
            let eigs = dtn_spectrum(&matrix)?;
            emit(&out, &oracle_csv(&eigs, count))
        }
        Command::Nodal {
            family,
            tol,
            index,
            m_max,
            grid,
            out,
        } => cmd_nodal(&family, &tol, index, m_max, grid, &out),
        Command::ExportMesh {
            family,
            tol,
            grid,
            out,
        } => {
            let cfg = family.resolve(&tol.build()?)?;
            let band = cfg.build_family()?;
            let mesh = build_mesh(&band, cfg.s0, grid.0, grid.1)?;
            emit(&out, &sorted_json(&mesh)?)
        }
    }
}

fn cmd_verify(
    config: Option<PathBuf>,
    epsilon: Option<SpaceFormSign>,
    a: Option<f64>,
    radius: Option<f64>,
    s0: Option<f64>,
    tol: &TolArgs,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let tol = tol.build()?;
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(CliError::Io)?;
            serde_json::from_str::<FreeBoundaryConfig>(&text).map_err(|e| {
                CliError::Lab(LabError::Config(format!(
                    "stored configuration {} does not parse: {e}",
                    path.display()
                )))
            })?
        }
        None => {
            let family = FamilyArgs {
                // clap guarantees epsilon's presence when --config is absent
                epsilon: epsilon.expect("required_unless_present"),
                a,
                radius,
            };
            family.resolve(&tol)?
        }
    };
    if let Some(width) = s0 {
        cfg.s0 = width;
    }
    let report = cfg.verify();
    emit(out, &sorted_json(&report)?)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_nodal(
    family: &FamilyArgs,
    tol: &TolArgs,
    index: usize,
    m_max: u32,
    grid: (usize, usize),
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let tol = tol.build()?;
    let cfg = family.resolve(&tol)?;
    let band = cfg.build_family()?;
    let alpha = natural_frequency(cfg.params.eps());
    let sp = spectrum(&band, cfg.s0, alpha, m_max, &tol)?;

    // Flatten: a circle mode of multiplicity two contributes a cosine field
    // and then a sine field at the same eigenvalue.
    let mut instances: Vec<(u32, Parity, f64, &'static str)> = Vec::new();
    for e in &sp.entries {
        instances.push((e.m, e.parity, e.sigma, "cos"));
        if e.m > 0 {
            instances.push((e.m, e.parity, e.sigma, "sin"));
        }
    }
    let &(m, parity, sigma, angular) = instances.get(index).ok_or_else(|| {
        LabError::ParamRange(format!(
            "eigenfield index {index} out of range 0..{}",
            instances.len()
        ))
    })?;

    let coeffs = ModeCoeffs::build(&band, cfg.s0)?;
    let sol = mode_solution(&coeffs, m, parity, alpha)?;
    let (c_cos, c_sin) = if angular == "cos" { (1.0, 0.0) } else { (0.0, 1.0) };
    let field = ScalarField::from_modes(
        &[ModeShape {
            sol: &sol,
            c_cos,
            c_sin,
        }],
        grid.0,
        grid.1,
    )?;
    let report = analyze(&field)?;

    #[derive(Serialize)]
    struct NodalOutput {
        index: usize,
        m: u32,
        parity: Parity,
        angular: &'static str,
        sigma: f64,
        a_parity: Parity,
        grid: [usize; 2],
        report: NodalReport,
    }
    let payload = NodalOutput {
        index,
        m,
        parity,
        angular,
        sigma,
        a_parity: antipodal_parity(m, parity),
        grid: [grid.0, grid.1],
        report,
    };
    emit(out, &sorted_json(&payload)?)
}

/// JSON with keys sorted at every level (via the value tree) and a trailing
/// newline, so identical runs produce identical bytes.
fn sorted_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let tree = serde_json::to_value(value).map_err(CliError::Serialize)?;
    let text = serde_json::to_string_pretty(&tree).map_err(CliError::Serialize)?;
    Ok(text + "\n")
}

fn parity_label(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn spectrum_csv(sp: &Spectrum) -> String {
    let mut text = String::from("index,sigma,m,parity,multiplicity,a_parity\n");
    for (i, e) in sp.entries.iter().enumerate() {
        text.push_str(&format!(
            "{i},{:.16e},{},{},{},{}\n",
            e.sigma,
            e.m,
            parity_label(e.parity),
            e.multiplicity,
            parity_label(antipodal_parity(e.m, e.parity)),
        ));
    }
    text
}

fn oracle_csv(eigs: &[f64], count: usize) -> String {
    let clusters = cluster_values(eigs, ORACLE_CLUSTER_REL);
    let mut text = String::from("index,sigma,multiplicity\n");
    let mut index = 0usize;
    'outer: for (_, size) in &clusters {
        for _ in 0..*size {
            if index >= count.min(eigs.len()) {
                break 'outer;
            }
            text.push_str(&format!("{index},{:.16e},{size}\n", eigs[index]));
            index += 1;
        }
    }
    text
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(CliError::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
