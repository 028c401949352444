//! `cmc`: periods, deformability verdicts, cross-sections and meshes for
//! catalog surfaces and Weierstrass input files.

pub mod commands;
pub mod input;
pub mod mesh;
pub mod report;
pub mod trace;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use cmc_core::{GeomError, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "cmc", version, about = "Force/torque periods and associate families of CMC surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub tolerances: TolArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Absolute and relative quadrature tolerance.
    #[arg(long, global = true)]
    pub quad_tol: Option<f64>,
    /// Local error tolerance of the profile ODE solver.
    #[arg(long, global = true)]
    pub ode_tol: Option<f64>,
    /// Relative finite-difference step for surfaces without analytic jets.
    #[arg(long, global = true)]
    pub fd_step: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Result<Tolerances, GeomError> {
        let mut t = Tolerances::default();
        if let Some(q) = self.quad_tol {
            t = t.with_quad(q);
        }
        if let Some(o) = self.ode_tol {
            t = t.with_ode(o);
        }
        if let Some(f) = self.fd_step {
            t = t.with_fd_step(f);
        }
        t.validated()
    }
}

/// Where the surface comes from.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Catalog surface (see `cmc catalog list`), or `delaunay` with
    /// `--delaunay-h` and `--delaunay-a`.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub surface: Option<String>,
    /// Weierstrass input file (JSON).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub delaunay_h: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delaunay_a: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog of reference surfaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Export a Wavefront OBJ mesh.
    Mesh {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 64)]
        nu: usize,
        #[arg(long, default_value_t = 32)]
        nv: usize,
        /// Associate-family angle (minimal surfaces only).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        /// Compare surface arclengths of the grid edges with the `t = 0`
        /// member.
        #[arg(long)]
        check_isometry: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Force/torque periods, and complex Weierstrass periods for Weierstrass input files.
    Periods {
        #[command(flatten)]
        source: SourceArgs,
        /// Cycle label, `all`, or (Weierstrass input) `all-punctures`.
        #[arg(long, default_value = "all")]
        cycle: String,
        /// Comma-separated subset of `force,torque`.
        #[arg(long, default_value = "force,torque")]
        form: String,
        /// Torque base point `x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        origin: Option<String>,
        /// Per-arclength integrand samples as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Finite-or-circle verdict from the period obstructions.
    Deformability {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Force through a planar cross-section and the disc-radius criterion.
    CrossSection {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        cycle: String,
        /// Plane normal `x,y,z`.
        #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
        normal: String,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Build the associate surface at angle `t` and check it against `t = 0`.
    Associate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Check grid size per direction.
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// One line per entry: name, H, domain, cycle labels.
    List,
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Bad arguments or input.
    pub const USAGE: i32 = 2;
    /// A quadrature or ODE solve failed.
    pub const NUMERIC: i32 = 3;
}

/// Exit code for an error: numerical failures are told apart from bad
/// input.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<GeomError>() {
        Some(GeomError::QuadratureFailure { .. }) | Some(GeomError::OdeSingularity { .. }) => exit::NUMERIC,
        _ => exit::USAGE,
    }
}

/// Runs a parsed command, writing human-readable output to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn std::io::Write) -> anyhow::Result<()> {
    let tol = cli.tolerances.resolve()?;
    commands::dispatch(&cli.command, &tol, stdout)
}
