//! The `pedal` command line: verification reports, sweeps, classification,
//! figures and the hexagon lemmas, driven by TOML scene files.

// NaN has to fail range checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod output;
pub mod scene;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pedal_core::{ConicError, GeomError, PonceletError, ReuleauxError};
use thiserror::Error;

pub use commands::{run, Outcome};
pub use scene::{Scene, SceneSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid scene: {0}")]
    Scene(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 when a valid input could not be
    /// verified.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            _ => 2,
        }
    }
}

impl From<ReuleauxError> for CliError {
    fn from(e: ReuleauxError) -> Self {
        match e {
            ReuleauxError::ParameterOutOfRange(_)
            | ReuleauxError::InvalidSweep(_)
            | ReuleauxError::InvalidRadius(_)
            | ReuleauxError::NotSymmetric
            | ReuleauxError::InvalidArcs(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<PonceletError> for CliError {
    fn from(e: PonceletError) -> Self {
        match e {
            PonceletError::Geom(_) => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConicError> for CliError {
    fn from(e: ConicError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Compute(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "pedal", version, about = "Verify Reuleaux negative pedal constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the endpoint conic, the inverted figure and the endpoint properties at one pedal point.
    Verify(VerifyArgs),
    /// Sample the pedal side and report per-sample residuals.
    Sweep(SweepArgs),
    /// Classify the endpoint conic two ways and locate the parabola pedal points.
    Classify(SceneArgs),
    /// Write an SVG figure.
    Render(RenderArgs),
    /// Check the hexagon tangent chain and the 120° lemma.
    Poncelet(PonceletArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SceneArgs {
    /// Scene file (TOML).
    #[arg(long)]
    pub scene: PathBuf,
    /// Pedal parameter in (0, 1) along the side V1V2.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Inversion radius.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Tolerance for every residual.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Require the endpoint conic to have a focus at the pedal point, also for asymmetric scenes.
    #[arg(long)]
    pub expect_focus_at_m: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Number of pedal samples (at least 3).
    #[arg(long)]
    pub n: Option<usize>,
    /// Also write the samples as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub scene: SceneArgs,
    /// Comma-separated layers: reuleaux, npc, endpoint-conic, inverted, hexagon.
    #[arg(long, default_value = "reuleaux,npc,endpoint-conic")]
    pub layers: String,
}

#[derive(Debug, Clone, Args)]
pub struct PonceletArgs {
    /// Circumradius of the hexagon.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub radius: f64,
    /// Angle of the first vertex, in degrees.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase: f64,
    /// Start point in (0, 1) along the arc A0A1.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
