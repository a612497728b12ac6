use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "nanoloop", version, about = "Null-point solver for closed tunneling nanocircuits (eV, nm, radians)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the parallel reproduction runs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Read and write phase angles in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,

    /// JSON file with default circuit and scan parameters; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Rect,
    Tri,
    Delta,
    Scaled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the closed-form and numeric determinants at given phases.
    Det(DetArgs),
    /// List the certified roots in a phase window.
    Roots(RootArgs),
    /// Wave-function coefficients at a root.
    Coeffs(CoeffArgs),
    /// Sample the wave function at a root.
    Wavefunction(WaveArgs),
    /// Regenerate the published tables and sweeps.
    #[command(subcommand)]
    Repro(ReproCommand),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CircuitArgs {
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Particle energy, eV.
    #[arg(long = "E", allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Barrier height, eV.
    #[arg(long = "V0", allow_hyphen_values = true)]
    pub height: Option<f64>,
    /// Rectangular barrier width, nm.
    #[arg(long = "b", allow_hyphen_values = true)]
    pub width: Option<f64>,
    /// Triangular barrier length, nm.
    #[arg(long = "c", allow_hyphen_values = true)]
    pub length: Option<f64>,
    /// Delta strength, eV nm.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Barrier scale factor.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub grid_step: Option<f64>,
    /// Relative determinant tolerance for accepting a root.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Phase(s) to evaluate; without it the scan window is swept.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub theta: Vec<f64>,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub scan: ScanArgs,
    /// Root branch, 0 = smallest |theta|.
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    /// Use this phase instead of solving for a branch.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub scan: ScanArgs,
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    /// Samples per region.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Divide by the discrete L2 norm.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Pm,
    Nm,
}

#[derive(Debug, Subcommand)]
pub enum ReproCommand {
    /// Rectangular length table.
    Table1 {
        #[arg(long = "V0", default_value_t = 1.0)]
        height: f64,
    },
    /// Triangular length table.
    Table2 {
        #[arg(long = "V0", default_value_t = 1.0)]
        height: f64,
        /// Unit of the column lengths.
        #[arg(long, value_enum, default_value_t = Reading::Pm)]
        reading: Reading,
    },
    /// Root pair near -360 degrees across the printed energies.
    Fig6 {
        #[arg(long = "V0", default_value_t = 1.0)]
        height: f64,
        /// Triangular barrier length, nm.
        #[arg(long = "c", default_value_t = 1e-3)]
        length: f64,
        /// Half-width of the window around -2 pi, rad.
        #[arg(long, default_value_t = 0.1)]
        half_window: f64,
        #[arg(long, default_value_t = 1e-7)]
        grid_step: f64,
    },
    /// Root tracking under barrier scaling.
    XiSweep {
        #[arg(long = "V0", default_value_t = 1.0)]
        height: f64,
        #[arg(long = "b", default_value_t = 0.5)]
        width: f64,
        #[arg(long = "E", default_value_t = 0.5)]
        energy: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 10.0, 100.0, 1000.0])]
        xi: Vec<f64>,
    },
    /// Sign structure of the shorted triangular determinant on a (K, X) grid.
    Shorted {
        #[arg(long, default_value_t = 8.0)]
        extent: f64,
        #[arg(long, default_value_t = 0.05)]
        spacing: f64,
    },
}
