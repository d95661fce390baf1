use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use foldact_core::vel::DEFAULT_EPSILON_MM;

#[derive(Debug, Parser)]
#[command(name = "foldact", version, about = "Fold-based soft actuator modelling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit Mooney-Rivlin coefficients to a stress-strain CSV.
    FitMaterial {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate invariants, energy and stress of a material at a stretch.
    Eval {
        #[arg(long)]
        material: PathBuf,
        #[arg(long)]
        stretch: f64,
    },
    /// Solve the bending equilibrium at one pressure.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// kPa
        #[arg(long)]
        pressure: f64,
    },
    /// Solve over a pressure range and write the sweep CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        pmin: f64,
        #[arg(long)]
        pmax: f64,
        #[arg(long, default_value_t = 10.0)]
        step: f64,
        /// Output CSV; prints a table when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit the aspect-ratio exponent alpha to measured bending angles.
    CalibrateAlpha {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_max: f64,
    },
    /// Write the backbone of a constraint mask at a pressure.
    Shape {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        pressure: f64,
        #[arg(long)]
        mask: String,
        /// Output CSV; prints to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a mask against a contour, or search for the best mask.
    Conform(ConformArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selection").required(true).args(["mask", "optimize"])))]
pub struct ConformArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub pressure: f64,
    #[arg(long)]
    pub contour: PathBuf,
    #[arg(long)]
    pub mask: Option<String>,
    #[arg(long)]
    pub optimize: bool,
    /// Contact distance, mm.
    #[arg(long, default_value_t = DEFAULT_EPSILON_MM)]
    pub epsilon: f64,
}
