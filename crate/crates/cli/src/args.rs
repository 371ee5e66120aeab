use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use spinharm::symtrig::HalfInteger;

use crate::angle::parse_angle;

#[derive(Debug, Parser)]
#[command(name = "spinharm", version, about = "Integer and half-odd-integer spherical harmonics: tables, verification sweeps, evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Eigen,
    Ladder,
    Commutators,
    Oracle,
    Doublevalue,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit every harmonic with l <= LMAX: polynomial, expression, exact norm, normalization constant.
    Table {
        /// Largest l, as "5/2" or "2.5" (default: the cap).
        #[arg(long)]
        lmax: Option<HalfInteger>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write harmonics.{json,csv} into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification sweeps and report; exit status 1 on any failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        lmax: Option<HalfInteger>,
        /// Write summary.json and per-section reports into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Finite-difference step for the oracle suite.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        /// Quadrature nodes for the normalization cross-check (default: degree bound + 4 per state).
        #[arg(long)]
        nodes: Option<usize>,
        /// Seed for the random family members in the commutator suite.
        #[arg(long, default_value_t = 20240917)]
        seed: u64,
    },
    /// Print Y_l^m(theta, phi), raw and normalized.
    Eval {
        l: HalfInteger,
        #[arg(allow_hyphen_values = true)]
        m: HalfInteger,
        /// Polar angle in radians; "pi/3"-style input is accepted.
        #[arg(value_parser = parse_angle, allow_hyphen_values = true)]
        theta: f64,
        #[arg(value_parser = parse_angle, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// CSV samples of Y over theta and a full phi period (4 pi for half-odd-integer m).
    Plotdata {
        l: HalfInteger,
        #[arg(allow_hyphen_values = true)]
        m: HalfInteger,
        #[arg(long = "ntheta", default_value_t = 16)]
        n_theta: usize,
        #[arg(long = "nphi", default_value_t = 32)]
        n_phi: usize,
        /// Write plot_<l2>_<m2>.csv into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
