use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gscnn_core::harness::Precision;
use gscnn_core::mixing::MixingKind;

/// Verification tools for harmonic-space equivariant layers.
#[derive(Parser, Debug)]
#[command(name = "gscnn", version, about)]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproduce the layer equivariance table
    Equivariance(EquivarianceArgs),
    /// Flop and memory reduction of the efficient layer over the baseline
    Cost(CostArgs),
    /// Forward/inverse transform round trips
    Roundtrip(RoundtripArgs),
    /// Dump or summarise degree-mixing sets
    Mixing(MixingArgs),
    /// Compare Gaunt squaring with pointwise squaring on an oversampled grid
    Square(SquareArgs),
    /// Convert a Dirac-delta filter description to harmonic coefficients
    Filter(FilterArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report path (default: $GSCNN_OUT_DIR/<command>.<format>, else stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Exit with status 2 when a tolerance is violated
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Single,
    Double,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Single => Precision::Single,
            PrecisionArg::Double => Precision::Double,
        }
    }
}

#[derive(Args, Debug)]
pub struct EquivarianceArgs {
    #[arg(long = "L", default_value_t = 32)]
    pub bandlimit: usize,

    /// Azimuthal bandlimit of the rotation-group ReLU rows
    #[arg(long = "relu-n", default_value_t = 4)]
    pub relu_azimuthal: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 10)]
    pub n_signals: usize,

    #[arg(long, default_value_t = 10)]
    pub n_rotations: usize,

    #[arg(long, value_enum, default_value_t = PrecisionArg::Single)]
    pub precision: PrecisionArg,

    /// Run a single operator instead of the full table
    #[arg(long)]
    pub operator: Option<String>,

    /// Azimuthal bandlimit for --operator (default: L)
    #[arg(long = "N")]
    pub azimuthal: Option<usize>,

    /// Oversampling factor for --operator
    #[arg(long, default_value_t = 1)]
    pub oversample: usize,

    /// Write an SVG bar chart of the table
    #[arg(long)]
    pub plot: Option<PathBuf>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CostArgs {
    /// Optional action; `compare` is the only one and the default
    #[arg(value_parser = ["compare"])]
    pub action: Option<String>,

    /// Bandlimits to evaluate
    #[arg(long = "L", value_delimiter = ',', default_values_t = [8usize, 16, 32, 64, 128])]
    pub bandlimits: Vec<usize>,

    #[arg(long = "K", default_value_t = 4)]
    pub channels: usize,

    /// Write an SVG line plot of the factors against L
    #[arg(long)]
    pub plot: Option<PathBuf>,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[arg(long = "L", value_delimiter = ',', default_values_t = [2usize, 4, 8, 16, 32, 64])]
    pub bandlimits: Vec<usize>,

    /// Azimuthal bandlimits for rotation-group signals (`0` means N = L)
    #[arg(long = "N", value_delimiter = ',', default_values_t = [0usize, 4])]
    pub azimuthal: Vec<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random signals per configuration
    #[arg(long, default_value_t = 1)]
    pub count: usize,

    /// Only test sphere signals
    #[arg(long)]
    pub sphere_only: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Full,
    Mst,
    Rmst,
}

impl From<KindArg> for MixingKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Full => MixingKind::Full,
            KindArg::Mst => MixingKind::Mst,
            KindArg::Rmst => MixingKind::Rmst,
        }
    }
}

#[derive(Args, Debug)]
pub struct MixingArgs {
    /// `dump` lists pairs, `stats` summarises set sizes per degree
    #[arg(value_parser = ["dump", "stats"], default_value = "dump")]
    pub action: String,

    #[arg(long = "L")]
    pub bandlimit: usize,

    /// Output degree (default: every degree below L)
    #[arg(long)]
    pub ell: Option<usize>,

    #[arg(long, value_enum, default_value_t = KindArg::Full)]
    pub kind: KindArg,

    /// List each unordered pair once instead of in both orders
    #[arg(long)]
    pub undirected: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SquareArgs {
    #[arg(long = "L", default_value_t = 8)]
    pub bandlimit: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Random signals to compare
    #[arg(long, default_value_t = 1)]
    pub count: usize,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FilterArgs {
    /// Filter geometry description
    #[arg(long)]
    pub config: PathBuf,

    /// Bandlimit (overrides the value in the description)
    #[arg(long = "L")]
    pub bandlimit: Option<usize>,

    /// Azimuthal bandlimit of rotation-group filters (default: L)
    #[arg(long = "N")]
    pub azimuthal: Option<usize>,

    /// Write the little-endian binary coefficient format instead of text
    #[arg(long)]
    pub binary: bool,

    /// Coefficient file path (default: $GSCNN_OUT_DIR/filter.<ext>, else stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}
