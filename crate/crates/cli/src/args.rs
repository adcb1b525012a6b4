use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use phasefuse::metrics::{Line, DEFAULT_BINS};
use phasefuse::{BitDepth, FileFormat, PixelPair};

use crate::method::MethodTag;

#[derive(Debug, Parser)]
#[command(name = "phasefuse", version, about = "Visible/infrared image fusion via complex-valued pixel combinations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Fuse a visible and an infrared image into one output image.
    Fuse {
        u: PathBuf,
        v: PathBuf,
        #[arg(long, default_value = "t-neg")]
        method: MethodTag,
        #[command(flatten)]
        fusion: FusionArgs,
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, value_enum, default_value = "gray")]
        mode: ModeArg,
        /// Output image path; the extension selects PGM or PNG.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a tangent or phi method over several epsilon values.
    Sweep {
        u: PathBuf,
        v: PathBuf,
        #[arg(long, default_value = "t-neg")]
        method: MethodTag,
        #[arg(long, value_delimiter = ',', default_values_t = crate::commands::DEFAULT_SWEEP.to_vec())]
        epsilons: Vec<f64>,
        #[command(flatten)]
        fusion: FusionArgs,
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, value_enum, default_value = "gray")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "pgm")]
        format: FormatArg,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Histogram, entropy and statistics of one image.
    Assess {
        img: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[arg(long, value_parser = parse_line)]
        profile: Option<Line>,
        /// Histogram CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy, occupied bins and pair contrast for several methods.
    Compare {
        u: PathBuf,
        v: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "simple,amplitude,t-neg,t-pos,phi-neg,phi-pos")]
        methods: Vec<MethodTag>,
        #[command(flatten)]
        fusion: FusionArgs,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[arg(long, value_parser = parse_pair)]
        pair: Option<PixelPair>,
        #[arg(long, value_enum, default_value = "8")]
        depth: DepthArg,
        /// Table CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the synthetic model pair and its renderings.
    Synth {
        #[arg(long, value_enum, default_value = "pgm")]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "8")]
        depth: DepthArg,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FusionArgs {
    /// Denominator regularization for tangent and phi methods.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Channel weights wA,wB; rescaled to unit Euclidean norm.
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<(f64, f64)>,
    /// Write 1 - x instead of the display copy.
    #[arg(long)]
    pub invert: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Neighbour offset dx,dy for contrast maps (default: 1,0 and 0,1).
    #[arg(long, value_parser = parse_offset, allow_hyphen_values = true)]
    pub offset: Option<(i64, i64)>,
    /// Pixel pair x1,y1,x2,y2 whose contrast is reported.
    #[arg(long, value_parser = parse_pair)]
    pub pair: Option<PixelPair>,
    #[arg(long, value_parser = parse_line)]
    pub profile: Option<Line>,
    #[arg(long, value_enum, default_value = "8")]
    pub depth: DepthArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Gray,
    Rgb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Pgm,
    Png,
}

impl From<FormatArg> for FileFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pgm => FileFormat::Pgm,
            FormatArg::Png => FileFormat::Png,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    #[value(name = "8")]
    Eight,
    #[value(name = "16")]
    Sixteen,
}

impl From<DepthArg> for BitDepth {
    fn from(d: DepthArg) -> Self {
        match d {
            DepthArg::Eight => BitDepth::Eight,
            DepthArg::Sixteen => BitDepth::Sixteen,
        }
    }
}

fn numbers<T: std::str::FromStr>(s: &str, n: usize, what: &str) -> Result<Vec<T>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {what}, got {s:?}"));
    }
    parts.iter().map(|p| p.parse().map_err(|_| format!("bad number {p:?} in {s:?}"))).collect()
}

pub fn parse_weights(s: &str) -> Result<(f64, f64), String> {
    let w: Vec<f64> = numbers(s, 2, "wA,wB")?;
    Ok((w[0], w[1]))
}

pub fn parse_offset(s: &str) -> Result<(i64, i64), String> {
    let d: Vec<i64> = numbers(s, 2, "dx,dy")?;
    Ok((d[0], d[1]))
}

pub fn parse_pair(s: &str) -> Result<PixelPair, String> {
    let c: Vec<usize> = numbers(s, 4, "x1,y1,x2,y2")?;
    PixelPair::new((c[0], c[1]), (c[2], c[3])).map_err(|e| e.to_string())
}

pub fn parse_line(s: &str) -> Result<Line, String> {
    s.parse()
}
