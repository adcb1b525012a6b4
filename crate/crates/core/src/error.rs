use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("malformed image: {0}")]
    MalformedImage(String),

    #[error("unsupported bit depth or pixel layout: {0}")]
    UnsupportedBitDepth(String),

    #[error("unsupported file format: {0}")]
    UnsupportedFormat(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("value {value} at ({x}, {y}) is outside [0, 1]")]
    RangeViolation { x: usize, y: usize, value: f64 },

    #[error("negative value {value} at ({x}, {y})")]
    NegativeValue { x: usize, y: usize, value: f64 },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("channel tag mismatch: expected {expected}, found {found}")]
    ChannelTagMismatch { expected: &'static str, found: &'static str },

    #[error("empty image sequence")]
    EmptySequence,

    #[error("{weights} weights supplied for {images} images")]
    WeightLengthMismatch { images: usize, weights: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid epsilon: {0}")]
    InvalidEpsilon(f64),

    #[error("division by zero at ({x}, {y}); use epsilon > 0")]
    DivisionByZero { x: usize, y: usize },

    #[error("pixel ({x}, {y}) outside {width}x{height} table")]
    OutOfBounds { x: i64, y: i64, width: usize, height: usize },

    #[error("invalid brightness {0}: must be finite and non-negative")]
    InvalidBrightness(f64),

    #[error("invalid pixel pair: {0}")]
    InvalidPixelPair(String),

    #[error("invalid offset ({dx}, {dy}) for {width}x{height} table")]
    InvalidOffset { dx: i64, dy: i64, width: usize, height: usize },

    #[error("contrast {0} outside [-2, 2]")]
    ContrastOutOfRange(f64),

    #[error("degenerate denominator 1 - k_a*k_b/4 for k_a={k_a}, k_b={k_b}")]
    DegenerateDenominator { k_a: f64, k_b: f64 },

    #[error("both channel pairs have zero mean brightness")]
    ZeroBrightnessPair,

    #[error("bin count must be at least 2, got {0}")]
    InvalidBinCount(usize),

    #[error("geometry violation: {0}")]
    GeometryViolation(String),
}
