//! Structured documents printed on standard output, one JSON object per
//! line. Field names are the public schema; bump [`SCHEMA_VERSION`] on any
//! incompatible change.

use std::fmt::Write as _;

use serde::Serialize;

use phasefuse::metrics::Line;
use phasefuse::{ContrastReport, PixelPair, QualityReport};

use crate::method::MethodDescriptor;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Fuse,
    Sweep,
    Assess,
    Compare,
    Synth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSource {
    /// Target edge of the built-in model pair, used for 64x64 inputs.
    ModelDefault,
    User,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageEntry {
    pub path: String,
    pub quality: QualityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEntry {
    pub path: String,
    pub bit_depth: u32,
    /// Assessed on the values as written to disk.
    pub quality: QualityReport,
    pub raw_min: f64,
    pub raw_max: f64,
    pub raw_mean: f64,
    pub indeterminate_pixels: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContrastSection {
    pub pair: PixelPair,
    pub pair_source: PairSource,
    pub inputs: ContrastReport,
    /// Closed-form contrast of the output at the pair, where one exists for
    /// the method.
    pub predicted_output: Option<f64>,
    pub measured_raw: f64,
    pub measured_display: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContrastMapSummary {
    pub offset: [i64; 2],
    pub mean_abs: f64,
    pub max_abs: f64,
    pub boundary_pixels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileCopy {
    /// Image as loaded from disk.
    Loaded,
    /// Fused values before any display mapping.
    Raw,
    /// Display copy as written to disk.
    Display,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Profile {
    pub line: Line,
    pub copy: ProfileCopy,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Command,
    pub method: Option<MethodDescriptor>,
    pub mode: &'static str,
    pub inputs: Vec<ImageEntry>,
    pub output: Option<OutputEntry>,
    pub contrast: Option<ContrastSection>,
    pub contrast_maps: Vec<ContrastMapSummary>,
    pub profiles: Vec<Profile>,
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub label: String,
    pub method: Option<MethodDescriptor>,
    pub entropy_bits: f64,
    pub occupied_bins: usize,
    pub pair_contrast: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub command: Command,
    pub inputs: [String; 2],
    pub bins: usize,
    pub bit_depth: u32,
    pub pair: Option<PixelPair>,
    pub pair_source: Option<PairSource>,
    pub rows: Vec<CompareRow>,
    pub warnings: Vec<String>,
    pub wall_time_ms: f64,
}

impl CompareReport {
    pub fn row(&self, label: &str) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,entropy_bits,occupied_bins,pair_contrast\n");
        for r in &self.rows {
            let k = r.pair_contrast.map(|k| k.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", r.label, r.entropy_bits, r.occupied_bins, k);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthFile {
    pub name: String,
    pub path: String,
    /// Target-edge contrast of the values as written.
    pub target_edge_contrast: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthReport {
    pub schema_version: u32,
    pub command: Command,
    pub pair: PixelPair,
    pub bit_depth: u32,
    pub files: Vec<SynthFile>,
    pub wall_time_ms: f64,
}

pub fn to_json_line<T: Serialize>(doc: &T) -> serde_json::Result<String> {
    serde_json::to_string(doc)
}
