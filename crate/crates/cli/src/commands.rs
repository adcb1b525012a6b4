use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use phasefuse::fusion::{self, Epsilon, Ordering};
use phasefuse::metrics::{self, assess, brightness_profile, contrast_map, contrast_report, local_contrast, Line};
use phasefuse::raster::{self, invert, normalize, quantize, BitDepth, FileFormat};
use phasefuse::synth::{model_pair_default, model_target_edge, MODEL_CANVAS};
use phasefuse::{BrightnessTable, PixelPair};

use crate::error::{CliError, CliResult};
use crate::method::{render, FusionMethod, MethodTag, Rendering};
use crate::report::{
    CompareReport, CompareRow, ContrastMapSummary, ContrastSection, Command, ImageEntry, OutputEntry, PairSource,
    Profile, ProfileCopy, RunReport, SynthFile, SynthReport, SCHEMA_VERSION,
};

pub const DEFAULT_OFFSETS: [(i64, i64); 2] = [(1, 0), (0, 1)];
pub const DEFAULT_SWEEP: [f64; 5] = [1e-5, 0.01, 0.2, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Gray,
    /// Each colour plane fused separately; output must be PNG.
    Rgb,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Gray => "gray",
            Mode::Rgb => "rgb",
        }
    }
}

/// Options shared by every command that produces a fused image.
#[derive(Debug, Clone)]
pub struct FuseOptions {
    pub method: FusionMethod,
    pub bins: usize,
    pub pair: Option<PixelPair>,
    pub offsets: Vec<(i64, i64)>,
    pub profile: Option<Line>,
    pub mode: Mode,
    pub depth: BitDepth,
    pub warnings: Vec<String>,
}

impl FuseOptions {
    pub fn new(method: FusionMethod) -> Self {
        Self {
            method,
            bins: metrics::DEFAULT_BINS,
            pair: None,
            offsets: DEFAULT_OFFSETS.to_vec(),
            profile: None,
            mode: Mode::Gray,
            depth: BitDepth::Eight,
            warnings: Vec::new(),
        }
    }
}

fn bits(depth: BitDepth) -> u32 {
    match depth {
        BitDepth::Eight => 8,
        BitDepth::Sixteen => 16,
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn display_path(p: &Path) -> String {
    p.display().to_string()
}

/// The values a reader gets back after saving `table` at `depth`.
pub fn as_saved(table: &BrightnessTable, depth: BitDepth) -> CliResult<BrightnessTable> {
    table.check_unit_range()?;
    let max = depth.max_sample() as f64;
    Ok(table.map(|x| quantize(x, depth) as f64 / max)?)
}

fn luma(planes: &[BrightnessTable]) -> CliResult<BrightnessTable> {
    match planes {
        [gray] => Ok(gray.clone()),
        [r, g, b] => {
            let rg = r.zip_map(g, |r, g| 0.299 * r + 0.587 * g)?;
            Ok(rg.zip_map(b, |rg, b| rg + 0.114 * b)?)
        }
        _ => Err(CliError::new(crate::error::Category::InternalError, "unexpected plane count")),
    }
}

fn resolve_pair(user: Option<PixelPair>, dims: (usize, usize)) -> Option<(PixelPair, PairSource)> {
    match user {
        Some(p) => Some((p, PairSource::User)),
        None if dims == MODEL_CANVAS => Some((model_target_edge(), PairSource::ModelDefault)),
        None => None,
    }
}

fn predicted_output(method: &FusionMethod, u: &BrightnessTable, v: &BrightnessTable, pair: PixelPair) -> Option<f64> {
    let (p, q) = (pair.p, pair.q);
    let r = contrast_report(u, v, pair).ok()?;
    match method.tag {
        MethodTag::Simple => Some(r.k_s),
        MethodTag::Weighted => {
            let (wa, wb) = (method.weights.w_a(), method.weights.w_b());
            metrics::predict_simple_contrast(wa * u.at(p.0, p.1), wa * u.at(q.0, q.1), wb * v.at(p.0, p.1), wb * v.at(q.0, q.1))
                .ok()
                .map(|w| w.k_s)
        }
        MethodTag::TNeg if method.epsilon.is_zero() => r.k_t_exact,
        MethodTag::TPos if method.epsilon.is_zero() => r.k_t_exact.map(|k| -k),
        _ => None,
    }
}

fn map_summaries(table: &BrightnessTable, offsets: &[(i64, i64)]) -> CliResult<Vec<ContrastMapSummary>> {
    offsets
        .iter()
        .map(|&(dx, dy)| {
            let m = contrast_map(table, (dx, dy))?;
            let n = m.map.len() as f64;
            let mean_abs = m.map.values().iter().map(|k| k.abs()).sum::<f64>() / n;
            let max_abs = m.map.values().iter().fold(0.0f64, |a, k| a.max(k.abs()));
            Ok(ContrastMapSummary { offset: [dx, dy], mean_abs, max_abs, boundary_pixels: m.boundary_pixels })
        })
        .collect()
}

/// Both inputs loaded once, as gray luminance and as fusion planes.
struct Inputs {
    paths: [PathBuf; 2],
    gray: [BrightnessTable; 2],
    u_planes: Vec<BrightnessTable>,
    v_planes: Vec<BrightnessTable>,
}

impl Inputs {
    fn load(u_path: &Path, v_path: &Path, mode: Mode) -> CliResult<Self> {
        let u = raster::load(u_path).map_err(CliError::load)?;
        let v = raster::load(v_path).map_err(CliError::load)?;
        u.ensure_same_dims(&v)?;
        let (u_planes, v_planes) = match mode {
            Mode::Gray => (vec![u.clone()], vec![v.clone()]),
            Mode::Rgb => (
                raster::load_rgb(u_path).map_err(CliError::load)?.to_vec(),
                raster::load_rgb(v_path).map_err(CliError::load)?.to_vec(),
            ),
        };
        Ok(Self { paths: [u_path.to_path_buf(), v_path.to_path_buf()], gray: [u, v], u_planes, v_planes })
    }

    fn entries(&self, bins: usize) -> CliResult<Vec<ImageEntry>> {
        self.paths
            .iter()
            .zip(&self.gray)
            .map(|(p, t)| Ok(ImageEntry { path: display_path(p), quality: assess(t, bins)? }))
            .collect()
    }

    fn render(&self, method: &FusionMethod) -> CliResult<Vec<Rendering>> {
        self.u_planes.iter().zip(&self.v_planes).map(|(u, v)| render(u, v, method)).collect()
    }
}

fn write_output(planes: &[BrightnessTable], out: &Path, depth: BitDepth) -> CliResult<()> {
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(CliError::io)?;
    }
    match planes {
        [gray] => raster::save(gray, out, depth).map_err(CliError::save),
        [r, g, b] => raster::save_rgb(&[r.clone(), g.clone(), b.clone()], out, depth).map_err(CliError::save),
        _ => unreachable!("one or three planes"),
    }
}

fn fuse_loaded(inputs: &Inputs, opts: &FuseOptions, out: &Path, command: Command, start: Instant) -> CliResult<RunReport> {
    if opts.mode == Mode::Rgb && FileFormat::from_path(out).map_err(CliError::save)? != FileFormat::Png {
        return Err(CliError::usage("rgb mode writes PNG; use a .png output path"));
    }
    let renderings = inputs.render(&opts.method)?;
    let saved: Vec<BrightnessTable> =
        renderings.iter().map(|r| as_saved(&r.display, opts.depth)).collect::<CliResult<_>>()?;
    let raw_planes: Vec<BrightnessTable> = renderings.iter().map(|r| r.raw.clone()).collect();
    let raw = luma(&raw_planes)?;
    let shown = luma(&saved)?;

    write_output(&saved, out, opts.depth)?;

    let dims = inputs.gray[0].dims();
    let contrast = match resolve_pair(opts.pair, dims) {
        Some((pair, pair_source)) => {
            let (u, v) = (&inputs.gray[0], &inputs.gray[1]);
            Some(ContrastSection {
                pair,
                pair_source,
                inputs: contrast_report(u, v, pair)?,
                predicted_output: (opts.mode == Mode::Gray).then(|| predicted_output(&opts.method, u, v, pair)).flatten(),
                measured_raw: local_contrast(&raw, pair)?,
                measured_display: local_contrast(&shown, pair)?,
            })
        }
        None => None,
    };
    let profiles = match opts.profile {
        Some(line) => vec![
            Profile { line, copy: ProfileCopy::Raw, values: brightness_profile(&raw, line)? },
            Profile { line, copy: ProfileCopy::Display, values: brightness_profile(&shown, line)? },
        ],
        None => Vec::new(),
    };
    let mut warnings = opts.warnings.clone();
    let (w, h) = dims;
    let (offsets, skipped): (Vec<_>, Vec<_>) =
        opts.offsets.iter().partition(|(dx, dy)| dx.unsigned_abs() < w as u64 && dy.unsigned_abs() < h as u64);
    for (dx, dy) in skipped {
        warnings.push(format!("offset ({dx}, {dy}) does not fit a {w}x{h} image; contrast map skipped"));
    }
    if opts.pair.is_none() && contrast.is_none() {
        warnings.push("no --pair given for non-model input; contrast section omitted".into());
    }
    let indeterminate = renderings.iter().map(|r| r.indeterminate).sum();
    if indeterminate > 0 {
        warnings.push(format!("{indeterminate} pixels were 0/0 and set to 0"));
    }
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        method: Some(opts.method.descriptor()),
        mode: opts.mode.name(),
        inputs: inputs.entries(opts.bins)?,
        output: Some(OutputEntry {
            path: display_path(out),
            bit_depth: bits(opts.depth),
            quality: assess(&shown, opts.bins)?,
            raw_min: raw.min(),
            raw_max: raw.max(),
            raw_mean: raw.mean(),
            indeterminate_pixels: indeterminate,
        }),
        contrast,
        contrast_maps: map_summaries(&raw, &offsets)?,
        profiles,
        warnings,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Fuses two aligned images, writes the display copy to `out` and reports
/// on inputs and output.
pub fn cmd_fuse(u_path: &Path, v_path: &Path, opts: &FuseOptions, out: &Path) -> CliResult<RunReport> {
    let start = Instant::now();
    let inputs = Inputs::load(u_path, v_path, opts.mode)?;
    fuse_loaded(&inputs, opts, out, Command::Fuse, start)
}

/// File name used by [`cmd_sweep`] for one epsilon value.
pub fn sweep_file_name(tag: MethodTag, eps: f64, format: FileFormat) -> String {
    format!("{}_eps{}.{}", tag.file_stem(), eps, format.extension())
}

/// Runs a tangent or phi method once per epsilon, writing
/// `{method}_eps{eps}` images into `out_dir`.
///
/// Every epsilon is rendered before any file is written, so an epsilon of
/// zero with a zero denominator fails the whole sweep.
pub fn cmd_sweep(
    u_path: &Path,
    v_path: &Path,
    opts: &FuseOptions,
    epsilons: &[f64],
    out_dir: &Path,
    format: FileFormat,
) -> CliResult<Vec<RunReport>> {
    let tag = opts.method.tag;
    if !tag.is_sweepable() {
        return Err(CliError::usage(format!("sweep needs t-neg, t-pos, phi-neg or phi-pos, got {}", tag.name())));
    }
    if epsilons.is_empty() {
        return Err(CliError::usage("empty epsilon list"));
    }
    if opts.mode == Mode::Rgb && format != FileFormat::Png {
        return Err(CliError::usage("rgb mode writes PNG; use --format png"));
    }
    let eps: Vec<Epsilon> =
        epsilons.iter().map(|&e| Epsilon::new(e).map_err(|e| CliError::usage(e.to_string()))).collect::<CliResult<_>>()?;
    let inputs = Inputs::load(u_path, v_path, opts.mode)?;
    for &e in &eps {
        inputs.render(&opts.method.with_epsilon(e))?;
    }
    fs::create_dir_all(out_dir).map_err(CliError::io)?;
    eps.iter()
        .map(|&e| {
            let start = Instant::now();
            let mut step = opts.clone();
            step.method = opts.method.with_epsilon(e);
            let out = out_dir.join(sweep_file_name(tag, e.value(), format));
            fuse_loaded(&inputs, &step, &out, Command::Sweep, start)
        })
        .collect()
}

/// Histogram, entropy and summary statistics of one image, with an
/// optional brightness profile. The histogram is also written as CSV when
/// `csv_out` is given.
pub fn cmd_assess(img: &Path, bins: usize, profile: Option<Line>, csv_out: Option<&Path>) -> CliResult<RunReport> {
    let start = Instant::now();
    let table = raster::load(img).map_err(CliError::load)?;
    let quality = assess(&table, bins)?;
    if let Some(csv) = csv_out {
        fs::write(csv, quality.histogram_csv()).map_err(CliError::io)?;
    }
    let profiles = match profile {
        Some(line) => vec![Profile { line, copy: ProfileCopy::Loaded, values: brightness_profile(&table, line)? }],
        None => Vec::new(),
    };
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        command: Command::Assess,
        method: None,
        mode: Mode::Gray.name(),
        inputs: vec![ImageEntry { path: display_path(img), quality }],
        output: None,
        contrast: None,
        contrast_maps: Vec::new(),
        profiles,
        warnings: Vec::new(),
        wall_time_ms: elapsed_ms(start),
    })
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub bins: usize,
    pub pair: Option<PixelPair>,
    pub depth: BitDepth,
    pub warnings: Vec<String>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { bins: metrics::DEFAULT_BINS, pair: None, depth: BitDepth::Eight, warnings: Vec::new() }
    }
}

/// One row per input image and per method: entropy and occupied bins of
/// the display copy as it would be saved at `opts.depth`, plus the raw
/// output contrast at the designated pair.
pub fn cmd_compare(u_path: &Path, v_path: &Path, methods: &[FusionMethod], opts: &CompareOptions) -> CliResult<CompareReport> {
    let start = Instant::now();
    if methods.is_empty() {
        return Err(CliError::usage("empty method list"));
    }
    let inputs = Inputs::load(u_path, v_path, Mode::Gray)?;
    let [u, v] = &inputs.gray;
    let resolved = resolve_pair(opts.pair, u.dims());
    let pair = resolved.map(|(p, _)| p);
    let measure = |t: &BrightnessTable| pair.map(|p| local_contrast(t, p)).transpose();

    let mut rows = Vec::with_capacity(methods.len() + 2);
    for (label, t) in [("u", u), ("v", v)] {
        let q = assess(t, opts.bins)?;
        rows.push(CompareRow {
            label: label.into(),
            method: None,
            entropy_bits: q.entropy_bits,
            occupied_bins: q.occupied_bins,
            pair_contrast: measure(t)?,
        });
    }
    for m in methods {
        let r = render(u, v, m)?;
        let q = assess(&as_saved(&r.display, opts.depth)?, opts.bins)?;
        let mut label = m.tag.name().to_string();
        if m.invert_output {
            label.push_str("-inverted");
        }
        rows.push(CompareRow {
            label,
            method: Some(m.descriptor()),
            entropy_bits: q.entropy_bits,
            occupied_bins: q.occupied_bins,
            pair_contrast: measure(&r.raw)?,
        });
    }
    let mut warnings = opts.warnings.clone();
    if resolved.is_none() {
        warnings.push("no --pair given for non-model input; pair contrast omitted".into());
    }
    Ok(CompareReport {
        schema_version: SCHEMA_VERSION,
        command: Command::Compare,
        inputs: [display_path(u_path), display_path(v_path)],
        bins: opts.bins,
        bit_depth: bits(opts.depth),
        pair,
        pair_source: resolved.map(|(_, s)| s),
        rows,
        warnings,
        wall_time_ms: elapsed_ms(start),
    })
}

/// Names of the files written by [`cmd_synth`], without extension.
pub const SYNTH_FILES: [&str; 8] = ["u", "v", "simple", "t_neg", "t_pos", "phi_neg", "phi_pos", "t_neg_inverted"];

/// Writes the model pair and its renderings (epsilon 0) into `out_dir`.
pub fn cmd_synth(out_dir: &Path, format: FileFormat, depth: BitDepth) -> CliResult<SynthReport> {
    let start = Instant::now();
    let (u, v) = model_pair_default();
    let pair = model_target_edge();
    let t_neg = fusion::display_normalize(&fusion::tangent_image(&u, &v, Ordering::Neg, Epsilon::ZERO)?)?;
    let tables = [
        u.clone(),
        v.clone(),
        normalize(&fusion::simple_fuse(&u, &v)?)?,
        t_neg.clone(),
        fusion::display_normalize(&fusion::tangent_image(&u, &v, Ordering::Pos, Epsilon::ZERO)?)?,
        fusion::phi_image(&u, &v, Ordering::Neg, Epsilon::ZERO)?.table,
        fusion::phi_image(&u, &v, Ordering::Pos, Epsilon::ZERO)?.table,
        invert(&t_neg)?,
    ];
    fs::create_dir_all(out_dir).map_err(CliError::io)?;
    let mut files = Vec::with_capacity(SYNTH_FILES.len());
    for (name, table) in SYNTH_FILES.iter().zip(&tables) {
        let path = out_dir.join(format!("{name}.{}", format.extension()));
        raster::save_image(table, &path, format, depth).map_err(CliError::save)?;
        files.push(SynthFile {
            name: name.to_string(),
            path: display_path(&path),
            target_edge_contrast: local_contrast(&as_saved(table, depth)?, pair)?,
        });
    }
    Ok(SynthReport {
        schema_version: SCHEMA_VERSION,
        command: Command::Synth,
        pair,
        bit_depth: bits(depth),
        files,
        wall_time_ms: elapsed_ms(start),
    })
}
