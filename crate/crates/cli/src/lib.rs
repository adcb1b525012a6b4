//! Command-line front end for `phasefuse`.
//!
//! Each `cmd_*` function loads its inputs, runs the core kernels, writes
//! any image or CSV outputs and returns a serializable report. [`run`]
//! parses arguments, prints reports as JSON lines and maps failures to
//! exit codes: 0 success, 1 usage, 2 data, 3 internal.

mod args;
mod commands;
mod error;
mod method;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use phasefuse::fusion::{ChannelWeights, Epsilon};

pub use args::{Cli, CommandArgs, DepthArg, FormatArg, FusionArgs, ModeArg, ReportArgs};
pub use commands::{
    as_saved, cmd_assess, cmd_compare, cmd_fuse, cmd_sweep, cmd_synth, sweep_file_name,
    CompareOptions, FuseOptions, Mode, DEFAULT_OFFSETS, DEFAULT_SWEEP, SYNTH_FILES,
};
pub use error::{Category, CliError, CliResult};
pub use method::{render, DisplayMap, FusionMethod, MethodDescriptor, MethodTag, Rendering};
pub use report::*;

fn build_method(tag: MethodTag, f: &FusionArgs, warnings: &mut Vec<String>) -> CliResult<FusionMethod> {
    let epsilon = Epsilon::new(f.epsilon).map_err(|e| CliError::usage(e.to_string()))?;
    let mut method = FusionMethod::new(tag).with_epsilon(epsilon).inverted(f.invert);
    if let Some((a, b)) = f.weights {
        let (w, changed) = ChannelWeights::normalized(a, b).map_err(|e| CliError::usage(e.to_string()))?;
        if changed {
            warnings.push(format!("weights ({a}, {b}) renormalized to ({}, {})", w.w_a(), w.w_b()));
        }
        method = method.with_weights(w);
    }
    Ok(method)
}

fn fuse_options(method: FusionMethod, r: &ReportArgs, mode: ModeArg, warnings: Vec<String>) -> FuseOptions {
    let mut opts = FuseOptions::new(method);
    opts.bins = r.bins;
    opts.pair = r.pair;
    if let Some(off) = r.offset {
        opts.offsets = vec![off];
    }
    opts.profile = r.profile;
    opts.mode = match mode {
        ModeArg::Gray => Mode::Gray,
        ModeArg::Rgb => Mode::Rgb,
    };
    opts.depth = r.depth.into();
    opts.warnings = warnings;
    opts
}

fn line<T: Serialize>(doc: &T) -> CliResult<String> {
    to_json_line(doc).map_err(|e| CliError::new(Category::InternalError, e.to_string()))
}

/// Runs one parsed command and returns its report lines and warnings.
pub fn dispatch(cli: Cli) -> CliResult<(Vec<String>, Vec<String>)> {
    let mut warnings = Vec::new();
    let lines = match cli.command {
        CommandArgs::Fuse { u, v, method, fusion, report, mode, out } => {
            let m = build_method(method, &fusion, &mut warnings)?;
            let opts = fuse_options(m, &report, mode, warnings.clone());
            vec![line(&cmd_fuse(&u, &v, &opts, &out)?)?]
        }
        CommandArgs::Sweep { u, v, method, epsilons, fusion, report, mode, format, out } => {
            let m = build_method(method, &fusion, &mut warnings)?;
            let opts = fuse_options(m, &report, mode, warnings.clone());
            cmd_sweep(&u, &v, &opts, &epsilons, &out, format.into())?.iter().map(line).collect::<CliResult<_>>()?
        }
        CommandArgs::Assess { img, bins, profile, out } => vec![line(&cmd_assess(&img, bins, profile, out.as_deref())?)?],
        CommandArgs::Compare { u, v, methods, fusion, bins, pair, depth, out } => {
            let ms = methods
                .iter()
                .map(|&t| build_method(t, &fusion, &mut warnings))
                .collect::<CliResult<Vec<_>>>()?;
            warnings.dedup();
            let opts = CompareOptions { bins, pair, depth: depth.into(), warnings: warnings.clone() };
            let report = cmd_compare(&u, &v, &ms, &opts)?;
            if let Some(csv) = out {
                std::fs::write(csv, report.to_csv()).map_err(CliError::io)?;
            }
            vec![line(&report)?]
        }
        CommandArgs::Synth { format, depth, out } => vec![line(&cmd_synth(&out, format.into(), depth.into())?)?],
    };
    Ok((lines, warnings))
}

/// Full program: parse `args`, run, print, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    let err = CliError::usage(e.kind().to_string());
                    let _ = writeln!(stderr, "{}", err.to_json());
                    err.exit_code()
                }
            };
        }
    };
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli)))
        .unwrap_or_else(|_| Err(CliError::new(Category::InternalError, "internal panic")));
    match outcome {
        Ok((lines, warnings)) => {
            for w in &warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            for l in &lines {
                let _ = writeln!(stdout, "{l}");
            }
            0
        }
        Err(err) => {
            let _ = writeln!(stderr, "{}", err.to_json());
            err.exit_code()
        }
    }
}
