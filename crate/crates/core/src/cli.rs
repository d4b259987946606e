//! Command-line driver.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

use crate::error::{Error, Result};
use crate::io::{
    load_preset, parse_config, render_crossings, render_spectrum, write_crossings, write_spectrum,
    CrossingRow, RunConfig, PRESET_NAMES,
};
use crate::spectrum::{
    compose, derivative, find_crossings, orientation_average, Spectrum, SweepOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lacsim",
    version,
    about = "Level anti-crossing spectra of coupled defect spins in diamond",
    arg_required_else_help = true,
    after_help = format!("Presets: {}", PRESET_NAMES.join(", "))
)]
struct Args {
    /// TOML run description
    #[arg(
        long,
        value_name = "PATH",
        conflicts_with = "preset",
        required_unless_present = "preset"
    )]
    config: Option<PathBuf>,
    /// Built-in run description
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Lower field bound, Gauss
    #[arg(long, value_name = "GAUSS", allow_negative_numbers = true)]
    b_min: Option<f64>,
    /// Upper field bound, Gauss
    #[arg(long, value_name = "GAUSS", allow_negative_numbers = true)]
    b_max: Option<f64>,
    /// Number of field points
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    points: Option<i64>,
    /// Mean evolution time, seconds
    #[arg(long, value_name = "SECONDS", allow_negative_numbers = true)]
    tau: Option<f64>,
    /// Spectrum file; stdout when absent
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Add field-derivative columns
    #[arg(long)]
    derivative: bool,
    /// Also write the level-crossing table
    #[arg(long)]
    crossings: bool,
    /// Add per-center bright-population columns
    #[arg(long)]
    traces: bool,
    /// Worker threads (default: all cores)
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Recorded in the output header; the computation itself is deterministic
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
}

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub spectrum: Spectrum,
    pub derivative: Option<Spectrum>,
    pub crossings: Option<Vec<CrossingRow>>,
    pub dim: usize,
    pub members: usize,
}

/// Sweeps every component, composes them and derives what the config asks for.
pub fn execute(cfg: &RunConfig, threads: usize) -> Result<RunOutput> {
    cfg.validate()?;
    let grid = cfg.grid.build()?;
    let tau = cfg.tau();
    let opts = SweepOptions {
        threads,
        traces: cfg.output.traces,
    };
    let mut parts = Vec::with_capacity(cfg.components.len());
    let mut dim = 0;
    let mut members = 0;
    for comp in &cfg.components {
        let ensemble = comp.ensemble::<f64>()?;
        dim = dim.max(ensemble.max_dim());
        members += ensemble.members.len();
        let mut s = orientation_average(&ensemble, &grid, tau, &opts)?;
        s.meta.label = comp.label.clone();
        parts.push((s, comp.weight));
    }
    let mut spectrum = compose(&parts)?;
    spectrum.meta.label = cfg.label.clone();
    let derivative = if cfg.output.derivative {
        Some(derivative(&spectrum)?)
    } else {
        None
    };
    let crossings = if cfg.output.crossings {
        let opts = cfg.crossings.options(threads);
        let mut rows = Vec::new();
        for comp in &cfg.components {
            for (i, m) in comp.members.iter().enumerate() {
                for c in find_crossings(&m.system.build::<f64>()?, &grid, &opts)? {
                    rows.push(CrossingRow {
                        component: comp.label.clone(),
                        member: i + 1,
                        crossing: c,
                    });
                }
            }
        }
        Some(rows)
    } else {
        None
    };
    Ok(RunOutput {
        spectrum,
        derivative,
        crossings,
        dim,
        members,
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. }
        | Error::AtField { .. }
        | Error::EigenFailure
        | Error::NotHermitian { .. }
        | Error::ImaginaryResidue(_)
        | Error::PopulationOutOfRange(_)
        | Error::Format(_) => EXIT_RUNTIME,
        _ => EXIT_VALIDATION,
    }
}

fn crossings_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    output.with_file_name(format!("{stem}.crossings.tsv"))
}

fn load(args: &Args) -> Result<RunConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        (None, Some(name)) => load_preset(name)?,
        (None, None) => {
            return Err(Error::Validation(
                "either --config or --preset is required".into(),
            ))
        }
    };
    if let Some(b) = args.b_min {
        cfg.grid.b_min_gauss = b;
    }
    if let Some(b) = args.b_max {
        cfg.grid.b_max_gauss = b;
    }
    if let Some(n) = args.points {
        cfg.grid.points = n;
    }
    if args.tau.is_some() {
        cfg.tau_s = args.tau;
    }
    cfg.output.derivative |= args.derivative;
    cfg.output.crossings |= args.crossings;
    cfg.output.traces |= args.traces;
    if let Some(p) = &args.output {
        cfg.output.path = Some(p.to_string_lossy().into_owned());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let started = Instant::now();
    let cfg = load(args)?;
    let result = execute(&cfg, args.threads.unwrap_or(0))?;
    let extra: Vec<(&str, String)> = args.seed.iter().map(|s| ("seed", s.to_string())).collect();
    let write_err = |e: std::io::Error| Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    let mut summary = format!(
        "lacsim: dim={} members={} points={}",
        result.dim,
        result.members,
        result.spectrum.len()
    );
    match cfg.output.path.as_deref().map(Path::new) {
        Some(path) => {
            write_spectrum(
                path,
                &result.spectrum,
                result.derivative.as_ref(),
                Some(&cfg),
                &extra,
            )?;
            if let Some(rows) = &result.crossings {
                let cpath = crossings_path(path);
                write_crossings(&cpath, rows)?;
                summary.push_str(&format!(" crossings={} ({})", rows.len(), cpath.display()));
            }
            summary.push_str(&format!(" output={}", path.display()));
        }
        None => {
            let text = render_spectrum(
                &result.spectrum,
                result.derivative.as_ref(),
                Some(&cfg),
                &extra,
            )?;
            out.write_all(text.as_bytes()).map_err(write_err)?;
            if let Some(rows) = &result.crossings {
                out.write_all(render_crossings(rows).as_bytes())
                    .map_err(write_err)?;
                summary.push_str(&format!(" crossings={}", rows.len()));
            }
        }
    }
    summary.push_str(&format!(" wall={:.3}s", started.elapsed().as_secs_f64()));
    writeln!(err, "{summary}").map_err(write_err)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            // a bare invocation prints help on the error path
            return if e.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                EXIT_USAGE
            } else {
                code
            };
        }
    };
    match run(&args, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "lacsim: error: {e}");
            exit_code(&e)
        }
    }
}
