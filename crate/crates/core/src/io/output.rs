//! Tab-separated spectra with `#` metadata headers.
//!
//! The run description is embedded verbatim in `# config` lines so that a
//! file can be traced back to, and re-parsed into, the configuration that
//! produced it.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::spectrum::{Crossing, CrossingKind, Spectrum};

const MAGIC: &str = "# lacsim spectrum";
const COLUMNS: &str = "# columns";
const CONFIG: &str = "# config";

/// Hex SHA-256 of a config's canonical TOML text.
pub fn config_hash(cfg: &RunConfig) -> Result<String> {
    let digest = Sha256::digest(cfg.to_toml()?.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

fn fmt_value(v: f64) -> String {
    format!("{v:.12e}")
}

/// Renders a spectrum, its optional derivative and run metadata as TSV.
pub fn render_spectrum(
    spec: &Spectrum,
    derivative: Option<&Spectrum>,
    config: Option<&RunConfig>,
    extra: &[(&str, String)],
) -> Result<String> {
    let mut columns: Vec<(String, &[f64])> = vec![("value".into(), &spec.values)];
    if let Some(d) = derivative {
        if d.fields != spec.fields {
            return Err(Error::GridMismatch);
        }
        columns.push(("d_value_per_gauss".into(), &d.values));
    }
    for t in &spec.traces {
        columns.push((t.name.clone(), &t.values));
    }
    if let Some(d) = derivative {
        for t in &d.traces {
            columns.push((format!("d_{}_per_gauss", t.name), &t.values));
        }
    }
    if columns.iter().any(|(_, c)| c.len() != spec.fields.len()) {
        return Err(Error::GridMismatch);
    }

    let mut out = String::new();
    let m = &spec.meta;
    writeln!(out, "{MAGIC}").ok();
    if !m.label.is_empty() {
        writeln!(out, "# label\t{}", m.label).ok();
    }
    let tau_note = match config {
        Some(c) if c.tau_is_default() => " (default)",
        _ => "",
    };
    writeln!(out, "# tau_s\t{:e}{tau_note}", m.tau_s).ok();
    if !m.alphas.is_empty() {
        let a: Vec<String> = m.alphas.iter().map(|a| a.to_string()).collect();
        writeln!(out, "# alphas\t{}", a.join(",")).ok();
    }
    writeln!(out, "# dim\t{}", m.dim).ok();
    if let (Some(first), Some(last)) = (spec.fields.first(), spec.fields.last()) {
        writeln!(out, "# grid_gauss\t{first}\t{last}\t{}", spec.fields.len()).ok();
    }
    for (label, w) in &m.components {
        writeln!(out, "# component\t{label}\t{w}").ok();
    }
    for (k, v) in extra {
        writeln!(out, "# {k}\t{v}").ok();
    }
    if let Some(cfg) = config {
        writeln!(out, "# config_sha256\t{}", config_hash(cfg)?).ok();
        for line in cfg.to_toml()?.lines() {
            writeln!(out, "{CONFIG}\t{line}").ok();
        }
    }
    let names: Vec<&str> = columns.iter().map(|(n, _)| n.as_str()).collect();
    writeln!(out, "{COLUMNS}\tB0_gauss\t{}", names.join("\t")).ok();
    for (i, b) in spec.fields.iter().enumerate() {
        out.push_str(&fmt_value(*b));
        for (_, c) in &columns {
            out.push('\t');
            out.push_str(&fmt_value(c[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_spectrum(
    path: &Path,
    spec: &Spectrum,
    derivative: Option<&Spectrum>,
    config: Option<&RunConfig>,
    extra: &[(&str, String)],
) -> Result<()> {
    write_file(path, &render_spectrum(spec, derivative, config, extra)?)
}

/// A spectrum file read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumTable {
    pub fields: Vec<f64>,
    /// Named value columns after `B0_gauss`.
    pub columns: Vec<(String, Vec<f64>)>,
    /// `# key<TAB>value` header lines other than the embedded config.
    pub meta: Vec<(String, String)>,
    pub config: Option<RunConfig>,
}

impl SpectrumTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn parse_spectrum(text: &str) -> Result<SpectrumTable> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, MAGIC)) => {}
        _ => return Err(Error::Format("missing spectrum header".into())),
    }
    let mut meta = Vec::new();
    let mut config_text: Option<String> = None;
    let mut names: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix(CONFIG).and_then(|r| r.strip_prefix('\t')) {
            let t = config_text.get_or_insert_with(String::new);
            t.push_str(rest);
            t.push('\n');
        } else if let Some(rest) = line
            .strip_prefix(COLUMNS)
            .and_then(|r| r.strip_prefix('\t'))
        {
            let cols: Vec<String> = rest.split('\t').map(str::to_string).collect();
            if cols.first().map(String::as_str) != Some("B0_gauss") || cols.len() < 2 {
                return Err(Error::Format(format!("line {}: bad column header", n + 1)));
            }
            names = Some(cols);
        } else if let Some(rest) = line.strip_prefix("# ") {
            let (k, v) = rest.split_once('\t').unwrap_or((rest, ""));
            meta.push((k.to_string(), v.to_string()));
        } else if line.trim().is_empty() {
            continue;
        } else {
            let width = names
                .as_ref()
                .ok_or_else(|| Error::Format(format!("line {}: data before column header", n + 1)))?
                .len();
            let row = line
                .split('\t')
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Format(format!("line {}: {e}", n + 1)))?;
            if row.len() != width {
                return Err(Error::Format(format!(
                    "line {}: expected {width} columns, got {}",
                    n + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
    }
    let names = names.ok_or_else(|| Error::Format("missing column header".into()))?;
    let config = config_text
        .map(|t| {
            toml::from_str::<RunConfig>(&t)
                .map_err(|e| Error::Format(format!("embedded config: {e}")))
        })
        .transpose()?;
    let fields = rows.iter().map(|r| r[0]).collect();
    let columns = names
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, name)| (name.clone(), rows.iter().map(|r| r[j]).collect()))
        .collect();
    Ok(SpectrumTable {
        fields,
        columns,
        meta,
        config,
    })
}

pub fn read_spectrum(path: &Path) -> Result<SpectrumTable> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_spectrum(&text)
}

/// A located crossing with the component and orientation member it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossingRow {
    pub component: String,
    pub member: usize,
    pub crossing: Crossing,
}

pub fn render_crossings(rows: &[CrossingRow]) -> String {
    let mut out = String::from("# lacsim crossings\n# columns\tcomponent\tmember\tfield_gauss\tlower\tupper\tmin_gap_mhz\tkind\n");
    for r in rows {
        let c = &r.crossing;
        let kind = match c.kind {
            CrossingKind::Crossing => "crossing",
            CrossingKind::AntiCrossing => "anticrossing",
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{kind}",
            r.component,
            r.member,
            fmt_value(c.field_gauss),
            c.lower,
            c.upper(),
            fmt_value(c.min_gap_mhz)
        )
        .ok();
    }
    out
}

pub fn write_crossings(path: &Path, rows: &[CrossingRow]) -> Result<()> {
    write_file(path, &render_crossings(rows))
}
