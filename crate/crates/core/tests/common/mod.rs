//! Line finding on sampled spectra.

#![allow(dead_code)]

use lacsim::io::load_preset;
use lacsim::spectrum::{orientation_average, FieldGrid, Spectrum, SweepOptions};
use lacsim::Result;

#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub index: usize,
    pub field: f64,
    pub prominence: f64,
}

/// Local minima with topographic prominence of at least `min_prominence`.
/// Plateaus count once, at their middle. End points are never lines.
pub fn dips(fields: &[f64], values: &[f64], min_prominence: f64) -> Vec<Line> {
    let n = values.len();
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        let mut j = i;
        while j + 1 < n && values[j + 1] == values[i] {
            j += 1;
        }
        if j + 1 < n && values[i - 1] > values[i] && values[j + 1] > values[i] {
            let v = values[i];
            let mut left = v;
            for k in (0..i).rev() {
                if values[k] < v {
                    break;
                }
                left = left.max(values[k]);
            }
            let mut right = v;
            for &x in &values[j + 1..] {
                if x < v {
                    break;
                }
                right = right.max(x);
            }
            let prominence = left.min(right) - v;
            if prominence >= min_prominence {
                let mid = (i + j) / 2;
                out.push(Line {
                    index: mid,
                    field: fields[mid],
                    prominence,
                });
            }
        }
        i = j + 1;
    }
    out
}

pub fn peaks(fields: &[f64], values: &[f64], min_prominence: f64) -> Vec<Line> {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    dips(fields, &neg, min_prominence)
}

/// Dips and peaks together, ordered by field.
pub fn features(fields: &[f64], values: &[f64], min_prominence: f64) -> Vec<Line> {
    let mut all = dips(fields, values, min_prominence);
    all.extend(peaks(fields, values, min_prominence));
    all.sort_by(|a, b| a.field.total_cmp(&b.field));
    all
}

/// Splits field-ordered lines wherever neighbours are more than `gap` apart.
pub fn group(lines: &[Line], gap: f64) -> Vec<Vec<Line>> {
    let mut out: Vec<Vec<Line>> = Vec::new();
    for l in lines {
        match out.last_mut() {
            Some(g) if l.field - g.last().unwrap().field <= gap => g.push(*l),
            _ => out.push(vec![*l]),
        }
    }
    out
}

/// The most prominent member of a group.
pub fn strongest(group: &[Line]) -> Line {
    *group
        .iter()
        .max_by(|a, b| a.prominence.total_cmp(&b.prominence))
        .unwrap()
}

/// Prominence-weighted position of a group, carrying its largest prominence.
pub fn centroid(group: &[Line]) -> Line {
    let w: f64 = group.iter().map(|l| l.prominence).sum();
    let field = group.iter().map(|l| l.field * l.prominence).sum::<f64>() / w;
    Line {
        field,
        ..strongest(group)
    }
}

pub fn within(lines: &[Line], lo: f64, hi: f64) -> Vec<Line> {
    lines
        .iter()
        .copied()
        .filter(|l| l.field >= lo && l.field <= hi)
        .collect()
}

pub fn argmin(values: &[f64]) -> usize {
    (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap()
}

/// Value at the grid point nearest `b`.
pub fn at(fields: &[f64], values: &[f64], b: f64) -> f64 {
    let i = (0..fields.len())
        .min_by(|&x, &y| (fields[x] - b).abs().total_cmp(&(fields[y] - b).abs()))
        .unwrap();
    values[i]
}

/// Orientation-averaged spectrum of a preset on a custom grid.
pub fn preset_spectrum(
    name: &str,
    b_min: f64,
    b_max: f64,
    points: usize,
    tau: f64,
    opts: SweepOptions,
) -> Result<Spectrum> {
    let cfg = load_preset(name)?;
    let mut g = cfg.grid.clone();
    g.b_min_gauss = b_min;
    g.b_max_gauss = b_max;
    g.points = points as i64;
    let grid: FieldGrid = g.build()?;
    orientation_average(&cfg.components[0].ensemble::<f64>()?, &grid, tau, &opts)
}
