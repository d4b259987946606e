use rayon::prelude::*;

use super::grid::FieldGrid;
use super::sweep::thread_pool;
use crate::error::{Error, Result};
use crate::evolution::{eigen_decompose, eigenvalues, BrightProjector};
use crate::hamiltonian::{CenterId, HamiltonianModel, SpinSystem};
use crate::scalar::{lit, to_f64, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    /// Gap closes below the floor.
    Crossing,
    /// Gap stays open.
    AntiCrossing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub field_gauss: f64,
    /// Index of the lower level in ascending order; the upper one is `lower + 1`.
    pub lower: usize,
    pub min_gap_mhz: f64,
    pub kind: CrossingKind,
}

impl Crossing {
    pub fn upper(&self) -> usize {
        self.lower + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LevelPairFilter {
    /// Keep pairs where, just outside the minimum, one level carries at
    /// least `min_contrast` more bright (first center `Ms = 0`) weight
    /// than the other.
    BrightDark { min_contrast: f64 },
    /// Keep only the pair `(lower, lower + 1)`.
    Lower(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingOptions {
    /// Only gap minima below this are reported, MHz.
    pub gap_threshold_mhz: f64,
    /// Minima below this are exact crossings, MHz.
    pub gap_floor_mhz: f64,
    pub filter: Option<LevelPairFilter>,
    pub threads: usize,
}

impl Default for CrossingOptions {
    fn default() -> Self {
        CrossingOptions {
            gap_threshold_mhz: 10.0,
            gap_floor_mhz: 1e-3,
            filter: None,
            threads: 0,
        }
    }
}

const GOLDEN: f64 = 0.381_966_011_250_105_1;

struct GapProbe<'a, T: Real> {
    model: &'a HamiltonianModel<T>,
    direction: nalgebra::Vector3<T>,
}

impl<T: Real> GapProbe<'_, T> {
    fn energies(&self, b: f64) -> Result<Vec<f64>> {
        let h = self.model.along(&self.direction, lit(b));
        Ok(eigenvalues(&h)
            .map_err(|e| e.at_field(b))?
            .into_iter()
            .map(to_f64)
            .collect())
    }

    fn gap(&self, b: f64, k: usize) -> Result<f64> {
        let e = self.energies(b)?;
        Ok(e[k + 1] - e[k])
    }

    /// Golden-section search for the gap minimum inside `[a, c]`.
    fn refine(&self, mut a: f64, mut c: f64, k: usize) -> Result<(f64, f64)> {
        let mut x1 = a + GOLDEN * (c - a);
        let mut x2 = c - GOLDEN * (c - a);
        let mut g1 = self.gap(x1, k)?;
        let mut g2 = self.gap(x2, k)?;
        while c - a > 1e-7 * (1.0 + c.abs()) {
            if g1 <= g2 {
                c = x2;
                x2 = x1;
                g2 = g1;
                x1 = a + GOLDEN * (c - a);
                g1 = self.gap(x1, k)?;
            } else {
                a = x1;
                x1 = x2;
                g1 = g2;
                x2 = c - GOLDEN * (c - a);
                g2 = self.gap(x2, k)?;
            }
        }
        Ok(if g1 <= g2 { (x1, g1) } else { (x2, g2) })
    }
}

/// Indices of interior local minima of `g` that stand out from the
/// neighbouring maxima by at least `floor` and by the minimum value itself.
fn prominent_minima(g: &[f64], threshold: f64, floor: f64) -> Vec<usize> {
    let n = g.len();
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if !(g[i] < g[i - 1]) {
            i += 1;
            continue;
        }
        // flat bottoms count once, at their middle
        let mut j = i;
        while j + 1 < n && g[j + 1] == g[i] {
            j += 1;
        }
        if j + 1 < n && g[j + 1] > g[i] && g[i] < threshold {
            let mut left = i - 1;
            while left > 0 && g[left - 1] >= g[left] {
                left -= 1;
            }
            let mut right = j + 1;
            while right + 1 < n && g[right + 1] >= g[right] {
                right += 1;
            }
            let rise = g[left].min(g[right]) - g[i];
            if rise > floor && rise > g[i] {
                out.push((i + j) / 2);
            }
        }
        i = j + 1;
    }
    out
}

fn bright_weights<T: Real>(
    model: &HamiltonianModel<T>,
    direction: &nalgebra::Vector3<T>,
    proj: &BrightProjector<T>,
    b: f64,
) -> Result<Vec<f64>> {
    let es = eigen_decompose(&model.along(direction, lit(b))).map_err(|e| e.at_field(b))?;
    let n = es.dim();
    Ok((0..n)
        .map(|c| {
            let mut w = T::zero();
            for i in 0..n {
                for j in 0..n {
                    w += (es.vectors[(i, c)].conj() * proj.mat[(i, j)] * es.vectors[(j, c)]).re;
                }
            }
            to_f64(w)
        })
        .collect())
}

/// Locates minima of adjacent-level gaps along the grid and refines them.
pub fn find_crossings<T: Real>(
    system: &SpinSystem<T>,
    grid: &FieldGrid,
    opts: &CrossingOptions,
) -> Result<Vec<Crossing>> {
    if !(opts.gap_floor_mhz >= 0.0) || !(opts.gap_threshold_mhz > opts.gap_floor_mhz) {
        return Err(Error::Validation(format!(
            "gap threshold {} MHz must exceed gap floor {} MHz",
            opts.gap_threshold_mhz, opts.gap_floor_mhz
        )));
    }
    let model = HamiltonianModel::new(system)?;
    let d = grid.direction();
    let probe = GapProbe {
        model: &model,
        direction: nalgebra::Vector3::new(lit::<T>(d.x), lit(d.y), lit(d.z)),
    };
    let fields = grid.fields();
    let pool = thread_pool(opts.threads)?;
    let levels: Vec<Vec<f64>> = pool.install(|| {
        fields
            .par_iter()
            .map(|&b| probe.energies(b))
            .collect::<Result<_>>()
    })?;

    let n = model.dim();
    let mut candidates = Vec::new();
    for k in 0..n.saturating_sub(1) {
        if let Some(LevelPairFilter::Lower(want)) = opts.filter {
            if k != want {
                continue;
            }
        }
        let gaps: Vec<f64> = levels.iter().map(|e| e[k + 1] - e[k]).collect();
        for i in prominent_minima(&gaps, opts.gap_threshold_mhz, opts.gap_floor_mhz) {
            candidates.push((i, k));
        }
    }

    let bright = match opts.filter {
        Some(LevelPairFilter::BrightDark { .. }) => {
            Some(BrightProjector::new(system, CenterId::First)?)
        }
        _ => None,
    };
    let mut found = pool
        .install(|| {
            candidates
                .par_iter()
                .map(|&(i, k)| {
                    let (field, gap) = probe.refine(fields[i - 1], fields[i + 1], k)?;
                    if let (Some(p), Some(LevelPairFilter::BrightDark { min_contrast })) =
                        (&bright, opts.filter)
                    {
                        let w = bright_weights(&model, &probe.direction, p, fields[i - 1])?;
                        if (w[k] - w[k + 1]).abs() < min_contrast {
                            return Ok(None);
                        }
                    }
                    Ok(Some(Crossing {
                        field_gauss: field,
                        lower: k,
                        min_gap_mhz: gap,
                        kind: if gap < opts.gap_floor_mhz {
                            CrossingKind::Crossing
                        } else {
                            CrossingKind::AntiCrossing
                        },
                    }))
                })
                .collect::<Result<Vec<_>>>()
        })?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    found.sort_by(|a, b| {
        a.field_gauss
            .total_cmp(&b.field_gauss)
            .then(a.lower.cmp(&b.lower))
    });
    Ok(found)
}
