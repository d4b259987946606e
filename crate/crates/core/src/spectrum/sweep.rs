use rayon::prelude::*;

use super::grid::FieldGrid;
use crate::error::{Error, Result};
use crate::evolution::{eigen_decompose, initial_density, BrightProjector, PopulationEvaluator};
use crate::hamiltonian::{CenterId, HamiltonianModel, SpinSystem};
use crate::scalar::{lit, to_f64, Real};

/// A named column of per-field values alongside the main spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectrumMeta {
    pub label: String,
    pub tau_s: f64,
    /// Polarization degree of each center of the first member.
    pub alphas: Vec<f64>,
    /// Largest Hilbert-space dimension among contributing systems.
    pub dim: usize,
    /// `(label, weight)` of every weighted contribution.
    pub components: Vec<(String, f64)>,
}

/// Bright-state population of the first center versus field, with optional
/// per-center traces.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub fields: Vec<f64>,
    pub values: Vec<f64>,
    pub traces: Vec<Trace>,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn trace(&self, name: &str) -> Option<&[f64]> {
        self.traces
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.values.as_slice())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    /// Also record `center1`, `center2` and `sum` traces.
    pub traces: bool,
}

/// Weighted set of systems, typically one defect geometry in each of its
/// crystallographic orientations.
#[derive(Clone, Debug)]
pub struct OrientationEnsemble<T: Real> {
    pub members: Vec<(SpinSystem<T>, f64)>,
}

impl<T: Real> OrientationEnsemble<T> {
    pub fn new(members: Vec<(SpinSystem<T>, f64)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if let Some((_, w)) = members.iter().find(|(_, w)| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::Validation(format!(
                "orientation weight {w} must be finite and non-negative"
            )));
        }
        Ok(OrientationEnsemble { members })
    }

    pub fn single(system: SpinSystem<T>) -> Self {
        OrientationEnsemble {
            members: vec![(system, 1.0)],
        }
    }

    pub fn max_dim(&self) -> usize {
        self.members
            .iter()
            .map(|(s, _)| s.total_dim())
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))
}

fn sweep_in<T: Real>(
    pool: &rayon::ThreadPool,
    system: &SpinSystem<T>,
    grid: &FieldGrid,
    tau: f64,
    traces: bool,
) -> Result<Spectrum> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidTau(tau));
    }
    let model = HamiltonianModel::new(system)?;
    let rho0 = initial_density(system)?;
    let projectors = if traces {
        BrightProjector::all(system)?
    } else {
        vec![BrightProjector::new(system, CenterId::First)?]
    };
    if projectors.first().map(|p| p.center) != Some(CenterId::First) {
        return Err(Error::NoBrightState {
            spin: system.center1.spin.value(),
        });
    }
    let mats: Vec<_> = projectors.iter().map(|p| &p.mat).collect();
    let evaluator = PopulationEvaluator::new(&rho0, &mats);
    let d = grid.direction();
    let direction = nalgebra::Vector3::new(lit::<T>(d.x), lit(d.y), lit(d.z));
    let fields = grid.fields();

    let rows: Vec<Vec<f64>> = pool.install(|| {
        fields
            .par_iter()
            .map(|&b| {
                let h = model.along(&direction, lit(b));
                eigen_decompose(&h)
                    .and_then(|es| evaluator.populations(&es, tau))
                    .map(|p| p.into_iter().map(to_f64).collect())
                    .map_err(|e| e.at_field(b))
            })
            .collect::<Result<_>>()
    })?;

    let values: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let mut out_traces = Vec::new();
    if traces {
        for (k, p) in projectors.iter().enumerate() {
            let name = match p.center {
                CenterId::First => "center1",
                CenterId::Second => "center2",
            };
            out_traces.push(Trace {
                name: name.into(),
                values: rows.iter().map(|r| r[k]).collect(),
            });
        }
        out_traces.push(Trace {
            name: "sum".into(),
            values: rows.iter().map(|r| r.iter().sum()).collect(),
        });
    }
    Ok(Spectrum {
        fields,
        values,
        traces: out_traces,
        meta: SpectrumMeta {
            label: String::new(),
            tau_s: tau,
            alphas: system.centers().map(|(_, c)| to_f64(c.alpha)).collect(),
            dim: system.total_dim(),
            components: Vec::new(),
        },
    })
}

/// Time-averaged bright-state population at every grid point.
pub fn sweep<T: Real>(
    system: &SpinSystem<T>,
    grid: &FieldGrid,
    tau: f64,
    opts: &SweepOptions,
) -> Result<Spectrum> {
    let pool = thread_pool(opts.threads)?;
    sweep_in(&pool, system, grid, tau, opts.traces)
}

/// Weighted pointwise sum of the member spectra.
pub fn orientation_average<T: Real>(
    ensemble: &OrientationEnsemble<T>,
    grid: &FieldGrid,
    tau: f64,
    opts: &SweepOptions,
) -> Result<Spectrum> {
    if ensemble.members.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let pool = thread_pool(opts.threads)?;
    let spectra = ensemble
        .members
        .iter()
        .enumerate()
        .map(|(i, (system, w))| {
            let mut s = sweep_in(&pool, system, grid, tau, opts.traces)?;
            s.meta.label = format!("orientation {}", i + 1);
            Ok((s, *w))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = weighted_sum(&spectra)?;
    out.meta.alphas = spectra[0].0.meta.alphas.clone();
    Ok(out)
}

/// Weighted superposition of spectra sampled on the same fields.
pub fn compose(spectra: &[(Spectrum, f64)]) -> Result<Spectrum> {
    weighted_sum(spectra)
}

fn weighted_sum(spectra: &[(Spectrum, f64)]) -> Result<Spectrum> {
    let (first, _) = spectra.first().ok_or(Error::EmptyEnsemble)?;
    if spectra.iter().any(|(s, _)| s.fields != first.fields) {
        return Err(Error::GridMismatch);
    }
    let n = first.len();
    let mut values = vec![0.0; n];
    for (s, w) in spectra {
        for (acc, v) in values.iter_mut().zip(&s.values) {
            *acc += w * v;
        }
    }
    // keep only traces every input provides
    let traces = first
        .traces
        .iter()
        .filter(|t| spectra.iter().all(|(s, _)| s.trace(&t.name).is_some()))
        .map(|t| {
            let mut acc = vec![0.0; n];
            for (s, w) in spectra {
                for (a, v) in acc.iter_mut().zip(s.trace(&t.name).unwrap_or_default()) {
                    *a += w * v;
                }
            }
            Trace {
                name: t.name.clone(),
                values: acc,
            }
        })
        .collect();
    let alphas = if spectra
        .iter()
        .all(|(s, _)| s.meta.alphas == first.meta.alphas)
    {
        first.meta.alphas.clone()
    } else {
        Vec::new()
    };
    Ok(Spectrum {
        fields: first.fields.clone(),
        values,
        traces,
        meta: SpectrumMeta {
            label: String::new(),
            tau_s: first.meta.tau_s,
            alphas,
            dim: spectra.iter().map(|(s, _)| s.meta.dim).max().unwrap_or(0),
            components: spectra
                .iter()
                .map(|(s, w)| (s.meta.label.clone(), *w))
                .collect(),
        },
    })
}
