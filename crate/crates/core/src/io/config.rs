//! TOML run description. Every physical key names its unit.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::algebra::{axis_from_angles, AxialTensor, Spin};
use crate::error::{Error, Result};
use crate::hamiltonian::{Nucleus, SpinCenter, SpinSystem};
use crate::scalar::{lit, Real};
use crate::spectrum::{CrossingOptions, FieldGrid, LevelPairFilter, OrientationEnsemble};

pub const DEFAULT_TAU_S: f64 = 1e-4;

/// A direction, either as a vector (normalized on use) or as polar and
/// azimuthal angles from the lab z axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Direction {
    Vector([f64; 3]),
    Angles { polar_deg: f64, azimuth_deg: f64 },
}

impl Default for Direction {
    fn default() -> Self {
        Direction::Vector([0.0, 0.0, 1.0])
    }
}

impl Direction {
    pub fn to_unit(&self) -> Result<Vector3<f64>> {
        match *self {
            Direction::Vector(v) => {
                let v = Vector3::from(v);
                let n = v.norm();
                if !n.is_finite() || n == 0.0 {
                    return Err(Error::Validation(format!(
                        "direction {:?} has no usable length",
                        v.as_slice()
                    )));
                }
                Ok(v / n)
            }
            Direction::Angles {
                polar_deg,
                azimuth_deg,
            } => {
                if !polar_deg.is_finite() || !azimuth_deg.is_finite() {
                    return Err(Error::Validation("direction angles must be finite".into()));
                }
                Ok(axis_from_angles(
                    polar_deg.to_radians(),
                    azimuth_deg.to_radians(),
                ))
            }
        }
    }

    fn to_unit_t<T: Real>(&self) -> Result<Vector3<T>> {
        let v = self.to_unit()?;
        Ok(Vector3::new(lit(v.x), lit(v.y), lit(v.z)))
    }
}

fn is_default<D: Default + PartialEq>(v: &D) -> bool {
    *v == D::default()
}

fn one() -> f64 {
    1.0
}

fn is_one(w: &f64) -> bool {
    *w == 1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusConfig {
    pub spin: Spin,
    pub a_parallel_mhz: f64,
    pub a_perpendicular_mhz: f64,
    #[serde(default, skip_serializing_if = "is_default")]
    pub q_mhz: f64,
    /// Defaults to the host center's axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Direction>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterConfig {
    pub spin: Spin,
    pub g_parallel: f64,
    pub g_perpendicular: f64,
    #[serde(default, skip_serializing_if = "is_default")]
    pub d_mhz: f64,
    #[serde(default)]
    pub axis: Direction,
    #[serde(default, skip_serializing_if = "is_default")]
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nuclei: Vec<NucleusConfig>,
}

impl CenterConfig {
    fn build<T: Real>(&self) -> Result<SpinCenter<T>> {
        let axis = self.axis.to_unit_t::<T>()?;
        let nuclei = self
            .nuclei
            .iter()
            .map(|n| {
                let naxis = match &n.axis {
                    Some(d) => d.to_unit_t::<T>()?,
                    None => axis,
                };
                Nucleus::axial(
                    n.spin,
                    lit(n.a_parallel_mhz),
                    lit(n.a_perpendicular_mhz),
                    lit(n.q_mhz),
                    naxis,
                )
            })
            .collect::<Result<_>>()?;
        Ok(SpinCenter {
            spin: self.spin,
            g: AxialTensor::new(lit(self.g_parallel), lit(self.g_perpendicular), axis)?,
            zfs_d: lit(self.d_mhz),
            zfs_axis: axis,
            nuclei,
            alpha: lit(self.alpha),
        })
    }

    fn numbers(&self) -> Vec<f64> {
        let mut v = vec![
            self.g_parallel,
            self.g_perpendicular,
            self.d_mhz,
            self.alpha,
        ];
        for n in &self.nuclei {
            v.extend([n.a_parallel_mhz, n.a_perpendicular_mhz, n.q_mhz]);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(default, skip_serializing_if = "is_default")]
    pub d_dd_mhz: f64,
    /// Unit vector between the centers; defaults to z.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n12: Option<Direction>,
    pub center1: CenterConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center2: Option<CenterConfig>,
}

impl SystemConfig {
    pub fn build<T: Real>(&self) -> Result<SpinSystem<T>> {
        let c1 = self.center1.build()?;
        let system = match &self.center2 {
            None => SpinSystem::single(c1),
            Some(c2) => {
                let n12 = self.n12.clone().unwrap_or_default().to_unit_t::<T>()?;
                SpinSystem::pair(c1, c2.build()?, lit(self.d_dd_mhz), n12)
            }
        };
        system.validate()?;
        Ok(system)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberConfig {
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: f64,
    pub system: SystemConfig,
}

/// One defect geometry: its orientation members are averaged, then the
/// component enters the composed spectrum with `weight`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentConfig {
    pub label: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub weight: f64,
    pub members: Vec<MemberConfig>,
}

impl ComponentConfig {
    pub fn ensemble<T: Real>(&self) -> Result<OrientationEnsemble<T>> {
        let members = self
            .members
            .iter()
            .map(|m| Ok((m.system.build()?, m.weight)))
            .collect::<Result<_>>()?;
        OrientationEnsemble::new(members)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub b_min_gauss: f64,
    pub b_max_gauss: f64,
    pub points: i64,
    #[serde(default)]
    pub direction: Direction,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            b_min_gauss: 0.0,
            b_max_gauss: 1200.0,
            points: 2401,
            direction: Direction::default(),
        }
    }
}

impl GridConfig {
    pub fn build(&self) -> Result<FieldGrid> {
        if self.points < 2 {
            return Err(Error::Validation(format!(
                "grid.points must be at least 2, got {}",
                self.points
            )));
        }
        FieldGrid::new(
            self.b_min_gauss,
            self.b_max_gauss,
            self.points as usize,
            self.direction.to_unit()?,
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "is_default")]
    pub derivative: bool,
    #[serde(default, skip_serializing_if = "is_default")]
    pub crossings: bool,
    /// Per-center bright populations and their sum as extra columns.
    #[serde(default, skip_serializing_if = "is_default")]
    pub traces: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFilter {
    #[default]
    None,
    BrightDark,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingConfig {
    pub gap_threshold_mhz: f64,
    pub gap_floor_mhz: f64,
    #[serde(default, skip_serializing_if = "is_default")]
    pub filter: PairFilter,
    #[serde(default = "half", skip_serializing_if = "is_half")]
    pub min_contrast: f64,
}

fn half() -> f64 {
    0.5
}

fn is_half(v: &f64) -> bool {
    *v == 0.5
}

impl Default for CrossingConfig {
    fn default() -> Self {
        let d = CrossingOptions::default();
        CrossingConfig {
            gap_threshold_mhz: d.gap_threshold_mhz,
            gap_floor_mhz: d.gap_floor_mhz,
            filter: PairFilter::None,
            min_contrast: 0.5,
        }
    }
}

impl CrossingConfig {
    pub fn options(&self, threads: usize) -> CrossingOptions {
        CrossingOptions {
            gap_threshold_mhz: self.gap_threshold_mhz,
            gap_floor_mhz: self.gap_floor_mhz,
            filter: match self.filter {
                PairFilter::None => None,
                PairFilter::BrightDark => Some(LevelPairFilter::BrightDark {
                    min_contrast: self.min_contrast,
                }),
            },
            threads,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    /// Mean evolution time; unset means [`DEFAULT_TAU_S`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_s: Option<f64>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "is_default")]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "is_default")]
    pub crossings: CrossingConfig,
    pub components: Vec<ComponentConfig>,
}

impl RunConfig {
    pub fn tau(&self) -> f64 {
        self.tau_s.unwrap_or(DEFAULT_TAU_S)
    }

    pub fn tau_is_default(&self) -> bool {
        self.tau_s.is_none()
    }

    /// Checks every invariant, including that all systems build.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Validation(what.to_string()));
        if let Some(t) = self.tau_s {
            if !(t > 0.0) || !t.is_finite() {
                return bad(&format!("tau_s must be positive and finite, got {t}"));
            }
        }
        self.grid.build()?;
        let c = &self.crossings;
        if !c.gap_floor_mhz.is_finite() || !c.gap_threshold_mhz.is_finite() || c.gap_floor_mhz < 0.0
        {
            return bad("crossing gap bounds must be finite and non-negative");
        }
        if c.gap_threshold_mhz <= c.gap_floor_mhz {
            return bad("crossings.gap_threshold_mhz must exceed crossings.gap_floor_mhz");
        }
        if self.components.is_empty() {
            return bad("at least one [[components]] entry is required");
        }
        for comp in &self.components {
            if !(comp.weight >= 0.0) || !comp.weight.is_finite() {
                return bad(&format!(
                    "component `{}` weight must be finite and non-negative",
                    comp.label
                ));
            }
            if comp.members.is_empty() {
                return bad(&format!("component `{}` has no members", comp.label));
            }
            for (i, m) in comp.members.iter().enumerate() {
                let ctx = format!("component `{}` member {}", comp.label, i + 1);
                let mut numbers = vec![m.weight, m.system.d_dd_mhz];
                numbers.extend(m.system.center1.numbers());
                if let Some(c2) = &m.system.center2 {
                    numbers.extend(c2.numbers());
                }
                if numbers.iter().any(|x| !x.is_finite()) {
                    return bad(&format!("{ctx}: all numeric values must be finite"));
                }
                if m.weight < 0.0 {
                    return bad(&format!("{ctx}: weight must be non-negative"));
                }
                m.system
                    .build::<f64>()
                    .map_err(|e| Error::Validation(format!("{ctx}: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Largest Hilbert-space dimension among all members.
    pub fn max_dim(&self) -> Result<usize> {
        let mut dim = 0;
        for comp in &self.components {
            for m in &comp.members {
                dim = dim.max(m.system.build::<f64>()?.total_dim());
            }
        }
        Ok(dim)
    }
}

/// Parses and validates a TOML run description.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}
