//! Built-in run descriptions for the standard defect geometries.
//!
//! The lab z axis is the symmetry axis of the first NV center. Tilted
//! orientations lie at the tetrahedral angle from z. Pairs are separated
//! along the tilted bond direction in the xz plane, so that every part of
//! the dipolar tensor couples the two spins.

use crate::algebra::Spin;
use crate::error::{Error, Result};

use super::config::{
    CenterConfig, ComponentConfig, Direction, GridConfig, MemberConfig, NucleusConfig, RunConfig,
    SystemConfig,
};

pub const PRESET_NAMES: [&str; 6] = [
    "nv_isolated_parallel",
    "nv_isolated_tilted",
    "nv_p1",
    "nv_p1_c13",
    "nv_nv",
    "nv_nv_c13",
];

pub const NV_G_PARALLEL: f64 = 2.0029;
pub const NV_G_PERPENDICULAR: f64 = 2.0031;
pub const NV_D_MHZ: f64 = 2872.0;
pub const NV_N14_A_PARALLEL_MHZ: f64 = -2.2;
pub const NV_N14_A_PERPENDICULAR_MHZ: f64 = -2.7;
pub const N14_Q_MHZ: f64 = -4.8;
pub const P1_G: f64 = 2.0023;
pub const P1_N14_A_PARALLEL_MHZ: f64 = 114.0;
pub const P1_N14_A_PERPENDICULAR_MHZ: f64 = 81.0;
pub const DIPOLAR_MHZ: f64 = 1.0;
pub const NV_C13_A_MHZ: f64 = 100.0;
pub const P1_C13_A_PARALLEL_MHZ: f64 = 340.0;
pub const P1_C13_A_PERPENDICULAR_MHZ: f64 = 140.0;
pub const TILTED_ALPHA: f64 = 0.7;

/// Unit vector at the tetrahedral angle from z with the given azimuth.
pub fn tilted_axis(azimuth_deg: f64) -> [f64; 3] {
    let s = 8f64.sqrt() / 3.0;
    let phi = azimuth_deg.to_radians();
    [s * phi.cos(), s * phi.sin(), -1.0 / 3.0]
}

fn z() -> Direction {
    Direction::Vector([0.0, 0.0, 1.0])
}

fn nv(axis: Direction, alpha: f64) -> CenterConfig {
    CenterConfig {
        spin: Spin::ONE,
        g_parallel: NV_G_PARALLEL,
        g_perpendicular: NV_G_PERPENDICULAR,
        d_mhz: NV_D_MHZ,
        axis,
        alpha,
        nuclei: vec![NucleusConfig {
            spin: Spin::ONE,
            a_parallel_mhz: NV_N14_A_PARALLEL_MHZ,
            a_perpendicular_mhz: NV_N14_A_PERPENDICULAR_MHZ,
            q_mhz: N14_Q_MHZ,
            axis: None,
        }],
    }
}

fn p1(axis: Direction) -> CenterConfig {
    CenterConfig {
        spin: Spin::HALF,
        g_parallel: P1_G,
        g_perpendicular: P1_G,
        d_mhz: 0.0,
        axis,
        alpha: 0.0,
        nuclei: vec![NucleusConfig {
            spin: Spin::ONE,
            a_parallel_mhz: P1_N14_A_PARALLEL_MHZ,
            a_perpendicular_mhz: P1_N14_A_PERPENDICULAR_MHZ,
            q_mhz: N14_Q_MHZ,
            axis: None,
        }],
    }
}

fn carbon(a_parallel: f64, a_perpendicular: f64) -> NucleusConfig {
    NucleusConfig {
        spin: Spin::HALF,
        a_parallel_mhz: a_parallel,
        a_perpendicular_mhz: a_perpendicular,
        q_mhz: 0.0,
        axis: None,
    }
}

/// The four bond directions: z and three tilted ones.
fn four_axes() -> Vec<Direction> {
    std::iter::once(z())
        .chain([0.0, 120.0, 240.0].map(|a| Direction::Vector(tilted_axis(a))))
        .collect()
}

fn pair_members(
    second: impl Fn(Direction) -> CenterConfig,
    first: CenterConfig,
    axes: Vec<Direction>,
) -> Vec<MemberConfig> {
    let weight = 1.0 / axes.len() as f64;
    axes.into_iter()
        .map(|axis| MemberConfig {
            weight,
            system: SystemConfig {
                d_dd_mhz: DIPOLAR_MHZ,
                n12: Some(Direction::Vector(tilted_axis(0.0))),
                center1: first.clone(),
                center2: Some(second(axis)),
            },
        })
        .collect()
}

fn single(label: &str, center: CenterConfig, grid: GridConfig) -> RunConfig {
    run(
        label,
        grid,
        vec![MemberConfig {
            weight: 1.0,
            system: SystemConfig {
                d_dd_mhz: 0.0,
                n12: None,
                center1: center,
                center2: None,
            },
        }],
    )
}

fn run(label: &str, grid: GridConfig, members: Vec<MemberConfig>) -> RunConfig {
    RunConfig {
        label: label.to_string(),
        tau_s: None,
        grid,
        output: Default::default(),
        crossings: Default::default(),
        components: vec![ComponentConfig {
            label: label.to_string(),
            weight: 1.0,
            members,
        }],
    }
}

/// A complete run description for one of [`PRESET_NAMES`].
pub fn load_preset(name: &str) -> Result<RunConfig> {
    let grid = GridConfig::default();
    let tilted_axes = || {
        [0.0, 120.0, 240.0]
            .map(|a| Direction::Vector(tilted_axis(a)))
            .to_vec()
    };
    let cfg = match name {
        "nv_isolated_parallel" => single(name, nv(z(), 1.0), grid),
        "nv_isolated_tilted" => single(
            name,
            nv(z(), TILTED_ALPHA),
            GridConfig {
                direction: Direction::Vector(tilted_axis(0.0)),
                ..grid
            },
        ),
        "nv_p1" => run(name, grid, pair_members(p1, nv(z(), 1.0), four_axes())),
        "nv_p1_c13" => {
            let with_carbon = |axis: Direction| {
                let mut c = p1(axis);
                c.nuclei
                    .push(carbon(P1_C13_A_PARALLEL_MHZ, P1_C13_A_PERPENDICULAR_MHZ));
                c
            };
            run(
                name,
                grid,
                pair_members(with_carbon, nv(z(), 1.0), four_axes()),
            )
        }
        "nv_nv" => run(
            name,
            grid,
            pair_members(|a| nv(a, TILTED_ALPHA), nv(z(), 1.0), tilted_axes()),
        ),
        "nv_nv_c13" => {
            let mut first = nv(z(), 1.0);
            first.nuclei.push(carbon(NV_C13_A_MHZ, NV_C13_A_MHZ));
            run(
                name,
                grid,
                pair_members(|a| nv(a, TILTED_ALPHA), first, tilted_axes()),
            )
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(cfg)
}
