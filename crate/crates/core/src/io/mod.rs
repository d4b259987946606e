//! Run configuration, built-in presets and spectrum files.

mod config;
mod output;
mod presets;

pub use config::{
    parse_config, CenterConfig, ComponentConfig, CrossingConfig, Direction, GridConfig,
    MemberConfig, NucleusConfig, OutputConfig, PairFilter, RunConfig, SystemConfig, DEFAULT_TAU_S,
};
pub use output::{
    config_hash, parse_spectrum, read_spectrum, render_crossings, render_spectrum, write_crossings,
    write_spectrum, CrossingRow, SpectrumTable,
};
pub use presets::*;
