//! Field sweeps, orientation averages, composition, derivatives and level
//! crossing search.

mod crossings;
mod derivative;
mod grid;
mod sweep;

pub use crossings::{find_crossings, Crossing, CrossingKind, CrossingOptions, LevelPairFilter};
pub use derivative::{cumulative_trapezoid, derivative, differentiate};
pub use grid::FieldGrid;
pub use sweep::{
    compose, orientation_average, sweep, OrientationEnsemble, Spectrum, SpectrumMeta, SweepOptions,
    Trace,
};
