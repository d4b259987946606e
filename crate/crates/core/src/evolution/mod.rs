//! Initial state, eigendecomposition and time-averaged bright-state
//! populations.

mod average;
mod density;
mod eigen;
mod oracle;

pub use average::{averaged_population, stationary_density, PopulationEvaluator, HZ_PER_MHZ};
pub use density::{initial_density, BrightProjector, DensityMatrix};
pub use eigen::{eigen_decompose, eigenvalues, EigenSystem};
pub use oracle::time_domain_oracle;
