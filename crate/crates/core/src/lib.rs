//! Level anti-crossing spectra of coupled paramagnetic defect centers.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix the precision for the common cases.

// Negated comparisons are how NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod evolution;
pub mod hamiltonian;
pub mod io;
pub mod scalar;
pub mod spectrum;

pub use error::{Error, Result};

pub type CMat64 = algebra::CMat<f64>;
pub type CMat32 = algebra::CMat<f32>;
pub type SpinCenter64 = hamiltonian::SpinCenter<f64>;
pub type SpinCenter32 = hamiltonian::SpinCenter<f32>;
pub type SpinSystem64 = hamiltonian::SpinSystem<f64>;
pub type SpinSystem32 = hamiltonian::SpinSystem<f32>;
pub type HamiltonianModel64 = hamiltonian::HamiltonianModel<f64>;
pub type HamiltonianModel32 = hamiltonian::HamiltonianModel<f32>;
pub type DensityMatrix64 = evolution::DensityMatrix<f64>;
pub type DensityMatrix32 = evolution::DensityMatrix<f32>;
pub type EigenSystem64 = evolution::EigenSystem<f64>;
pub type EigenSystem32 = evolution::EigenSystem<f32>;
pub type OrientationEnsemble64 = spectrum::OrientationEnsemble<f64>;
pub type OrientationEnsemble32 = spectrum::OrientationEnsemble<f32>;
