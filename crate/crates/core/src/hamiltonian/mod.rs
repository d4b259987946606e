//! Lab-frame spin Hamiltonian for one or two coupled defect centers.
//!
//! Units: MHz for every coupling and matrix element, Gauss for fields.
//! Nuclear Zeeman and rhombic zero-field terms are not modeled.

mod system;
mod terms;

pub use system::{CenterId, FieldPoint, Nucleus, SpinCenter, SpinSystem};
pub use terms::{
    assemble_hamiltonian, dipolar_term, hfc_term, quadrupole_term, zeeman_term, zfs_term,
    HamiltonianModel, BOHR_MHZ_PER_GAUSS,
};
