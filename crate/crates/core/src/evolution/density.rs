use crate::algebra::matrix::{self, CMat};
use crate::algebra::{embed_operator, embed_product, SpinOperators};
use crate::error::{Error, Result};
use crate::hamiltonian::{CenterId, SpinCenter, SpinSystem};
use crate::scalar::{creal, lit, Real};

/// Spin density matrix of the full system.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Real> {
    pub mat: CMat<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(mat: CMat<T>) -> Self {
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn trace(&self) -> T {
        matrix::trace(self.mat.as_ref()).re
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        matrix::is_hermitian(self.mat.as_ref(), tol)
    }
}

/// Local electron state of a center: `α P0 + (1 - α) I / N` where `P0`
/// projects on `Ms = 0` along the center's symmetry axis.
fn electron_state<T: Real>(center: &SpinCenter<T>) -> Result<CMat<T>> {
    let n = center.spin.dim();
    let mixed = matrix::scaled(
        matrix::identity::<T>(n).as_ref(),
        creal((T::one() - center.alpha) / lit(n as f64)),
    );
    if center.alpha == T::zero() {
        return Ok(mixed);
    }
    let ops = SpinOperators::<T>::new(center.spin);
    let p0 = ops.zero_projector(&center.zfs_axis)?;
    let mut rho = mixed;
    matrix::add_scaled(&mut rho, p0.as_ref(), creal(center.alpha));
    Ok(rho)
}

/// Product initial state: each center's electron in its polarized state,
/// every nucleus maximally mixed.
pub fn initial_density<T: Real>(system: &SpinSystem<T>) -> Result<DensityMatrix<T>> {
    system.validate()?;
    let dims = system.dims();
    let total = system.total_dim();
    let states: Vec<(usize, CMat<T>)> = system
        .centers()
        .map(|(id, c)| electron_state(c).map(|m| (system.electron_slot(id), m)))
        .collect::<Result<_>>()?;
    let factors: Vec<_> = states.iter().map(|(slot, m)| (*slot, m.as_ref())).collect();
    let electrons = embed_product(&dims, &factors)?;
    let electron_dims: usize = system.centers().map(|(_, c)| c.spin.dim()).product();
    let nuclear_norm = lit::<T>((total / electron_dims) as f64);
    Ok(DensityMatrix::new(matrix::scaled(
        electrons.as_ref(),
        creal(T::one() / nuclear_norm),
    )))
}

/// Projector on the `Ms = 0` sublevel of one center's electron, quantized
/// along that center's symmetry axis, embedded in the full space.
#[derive(Clone, Debug)]
pub struct BrightProjector<T: Real> {
    pub center: CenterId,
    pub mat: CMat<T>,
}

impl<T: Real> BrightProjector<T> {
    pub fn new(system: &SpinSystem<T>, id: CenterId) -> Result<Self> {
        let center = system.center(id).ok_or(Error::MissingSecondCenter)?;
        let ops = SpinOperators::<T>::new(center.spin);
        let p0 = ops.zero_projector(&center.zfs_axis)?;
        let mat = embed_operator(p0.as_ref(), &system.electron_map(id)?)?;
        Ok(BrightProjector { center: id, mat })
    }

    /// Projectors for every center that has an `Ms = 0` sublevel.
    pub fn all(system: &SpinSystem<T>) -> Result<Vec<Self>> {
        system
            .centers()
            .filter(|(_, c)| c.spin.has_zero_projection())
            .map(|(id, _)| BrightProjector::new(system, id))
            .collect()
    }

    /// `Tr(P ρ)`.
    pub fn expectation(&self, rho: &DensityMatrix<T>) -> T {
        let n = self.mat.nrows();
        let mut acc = creal(T::zero());
        for i in 0..n {
            for j in 0..n {
                acc += self.mat[(i, j)] * rho.mat[(j, i)];
            }
        }
        acc.re
    }
}
