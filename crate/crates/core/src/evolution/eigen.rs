use faer::Side;
use num_complex::Complex;

use crate::algebra::matrix::{self, CMat};
use crate::error::{Error, Result};
use crate::scalar::{cabs, creal, Real};

/// Eigenvalues (ascending, MHz) and the unitary matrix of eigenvectors
/// stored as columns.
#[derive(Clone, Debug)]
pub struct EigenSystem<T: Real> {
    pub energies: Vec<T>,
    pub vectors: CMat<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// `V diag(E) V†`.
    pub fn reconstruct(&self) -> CMat<T> {
        let n = self.dim();
        let scaled =
            faer::Mat::from_fn(n, n, |i, j| self.vectors[(i, j)] * creal(self.energies[j]));
        let mut out = matrix::zeros::<T>(n);
        faer::linalg::matmul::matmul(
            out.as_mut(),
            faer::Accum::Replace,
            scaled.as_ref(),
            self.vectors.adjoint(),
            creal(T::one()),
            faer::Par::Seq,
        );
        out
    }
}

fn check_hermitian<T: Real>(h: &CMat<T>) -> Result<()> {
    if !matrix::is_hermitian(h.as_ref(), T::structural_tol()) {
        return Err(Error::NotHermitian {
            residual: crate::scalar::to_f64(matrix::hermiticity_residual(h.as_ref())),
        });
    }
    Ok(())
}

/// Full Hermitian eigendecomposition.
///
/// Energies are ascending. Each eigenvector is rephased so that its
/// largest-magnitude component (first one on ties) is real and positive.
pub fn eigen_decompose<T: Real>(h: &CMat<T>) -> Result<EigenSystem<T>> {
    check_hermitian(h)?;
    let evd = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::EigenFailure)?;
    let n = h.nrows();
    let s = evd.S();
    let u = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        s[a].re
            .partial_cmp(&s[b].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut vectors = matrix::zeros::<T>(n);
    let mut energies = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        energies.push(s[k].re);
        let mut best = 0;
        let mut best_mag = T::zero();
        for i in 0..n {
            let m = cabs(u[(i, k)]);
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        let pivot = u[(best, k)];
        let phase = if best_mag > T::zero() {
            pivot.conj() * creal(T::one() / best_mag)
        } else {
            creal(T::one())
        };
        for i in 0..n {
            vectors[(i, col)] = u[(i, k)] * phase;
        }
        vectors[(best, col)] = Complex::new(best_mag, T::zero());
    }
    Ok(EigenSystem { energies, vectors })
}

/// Ascending eigenvalues only.
pub fn eigenvalues<T: Real>(h: &CMat<T>) -> Result<Vec<T>> {
    check_hermitian(h)?;
    let mut e = h
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::EigenFailure)?;
    e.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(e)
}
