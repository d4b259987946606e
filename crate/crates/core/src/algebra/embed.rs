//! Placement of single-subsystem operators into a product Hilbert space.

use faer::{Mat, MatRef};
use num_complex::Complex;

use super::matrix::CMat;
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};

/// Ordered subsystem dimensions plus the slot an operator is placed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMap {
    dims: Vec<usize>,
    target: usize,
}

impl EmbeddingMap {
    pub fn new(dims: Vec<usize>, target: usize) -> Result<Self> {
        if target >= dims.len() {
            return Err(Error::SlotOutOfRange {
                index: target,
                len: dims.len(),
            });
        }
        Ok(EmbeddingMap { dims, target })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn retarget(&self, target: usize) -> Result<Self> {
        EmbeddingMap::new(self.dims.clone(), target)
    }
}

/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` with `op` at the map's target slot.
pub fn embed_operator<T: Real>(op: MatRef<'_, Complex<T>>, map: &EmbeddingMap) -> Result<CMat<T>> {
    embed_product(map.dims(), &[(map.target(), op)])
}

/// Kronecker product over all slots with the given operators placed at their
/// slots and identities elsewhere. Slots must be distinct.
pub fn embed_product<T: Real>(
    dims: &[usize],
    factors: &[(usize, MatRef<'_, Complex<T>>)],
) -> Result<CMat<T>> {
    for (slot, op) in factors {
        let Some(&d) = dims.get(*slot) else {
            return Err(Error::SlotOutOfRange {
                index: *slot,
                len: dims.len(),
            });
        };
        if op.nrows() != d || op.ncols() != d {
            return Err(Error::DimensionMismatch {
                op: op.nrows(),
                slot: d,
            });
        }
    }
    debug_assert!(
        {
            let mut s: Vec<usize> = factors.iter().map(|f| f.0).collect();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        },
        "duplicate slots in embed_product"
    );

    let total: usize = dims.iter().product();
    // stride of each slot in the flattened index (last slot fastest)
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let placed: Vec<Option<MatRef<'_, Complex<T>>>> = (0..dims.len())
        .map(|k| factors.iter().find(|f| f.0 == k).map(|f| f.1))
        .collect();

    let zero = creal(T::zero());
    Ok(Mat::from_fn(total, total, |row, col| {
        let mut acc = creal(T::one());
        for k in 0..dims.len() {
            let r = (row / strides[k]) % dims[k];
            let c = (col / strides[k]) % dims[k];
            match placed[k] {
                Some(op) => {
                    acc *= op[(r, c)];
                    if acc == zero {
                        return zero;
                    }
                }
                None if r != c => return zero,
                None => {}
            }
        }
        acc
    }))
}
