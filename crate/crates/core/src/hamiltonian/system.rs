use nalgebra::Vector3;

use crate::algebra::tensor::check_unit;
use crate::algebra::{AxialTensor, EmbeddingMap, Spin};
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

/// A nuclear spin hyperfine-coupled to the electron of its center.
#[derive(Clone, Debug, PartialEq)]
pub struct Nucleus<T: Real> {
    pub spin: Spin,
    /// Hyperfine tensor, MHz.
    pub hfc: AxialTensor<T>,
    /// Quadrupole coupling `Q`, MHz. Ignored for spin-1/2.
    pub quadrupole_q: T,
    pub quadrupole_axis: Vector3<T>,
}

fn finite<T: Real>(x: T, what: &'static str) -> Result<()> {
    if to_f64(x).is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

impl<T: Real> Nucleus<T> {
    /// Nucleus whose hyperfine and quadrupole tensors share one axis.
    pub fn axial(
        spin: Spin,
        a_parallel: T,
        a_perpendicular: T,
        q: T,
        axis: Vector3<T>,
    ) -> Result<Self> {
        Ok(Nucleus {
            spin,
            hfc: AxialTensor::new(a_parallel, a_perpendicular, axis)?,
            quadrupole_q: q,
            quadrupole_axis: axis,
        })
    }

    pub fn validate(&self) -> Result<()> {
        finite(self.hfc.parallel, "hyperfine parallel component")?;
        finite(self.hfc.perpendicular, "hyperfine perpendicular component")?;
        finite(self.quadrupole_q, "quadrupole coupling")?;
        check_unit(&self.hfc.axis)?;
        check_unit(&self.quadrupole_axis)
    }
}

/// One paramagnetic center: electron spin, g-tensor, axial zero-field
/// splitting and the nuclei coupled to it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinCenter<T: Real> {
    pub spin: Spin,
    pub g: AxialTensor<T>,
    /// Axial zero-field splitting `D`, MHz.
    pub zfs_d: T,
    /// Symmetry axis of the center.
    pub zfs_axis: Vector3<T>,
    pub nuclei: Vec<Nucleus<T>>,
    /// Degree of optical polarization into `Ms = 0` along `zfs_axis`.
    pub alpha: T,
}

impl<T: Real> SpinCenter<T> {
    pub fn validate(&self) -> Result<()> {
        finite(self.g.parallel, "g parallel")?;
        finite(self.g.perpendicular, "g perpendicular")?;
        finite(self.zfs_d, "zero-field splitting")?;
        check_unit(&self.g.axis)?;
        check_unit(&self.zfs_axis)?;
        let a = to_f64(self.alpha);
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidAlpha(a));
        }
        if a > 0.0 && !self.spin.has_zero_projection() {
            return Err(Error::NoBrightState {
                spin: self.spin.value(),
            });
        }
        if self.spin == Spin::HALF && self.zfs_d != T::zero() {
            return Err(Error::ZfsOnSpinHalf {
                d: to_f64(self.zfs_d),
            });
        }
        self.nuclei.iter().try_for_each(Nucleus::validate)
    }

    /// Subsystem dimensions: electron first, then nuclei in order.
    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.spin.dim()).chain(self.nuclei.iter().map(|n| n.spin.dim()))
    }

    pub fn slot_count(&self) -> usize {
        1 + self.nuclei.len()
    }
}

/// One or two coupled centers.
///
/// Subsystems are ordered `[electron 1, nuclei of 1.., electron 2, nuclei of 2..]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSystem<T: Real> {
    pub center1: SpinCenter<T>,
    pub center2: Option<SpinCenter<T>>,
    /// Dipolar coupling constant, MHz.
    pub d_dd: T,
    /// Unit vector between the two centers.
    pub n12: Vector3<T>,
}

/// Which center of a [`SpinSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CenterId {
    First,
    Second,
}

impl<T: Real> SpinSystem<T> {
    pub fn single(center: SpinCenter<T>) -> Self {
        SpinSystem {
            center1: center,
            center2: None,
            d_dd: T::zero(),
            n12: Vector3::z(),
        }
    }

    pub fn pair(center1: SpinCenter<T>, center2: SpinCenter<T>, d_dd: T, n12: Vector3<T>) -> Self {
        SpinSystem {
            center1,
            center2: Some(center2),
            d_dd,
            n12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.center1.validate()?;
        if let Some(c2) = &self.center2 {
            c2.validate()?;
            finite(self.d_dd, "dipolar coupling")?;
            check_unit(&self.n12)?;
        }
        Ok(())
    }

    pub fn center(&self, id: CenterId) -> Option<&SpinCenter<T>> {
        match id {
            CenterId::First => Some(&self.center1),
            CenterId::Second => self.center2.as_ref(),
        }
    }

    pub fn centers(&self) -> impl Iterator<Item = (CenterId, &SpinCenter<T>)> {
        std::iter::once((CenterId::First, &self.center1))
            .chain(self.center2.iter().map(|c| (CenterId::Second, c)))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.centers().flat_map(|(_, c)| c.dims()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().product()
    }

    /// Slot index of a center's electron spin.
    pub fn electron_slot(&self, id: CenterId) -> usize {
        match id {
            CenterId::First => 0,
            CenterId::Second => self.center1.slot_count(),
        }
    }

    pub fn nucleus_slot(&self, id: CenterId, index: usize) -> usize {
        self.electron_slot(id) + 1 + index
    }

    /// Map targeting the electron of `id`.
    pub fn electron_map(&self, id: CenterId) -> Result<EmbeddingMap> {
        EmbeddingMap::new(self.dims(), self.electron_slot(id))
    }

    pub fn nucleus_map(&self, id: CenterId, index: usize) -> Result<EmbeddingMap> {
        EmbeddingMap::new(self.dims(), self.nucleus_slot(id, index))
    }

    /// Applies a lab-frame rotation to every tensor axis and `n12`.
    pub fn rotated(&self, rotation: &nalgebra::Rotation3<T>) -> Self {
        let rot_center = |c: &SpinCenter<T>| SpinCenter {
            g: c.g.rotated(rotation),
            zfs_axis: rotation * c.zfs_axis,
            nuclei: c
                .nuclei
                .iter()
                .map(|n| Nucleus {
                    hfc: n.hfc.rotated(rotation),
                    quadrupole_axis: rotation * n.quadrupole_axis,
                    ..n.clone()
                })
                .collect(),
            ..c.clone()
        };
        SpinSystem {
            center1: rot_center(&self.center1),
            center2: self.center2.as_ref().map(rot_center),
            d_dd: self.d_dd,
            n12: rotation * self.n12,
        }
    }
}

/// External field vector, Gauss.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldPoint<T: Real> {
    pub b0: Vector3<T>,
}

impl<T: Real> FieldPoint<T> {
    pub fn new(b0: Vector3<T>) -> Self {
        FieldPoint { b0 }
    }

    /// Field of `magnitude` Gauss along the unit vector `direction`.
    pub fn along(direction: &Vector3<T>, magnitude: T) -> Self {
        FieldPoint {
            b0: direction * magnitude,
        }
    }

    pub fn zero() -> Self {
        FieldPoint {
            b0: Vector3::zeros(),
        }
    }
}
