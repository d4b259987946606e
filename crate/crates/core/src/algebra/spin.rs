//! Angular-momentum matrices for a single spin.

use std::fmt;

use faer::Mat;
use serde::{Deserialize, Serialize};

use super::matrix::{self, CMat};
use crate::error::{Error, Result};
use crate::scalar::{cplx, creal, lit, Real};

/// Spin quantum number, stored as `2s` so half-integers are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice: 1 };
    pub const ONE: Spin = Spin { twice: 2 };

    pub fn new(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !twice.is_finite() || twice < 1.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidSpin(s));
        }
        Ok(Spin {
            twice: twice.round() as u32,
        })
    }

    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice == 0 {
            return Err(Error::InvalidSpin(0.0));
        }
        Ok(Spin { twice })
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Multiplicity `2s + 1`.
    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }

    /// `s(s + 1)`.
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }

    /// Integer spins have an `m = 0` sublevel.
    pub fn has_zero_projection(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    /// Projection quantum numbers in basis order: `s, s - 1, ..., -s`.
    pub fn projections(self) -> impl Iterator<Item = f64> {
        let s = self.value();
        (0..self.dim()).map(move |k| s - k as f64)
    }
}

impl TryFrom<f64> for Spin {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        Spin::new(s)
    }
}

impl From<Spin> for f64 {
    fn from(s: Spin) -> f64 {
        s.value()
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `Sx`, `Sy`, `Sz` in the `|s, m>` basis ordered by descending `m`.
#[derive(Clone, Debug)]
pub struct SpinOperators<T: Real> {
    pub spin: Spin,
    pub sx: CMat<T>,
    pub sy: CMat<T>,
    pub sz: CMat<T>,
}

impl<T: Real> SpinOperators<T> {
    pub fn new(spin: Spin) -> Self {
        let n = spin.dim();
        let s = spin.value();
        let m: Vec<f64> = spin.projections().collect();

        // <m + 1| S+ |m> sits at (k - 1, k) for m = m[k].
        let mut sp = matrix::zeros::<T>(n);
        for k in 1..n {
            let amp = (s * (s + 1.0) - m[k] * (m[k] + 1.0)).sqrt();
            sp[(k - 1, k)] = creal(lit(amp));
        }
        let half = lit::<T>(0.5);
        let sx = Mat::from_fn(n, n, |i, j| (sp[(i, j)] + sp[(j, i)].conj()) * creal(half));
        // Sy = (S+ - S-) / 2i
        let sy = Mat::from_fn(n, n, |i, j| {
            (sp[(i, j)] - sp[(j, i)].conj()) * cplx(T::zero(), -half)
        });
        let sz = matrix::diag(&m.iter().map(|&v| lit::<T>(v)).collect::<Vec<_>>());
        SpinOperators { spin, sx, sy, sz }
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// Components in `[x, y, z]` order.
    pub fn components(&self) -> [&CMat<T>; 3] {
        [&self.sx, &self.sy, &self.sz]
    }

    /// `n · S` for a lab-frame direction `n`.
    pub fn along(&self, n: &nalgebra::Vector3<T>) -> CMat<T> {
        let mut out = matrix::zeros::<T>(self.dim());
        for (a, op) in self.components().into_iter().enumerate() {
            matrix::add_scaled(&mut out, op.as_ref(), creal(n[a]));
        }
        out
    }

    /// Projector onto the `m = 0` eigenspace of `n · S`.
    ///
    /// Built as the Lagrange product `prod_{m != 0} (n·S - m) / (-m)`, so it
    /// is exact for any integer spin and needs no eigensolver.
    pub fn zero_projector(&self, n: &nalgebra::Vector3<T>) -> Result<CMat<T>> {
        if !self.spin.has_zero_projection() {
            return Err(Error::NoBrightState {
                spin: self.spin.value(),
            });
        }
        let ns = self.along(n);
        let dim = self.dim();
        let mut p = matrix::identity::<T>(dim);
        for m in self.spin.projections().filter(|&m| m != 0.0) {
            let mut factor = ns.clone();
            for i in 0..dim {
                factor[(i, i)] -= creal(lit::<T>(m));
            }
            let factor = matrix::scaled(factor.as_ref(), creal(lit::<T>(-1.0 / m)));
            p = matrix::matmul(p.as_ref(), factor.as_ref());
        }
        Ok(p)
    }
}

/// Builds the spin matrices for quantum number `s`.
pub fn make_spin_operators<T: Real>(s: f64) -> Result<SpinOperators<T>> {
    Ok(SpinOperators::new(Spin::new(s)?))
}
