//! Closed-form exponential time average of the bright-state population.
//!
//! With evolution intervals distributed as `exp(-t/τ)/τ`, every eigenbasis
//! coherence `ρ_ij` is damped by `1 / (1 + 2πi Δ_ij τ)`, `Δ_ij = E_i - E_j`.

use faer::{Mat, MatRef};
use num_complex::Complex;

use super::density::{BrightProjector, DensityMatrix};
use super::eigen::EigenSystem;
use crate::algebra::matrix::{self, CMat};
use crate::error::{Error, Result};
use crate::scalar::{creal, lit, to_f64, Real};

/// Energies are in MHz and τ in seconds; `Δ·τ·HZ_PER_MHZ` is in cycles.
pub const HZ_PER_MHZ: f64 = 1e6;

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidTau(tau));
    }
    Ok(())
}

/// `2π Δ τ` in radians for each eigenvalue pair, as a closure over indices.
fn phase_rate<T: Real>(es: &EigenSystem<T>, tau: f64) -> impl Fn(usize, usize) -> T + '_ {
    let scale = lit::<T>(2.0 * std::f64::consts::PI * tau * HZ_PER_MHZ);
    move |i, j| (es.energies[i] - es.energies[j]) * scale
}

/// An operator kept diagonal when it is, so eigenbasis transforms can skip
/// zero rows.
#[derive(Clone, Debug)]
enum Operator<T: Real> {
    Diagonal(Vec<T>),
    Dense(CMat<T>),
}

impl<T: Real> Operator<T> {
    fn from_mat(m: &CMat<T>) -> Self {
        match matrix::exact_diagonal(m.as_ref()) {
            Some(d) if d.iter().all(|z| z.im == T::zero()) => {
                Operator::Diagonal(d.into_iter().map(|z| z.re).collect())
            }
            _ => Operator::Dense(m.clone()),
        }
    }

    /// `V† O V`.
    fn in_eigenbasis(&self, v: MatRef<'_, Complex<T>>) -> CMat<T> {
        match self {
            Operator::Dense(m) => matrix::sandwich(v, m.as_ref()),
            Operator::Diagonal(d) if d.iter().all(|&x| x >= T::zero()) => {
                // V† D V = W† W with W = sqrt(D) V restricted to nonzero rows
                let rows: Vec<usize> = (0..d.len()).filter(|&k| d[k] != T::zero()).collect();
                let w = Mat::from_fn(rows.len(), v.ncols(), |r, c| {
                    v[(rows[r], c)] * creal(d[rows[r]].sqrt())
                });
                matrix::adjoint_mul(w.as_ref(), w.as_ref())
            }
            Operator::Diagonal(d) => {
                let dv = Mat::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * creal(d[r]));
                matrix::adjoint_mul(v, dv.as_ref())
            }
        }
    }
}

/// Evaluates time-averaged populations of several projectors for a fixed
/// initial state, reusing what can be reused across field points.
#[derive(Clone, Debug)]
pub struct PopulationEvaluator<T: Real> {
    rho: Operator<T>,
    projectors: Vec<Operator<T>>,
    /// `ρ0 = a·I + b·P_k` for projector `k`.
    rho_affine: Option<(usize, T, T)>,
}

impl<T: Real> PopulationEvaluator<T> {
    pub fn new(rho0: &DensityMatrix<T>, projectors: &[&CMat<T>]) -> Self {
        let rho = Operator::from_mat(&rho0.mat);
        let projectors: Vec<Operator<T>> =
            projectors.iter().map(|p| Operator::from_mat(p)).collect();
        let rho_affine = match &rho {
            Operator::Diagonal(r) => projectors.iter().enumerate().find_map(|(k, p)| match p {
                Operator::Diagonal(p) => affine_fit(r, p).map(|(a, b)| (k, a, b)),
                Operator::Dense(_) => None,
            }),
            Operator::Dense(_) => None,
        };
        PopulationEvaluator {
            rho,
            projectors,
            rho_affine,
        }
    }

    pub fn projector_count(&self) -> usize {
        self.projectors.len()
    }

    /// `Tr(P_k V ρst V†)` for every projector.
    pub fn populations(&self, es: &EigenSystem<T>, tau: f64) -> Result<Vec<T>> {
        check_tau(tau)?;
        let v = es.vectors.as_ref();
        let rate = phase_rate(es, tau);
        let n = es.dim();
        let in_eb: Vec<CMat<T>> = self.projectors.iter().map(|p| p.in_eigenbasis(v)).collect();

        if let Some((k, a, b)) = self.rho_affine {
            if self.projectors.len() == 1 {
                return Ok(vec![affine_population(&in_eb[k], a, b, &rate, n)?]);
            }
        }
        let rho_eb = match self.rho_affine {
            Some((k, a, b)) => {
                let mut m = matrix::scaled(in_eb[k].as_ref(), creal(b));
                for i in 0..n {
                    m[(i, i)] += creal(a);
                }
                m
            }
            None => self.rho.in_eigenbasis(v),
        };
        in_eb
            .iter()
            .map(|p_eb| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..n {
                    for i in 0..n {
                        let w = rate(i, j);
                        let x = rho_eb[(i, j)] * p_eb[(i, j)].conj();
                        acc += damp(x, w);
                    }
                }
                finish(acc)
            })
            .collect()
    }
}

/// `r = a + b·p` elementwise, if such `a`, `b` exist.
fn affine_fit<T: Real>(r: &[T], p: &[T]) -> Option<(T, T)> {
    let first = p[0];
    let other = p.iter().position(|&x| x != first)?;
    let b = (r[other] - r[0]) / (p[other] - first);
    let a = r[0] - b * first;
    let scale = r
        .iter()
        .fold(T::zero(), |m, &x| if x.abs() > m { x.abs() } else { m });
    let tol = scale * lit(1e-14);
    r.iter()
        .zip(p)
        .all(|(&ri, &pi)| (ri - (a + b * pi)).abs() <= tol)
        .then_some((a, b))
}

/// `Σ_ij K_ij (a δ_ij + b B_ij) B_ji = a Tr B + b Σ_ij K_ij |B_ij|²`.
fn affine_population<T: Real>(
    p_eb: &CMat<T>,
    a: T,
    b: T,
    rate: &impl Fn(usize, usize) -> T,
    n: usize,
) -> Result<T> {
    let mut diag = T::zero();
    let mut coh = T::zero();
    for i in 0..n {
        diag += p_eb[(i, i)].re;
        coh += p_eb[(i, i)].norm_sqr();
        for j in (i + 1)..n {
            let w = rate(i, j);
            // K_ij + K_ji = 2 / (1 + w²)
            coh += p_eb[(i, j)].norm_sqr() * lit::<T>(2.0) / (T::one() + w * w);
        }
    }
    finish(creal(a * diag + b * coh))
}

/// `x / (1 + i w)`.
#[inline]
fn damp<T: Real>(x: Complex<T>, w: T) -> Complex<T> {
    let den = T::one() + w * w;
    Complex::new((x.re + w * x.im) / den, (x.im - w * x.re) / den)
}

/// Takes the real part after checking the imaginary residue, and snaps
/// values within tolerance of the `[0, 1]` bounds onto them.
fn finish<T: Real>(z: Complex<T>) -> Result<T> {
    let tol = T::structural_tol();
    if !(z.im.abs() <= tol) {
        return Err(Error::ImaginaryResidue(to_f64(z.im)));
    }
    let v = z.re;
    if !(v >= -tol && v <= T::one() + tol) {
        return Err(Error::PopulationOutOfRange(to_f64(v)));
    }
    Ok(if v < T::zero() {
        T::zero()
    } else if v > T::one() {
        T::one()
    } else {
        v
    })
}

/// Exponentially time-averaged population `Tr(P ρst)` of one projector.
pub fn averaged_population<T: Real>(
    rho0: &DensityMatrix<T>,
    es: &EigenSystem<T>,
    proj: &BrightProjector<T>,
    tau: f64,
) -> Result<T> {
    check_tau(tau)?;
    Ok(PopulationEvaluator::new(rho0, &[&proj.mat]).populations(es, tau)?[0])
}

/// The time-averaged density matrix in the original basis.
pub fn stationary_density<T: Real>(
    rho0: &DensityMatrix<T>,
    es: &EigenSystem<T>,
    tau: f64,
) -> Result<DensityMatrix<T>> {
    check_tau(tau)?;
    let v = es.vectors.as_ref();
    let rate = phase_rate(es, tau);
    let eb = matrix::sandwich(v, rho0.mat.as_ref());
    let filtered = Mat::from_fn(eb.nrows(), eb.ncols(), |i, j| damp(eb[(i, j)], rate(i, j)));
    Ok(DensityMatrix::new(matrix::sandwich_adjoint(
        v,
        filtered.as_ref(),
    )))
}
