//! Small dense-matrix helpers on top of faer.

use faer::{Accum, Mat, MatRef, Par};
use num_complex::Complex;

use crate::scalar::{cabs, creal, Real};

/// Dense complex matrix.
pub type CMat<T> = Mat<Complex<T>>;

pub fn zeros<T: Real>(n: usize) -> CMat<T> {
    Mat::from_fn(n, n, |_, _| creal(T::zero()))
}

pub fn identity<T: Real>(n: usize) -> CMat<T> {
    Mat::from_fn(n, n, |i, j| {
        creal(if i == j { T::one() } else { T::zero() })
    })
}

pub fn diag<T: Real>(d: &[T]) -> CMat<T> {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| creal(if i == j { d[i] } else { T::zero() }))
}

/// `a * b` without implicit parallelism.
pub fn matmul<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> CMat<T> {
    let mut out = Mat::from_fn(a.nrows(), b.ncols(), |_, _| creal(T::zero()));
    faer::linalg::matmul::matmul(
        out.as_mut(),
        Accum::Replace,
        a,
        b,
        creal(T::one()),
        Par::Seq,
    );
    out
}

/// `a^dagger * b`.
pub fn adjoint_mul<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> CMat<T> {
    let mut out = Mat::from_fn(a.ncols(), b.ncols(), |_, _| creal(T::zero()));
    faer::linalg::matmul::matmul(
        out.as_mut(),
        Accum::Replace,
        a.adjoint(),
        b,
        creal(T::one()),
        Par::Seq,
    );
    out
}

/// `u^dagger * m * u`.
pub fn sandwich<T: Real>(u: MatRef<'_, Complex<T>>, m: MatRef<'_, Complex<T>>) -> CMat<T> {
    let mu = matmul(m, u);
    adjoint_mul(u, mu.as_ref())
}

/// `u * m * u^dagger`.
pub fn sandwich_adjoint<T: Real>(u: MatRef<'_, Complex<T>>, m: MatRef<'_, Complex<T>>) -> CMat<T> {
    let um = matmul(u, m);
    let mut out = Mat::from_fn(u.nrows(), u.nrows(), |_, _| creal(T::zero()));
    faer::linalg::matmul::matmul(
        out.as_mut(),
        Accum::Replace,
        um.as_ref(),
        u.adjoint(),
        creal(T::one()),
        Par::Seq,
    );
    out
}

pub fn add_scaled<T: Real>(acc: &mut CMat<T>, m: MatRef<'_, Complex<T>>, k: Complex<T>) {
    for j in 0..acc.ncols() {
        for i in 0..acc.nrows() {
            acc[(i, j)] += m[(i, j)] * k;
        }
    }
}

pub fn scaled<T: Real>(m: MatRef<'_, Complex<T>>, k: Complex<T>) -> CMat<T> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * k)
}

pub fn sub<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> CMat<T> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] - b[(i, j)])
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> CMat<T> {
    let (bn, bm) = (b.nrows(), b.ncols());
    Mat::from_fn(a.nrows() * bn, a.ncols() * bm, |i, j| {
        a[(i / bn, j / bm)] * b[(i % bn, j % bm)]
    })
}

pub fn trace<T: Real>(m: MatRef<'_, Complex<T>>) -> Complex<T> {
    (0..m.nrows().min(m.ncols())).fold(creal(T::zero()), |acc, i| acc + m[(i, i)])
}

pub fn max_abs<T: Real>(m: MatRef<'_, Complex<T>>) -> T {
    let mut best = T::zero();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let a = cabs(m[(i, j)]);
            if a > best {
                best = a;
            }
        }
    }
    best
}

/// Largest `|m - m^dagger|` element.
pub fn hermiticity_residual<T: Real>(m: MatRef<'_, Complex<T>>) -> T {
    let n = m.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            let r = cabs(m[(i, j)] - m[(j, i)].conj());
            #[allow(clippy::eq_op)]
            if r != r {
                return r;
            }
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// Hermitian to `tol` relative to the largest element (absolute when the
/// matrix is zero).
pub fn is_hermitian<T: Real>(m: MatRef<'_, Complex<T>>, tol: T) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let scale = max_abs(m);
    let scale = if scale > T::one() { scale } else { T::one() };
    hermiticity_residual(m) <= tol * scale
}

/// Returns the diagonal when every off-diagonal element is exactly zero.
pub fn exact_diagonal<T: Real>(m: MatRef<'_, Complex<T>>) -> Option<Vec<Complex<T>>> {
    let n = m.nrows();
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] != creal(T::zero()) {
                return None;
            }
        }
    }
    Some((0..n).map(|i| m[(i, i)]).collect())
}

pub fn commutator<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> CMat<T> {
    let ab = matmul(a, b);
    let ba = matmul(b, a);
    sub(ab.as_ref(), ba.as_ref())
}

/// Max element of `|a - b|`.
pub fn max_abs_diff<T: Real>(a: MatRef<'_, Complex<T>>, b: MatRef<'_, Complex<T>>) -> T {
    max_abs(sub(a, b).as_ref())
}
