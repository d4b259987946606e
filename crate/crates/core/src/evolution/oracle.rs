//! Time-domain reference for the averaged population that never
//! diagonalizes the Hamiltonian.
//!
//! With `G_T = (1/τ) ∫_0^T e^{-t/τ} U(t)† P U(t) dt`, doubling the window
//! gives `G_{2T} = G_T + e^{-T/τ} U_T† G_T U_T`. The first window is short
//! enough to integrate with Simpson's rule on Taylor-series propagators.

use faer::Mat;
use num_complex::Complex;

use super::average::HZ_PER_MHZ;
use crate::algebra::matrix::{self, CMat};
use crate::error::{Error, Result};

const WINDOWS_OF_TAU: f64 = 40.0;

fn frobenius(m: &CMat<f64>) -> f64 {
    let mut s = 0.0;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            s += m[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}

/// `exp(-i 2π H t)` by Taylor series; `t` in microseconds, `‖2πHt‖` small.
fn propagator(h: &CMat<f64>, t_us: f64) -> CMat<f64> {
    let n = h.nrows();
    let a = matrix::scaled(
        h.as_ref(),
        Complex::new(0.0, -2.0 * std::f64::consts::PI * t_us),
    );
    let mut out = matrix::identity::<f64>(n);
    let mut term = matrix::identity::<f64>(n);
    for k in 1..60 {
        term = matrix::scaled(
            matrix::matmul(term.as_ref(), a.as_ref()).as_ref(),
            Complex::new(1.0 / k as f64, 0.0),
        );
        matrix::add_scaled(&mut out, term.as_ref(), Complex::new(1.0, 0.0));
        if frobenius(&term) < 1e-20 {
            break;
        }
    }
    out
}

/// Reference value of `(1/τ) ∫ e^{-t/τ} Tr(P U(t) ρ0 U(t)†) dt` with `H` in
/// MHz and `τ` in seconds. `samples` Simpson intervals cover the first
/// window.
pub fn time_domain_oracle(
    h: &CMat<f64>,
    rho0: &CMat<f64>,
    proj: &CMat<f64>,
    tau: f64,
    samples: usize,
) -> Result<f64> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidTau(tau));
    }
    if samples < 2 {
        return Err(Error::TooFewPoints(samples));
    }
    let tr_prod = |a: &CMat<f64>, b: &CMat<f64>| {
        matrix::trace(matrix::matmul(a.as_ref(), b.as_ref()).as_ref()).re
    };
    let norm = frobenius(h);
    if norm == 0.0 {
        return Ok(tr_prod(proj, rho0));
    }
    let tau_us = tau * HZ_PER_MHZ;
    let window = (1.0 / (2.0 * std::f64::consts::PI * norm)).min(tau_us / 8.0);
    let n = samples + samples % 2;
    let dt = window / n as f64;

    let step = propagator(h, dt);
    let mut u = matrix::identity::<f64>(h.nrows());
    let mut g: CMat<f64> = Mat::zeros(h.nrows(), h.ncols());
    for k in 0..=n {
        let w = if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let t = k as f64 * dt;
        let weight = w * dt / 3.0 * (-t / tau_us).exp() / tau_us;
        let heis = matrix::sandwich(u.as_ref(), proj.as_ref());
        matrix::add_scaled(&mut g, heis.as_ref(), Complex::new(weight, 0.0));
        if k < n {
            u = matrix::matmul(step.as_ref(), u.as_ref());
        }
    }

    let mut span = window;
    while span < WINDOWS_OF_TAU * tau_us {
        let shifted = matrix::sandwich(u.as_ref(), g.as_ref());
        matrix::add_scaled(
            &mut g,
            shifted.as_ref(),
            Complex::new((-span / tau_us).exp(), 0.0),
        );
        u = matrix::matmul(u.as_ref(), u.as_ref());
        span *= 2.0;
    }
    Ok(tr_prod(&g, rho0))
}
