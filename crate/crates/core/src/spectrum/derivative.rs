use super::sweep::{Spectrum, Trace};
use crate::error::{Error, Result};

/// `dy/dx` from three-point Lagrange stencils, valid on nonuniform grids.
/// End points use second-order one-sided stencils.
pub fn differentiate(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::GridMismatch);
    }
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(
            "abscissae must be strictly increasing".into(),
        ));
    }
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        let (h1, h2) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        d[i] = -h2 / (h1 * (h1 + h2)) * y[i - 1]
            + (h2 - h1) / (h1 * h2) * y[i]
            + h1 / (h2 * (h1 + h2)) * y[i + 1];
    }
    let (h1, h2) = (x[1] - x[0], x[2] - x[1]);
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1]
        - h1 / (h2 * (h1 + h2)) * y[2];
    let (h1, h2) = (x[n - 2] - x[n - 3], x[n - 1] - x[n - 2]);
    d[n - 1] = h2 / (h1 * (h1 + h2)) * y[n - 3] - (h1 + h2) / (h1 * h2) * y[n - 2]
        + (2.0 * h2 + h1) / (h2 * (h1 + h2)) * y[n - 1];
    Ok(d)
}

/// Field derivative of the spectrum and its traces, in 1/G.
pub fn derivative(spec: &Spectrum) -> Result<Spectrum> {
    let values = differentiate(&spec.fields, &spec.values)?;
    let traces = spec
        .traces
        .iter()
        .map(|t| {
            Ok(Trace {
                name: t.name.clone(),
                values: differentiate(&spec.fields, &t.values)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Spectrum {
        fields: spec.fields.clone(),
        values,
        traces,
        meta: spec.meta.clone(),
    })
}

/// Cumulative trapezoid integral starting at zero.
pub fn cumulative_trapezoid(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(y.len());
    let mut acc = 0.0;
    for i in 0..y.len() {
        if i > 0 {
            acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
        }
        out.push(acc);
    }
    out
}
