use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Uniform grid of field magnitudes along a fixed lab direction.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    b_min: f64,
    b_max: f64,
    n_points: usize,
    direction: Vector3<f64>,
}

impl FieldGrid {
    pub fn new(b_min: f64, b_max: f64, n_points: usize, direction: Vector3<f64>) -> Result<Self> {
        if !b_min.is_finite() || !b_max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "non-finite bounds {b_min}..{b_max}"
            )));
        }
        if b_min >= b_max {
            return Err(Error::InvalidGrid(format!(
                "b_min {b_min} G must be below b_max {b_max} G"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        let norm = direction.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidGrid("field direction has zero length".into()));
        }
        Ok(FieldGrid {
            b_min,
            b_max,
            n_points,
            direction: direction / norm,
        })
    }

    /// 0 to 1200 G in 0.5 G steps.
    pub fn full_range(direction: Vector3<f64>) -> Result<Self> {
        Self::new(0.0, 1200.0, 2401, direction)
    }

    /// 450 to 650 G in 0.1 G steps.
    pub fn satellite_window(direction: Vector3<f64>) -> Result<Self> {
        Self::new(450.0, 650.0, 2001, direction)
    }

    /// 950 to 1100 G in 0.1 G steps.
    pub fn main_line_window(direction: Vector3<f64>) -> Result<Self> {
        Self::new(950.0, 1100.0, 1501, direction)
    }

    pub fn b_min(&self) -> f64 {
        self.b_min
    }

    pub fn b_max(&self) -> f64 {
        self.b_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn direction(&self) -> &Vector3<f64> {
        &self.direction
    }

    pub fn step(&self) -> f64 {
        (self.b_max - self.b_min) / (self.n_points - 1) as f64
    }

    pub fn field(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.b_max
        } else {
            self.b_min + i as f64 * self.step()
        }
    }

    pub fn fields(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.field(i)).collect()
    }

    /// Same range and direction with a different point count.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.b_min, self.b_max, n_points, self.direction)
    }
}
