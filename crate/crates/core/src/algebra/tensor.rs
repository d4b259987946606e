//! Axially symmetric interaction tensors and frame rotations.

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// A tensor with principal values `(perpendicular, perpendicular, parallel)`
/// whose unique axis points along `axis` in the lab frame.
#[derive(Clone, Debug, PartialEq)]
pub struct AxialTensor<T: Real> {
    pub parallel: T,
    pub perpendicular: T,
    pub axis: Vector3<T>,
}

impl<T: Real> AxialTensor<T> {
    pub fn new(parallel: T, perpendicular: T, axis: Vector3<T>) -> Result<Self> {
        check_unit(&axis)?;
        Ok(AxialTensor {
            parallel,
            perpendicular,
            axis,
        })
    }

    pub fn isotropic(value: T) -> Self {
        AxialTensor {
            parallel: value,
            perpendicular: value,
            axis: Vector3::z(),
        }
    }

    /// Traceless tensor with principal values `{2k/3, -k/3, -k/3}`, so that
    /// `Sᵀ T S = k (S_z'^2 - S(S+1)/3)`.
    pub fn traceless(k: T, axis: Vector3<T>) -> Result<Self> {
        let third = k / lit(3.0);
        AxialTensor::new(third + third, -third, axis)
    }

    pub fn is_isotropic(&self) -> bool {
        self.parallel == self.perpendicular
    }

    pub fn rotated(&self, rotation: &Rotation3<T>) -> Self {
        AxialTensor {
            axis: rotation * self.axis,
            ..self.clone()
        }
    }

    pub fn to_lab(&self) -> Result<Matrix3<T>> {
        rotate_axial_tensor(self)
    }
}

pub(crate) fn check_unit<T: Real>(axis: &Vector3<T>) -> Result<()> {
    let norm = axis.norm();
    let tol = if std::mem::size_of::<T>() >= 8 {
        1e-12
    } else {
        1e-6
    };
    if !norm.is_finite() || (to_f64(norm) - 1.0).abs() > tol {
        return Err(Error::NonUnitAxis { norm: to_f64(norm) });
    }
    Ok(())
}

/// Full lab-frame tensor `q·I + (p - q)·a·aᵀ`.
pub fn rotate_axial_tensor<T: Real>(t: &AxialTensor<T>) -> Result<Matrix3<T>> {
    check_unit(&t.axis)?;
    let a = &t.axis;
    Ok(
        Matrix3::identity() * t.perpendicular
            + (a * a.transpose()) * (t.parallel - t.perpendicular),
    )
}

/// `R M Rᵀ`.
pub fn rotate_tensor<T: Real>(m: &Matrix3<T>, rotation: &Rotation3<T>) -> Matrix3<T> {
    let r = rotation.matrix();
    r * m * r.transpose()
}

/// The angle between two ⟨111⟩ directions, `arccos(-1/3)`.
pub fn tetrahedral_angle<T: Real>() -> T {
    lit::<T>(-1.0 / 3.0).acos()
}

/// Unit vector with polar angle `theta` from z and azimuth `phi` from x.
pub fn axis_from_angles<T: Real>(theta: T, phi: T) -> Vector3<T> {
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

/// A ⟨111⟩ direction tilted from z by the tetrahedral angle, at azimuth
/// `phi`. Uses `cos = -1/3`, `sin = 2√2/3` directly.
pub fn tetrahedral_axis<T: Real>(phi: T) -> Vector3<T> {
    let cos_t = lit::<T>(-1.0 / 3.0);
    let sin_t = lit::<T>(8.0).sqrt() / lit(3.0);
    Vector3::new(sin_t * phi.cos(), sin_t * phi.sin(), cos_t)
}

/// Rotation by `angle` about `axis`.
pub fn axis_angle_rotation<T: Real>(axis: &Vector3<T>, angle: T) -> Rotation3<T> {
    Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle)
}

/// z-y-z Euler rotation `Rz(alpha) Ry(beta) Rz(gamma)`.
pub fn euler_rotation<T: Real>(alpha: T, beta: T, gamma: T) -> Rotation3<T> {
    let z = Vector3::z_axis();
    let y = Vector3::y_axis();
    Rotation3::from_axis_angle(&z, alpha)
        * Rotation3::from_axis_angle(&y, beta)
        * Rotation3::from_axis_angle(&z, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::SymmetricEigen;
    use proptest::prelude::*;

    fn sorted_eigenvalues(m: &Matrix3<f64>) -> Vec<f64> {
        let mut v: Vec<f64> = SymmetricEigen::new(*m)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn pas_form_along_z() {
        let t = AxialTensor::new(5.0, 2.0, Vector3::z()).unwrap();
        let m = rotate_axial_tensor(&t).unwrap();
        assert_eq!(m, Matrix3::from_diagonal(&Vector3::new(2.0, 2.0, 5.0)));
    }

    #[test]
    fn isotropic_is_rotation_invariant() {
        let axis = Vector3::new(1.0, 2.0, -2.0) / 3.0;
        let t = AxialTensor::new(7.5, 7.5, axis).unwrap();
        let m = rotate_axial_tensor(&t).unwrap();
        assert_relative_eq!(m, Matrix3::identity() * 7.5, epsilon = 1e-14);
    }

    #[test]
    fn tilted_p1_hyperfine_recovers_principal_frame() {
        let theta = 109.47_f64.to_radians();
        let axis = Vector3::new(theta.sin(), 0.0, theta.cos());
        let t = AxialTensor::new(114.0, 81.0, axis).unwrap();
        let m = rotate_axial_tensor(&t).unwrap();
        assert_relative_eq!(m, m.transpose(), epsilon = 0.0);

        let eig = SymmetricEigen::new(m);
        let mut idx: Vec<usize> = (0..3).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        assert_relative_eq!(eig.eigenvalues[idx[0]], 81.0, epsilon = 1e-12);
        assert_relative_eq!(eig.eigenvalues[idx[1]], 81.0, epsilon = 1e-12);
        assert_relative_eq!(eig.eigenvalues[idx[2]], 114.0, epsilon = 1e-12);
        let v = eig.eigenvectors.column(idx[2]).into_owned();
        assert_relative_eq!(v.dot(&axis).abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(AxialTensor::new(1.0, 1.0, Vector3::new(1.0, 1.0, 0.0)).is_err());
        let bad = AxialTensor {
            parallel: 1.0,
            perpendicular: 0.0,
            axis: Vector3::new(0.0, 0.0, 1.0 + 1e-9),
        };
        assert!(matches!(
            rotate_axial_tensor(&bad),
            Err(Error::NonUnitAxis { .. })
        ));
        let ok = AxialTensor::new(1.0, 0.0, Vector3::new(0.0, 0.0, 1.0 + 1e-13));
        assert!(ok.is_ok());
    }

    #[test]
    fn tetrahedral_geometry() {
        let theta: f64 = tetrahedral_angle();
        assert_relative_eq!(theta.to_degrees(), 109.4712206344907, epsilon = 1e-12);
        for k in 0..3 {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let a: Vector3<f64> = tetrahedral_axis(phi);
            assert_relative_eq!(a.norm(), 1.0, epsilon = 1e-15);
            assert_relative_eq!(a.z, -1.0 / 3.0, epsilon = 0.0);
            assert_relative_eq!(a, axis_from_angles(theta, phi), epsilon = 1e-15);
        }
        // the three tilted directions are mutually tetrahedral
        let a = tetrahedral_axis::<f64>(0.0);
        let b = tetrahedral_axis::<f64>(2.0 * std::f64::consts::PI / 3.0);
        assert_relative_eq!(a.dot(&b), -1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn euler_rotation_of_z() {
        let r = euler_rotation(0.3, 0.7, 1.1);
        let z = r * Vector3::z();
        assert_relative_eq!(z, axis_from_angles(0.7, 0.3), epsilon = 1e-15);
    }

    #[test]
    fn rotated_tensor_matches_rotated_matrix() {
        let t = AxialTensor::new(340.0, 140.0, Vector3::z()).unwrap();
        let r = euler_rotation(0.2, 1.9, -0.4);
        let lhs = rotate_axial_tensor(&t.rotated(&r)).unwrap();
        let rhs = rotate_tensor(&rotate_axial_tensor(&t).unwrap(), &r);
        assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
    }

    fn unit_vector() -> impl Strategy<Value = Vector3<f64>> {
        (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
            .prop_map(|(t, p)| axis_from_angles(t, p))
    }

    proptest! {
        #[test]
        fn spectrum_independent_of_axis(p in -400.0..400.0f64, q in -400.0..400.0f64, a in unit_vector()) {
            let m = rotate_axial_tensor(&AxialTensor::new(p, q, a).unwrap()).unwrap();
            let mut want = vec![p, q, q];
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let got = sorted_eigenvalues(&m);
            for (g, w) in got.iter().zip(&want) {
                prop_assert!((g - w).abs() < 1e-10 * (1.0 + p.abs().max(q.abs())));
            }
        }

        #[test]
        fn rotate_forward_and_back(p in -400.0..400.0f64, q in -400.0..400.0f64,
                                   a in unit_vector(), theta in -3.2..3.2f64, phi in 0.0..6.3f64) {
            let t = AxialTensor::new(p, q, a).unwrap();
            // rotation axis perpendicular to the tensor axis
            let perp = a.cross(&axis_from_angles(1.0, phi));
            prop_assume!(perp.norm() > 1e-3);
            let fwd = axis_angle_rotation(&perp, theta);
            let back = axis_angle_rotation(&perp, -theta);
            let m0 = rotate_axial_tensor(&t).unwrap();
            let m1 = rotate_tensor(&rotate_tensor(&m0, &fwd), &back);
            prop_assert!((m1 - m0).amax() < 1e-12 * (1.0 + p.abs().max(q.abs())));
        }
    }
}
