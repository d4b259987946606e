//! Individual interaction terms, all in MHz with fields in Gauss.

use nalgebra::{Matrix3, Vector3};

use super::system::{CenterId, FieldPoint, Nucleus, SpinCenter, SpinSystem};
use crate::algebra::matrix::{self, CMat};
use crate::algebra::{
    embed_operator, embed_product, rotate_axial_tensor, AxialTensor, EmbeddingMap, Spin,
    SpinOperators,
};
use crate::error::{Error, Result};
use crate::scalar::{creal, lit, to_f64, Real};

/// Bohr magneton over Planck's constant, MHz per Gauss.
pub const BOHR_MHZ_PER_GAUSS: f64 = 1.399_624_493_61;

/// `Σ_ab T_ab A_a B_b` with `A` at `slot_a` and `B` at `slot_b` (distinct).
fn bilinear<T: Real>(
    dims: &[usize],
    slot_a: usize,
    a: &SpinOperators<T>,
    tensor: &Matrix3<T>,
    slot_b: usize,
    b: &SpinOperators<T>,
) -> Result<CMat<T>> {
    let n: usize = dims.iter().product();
    let mut out = matrix::zeros::<T>(n);
    for (i, ai) in a.components().into_iter().enumerate() {
        for (j, bj) in b.components().into_iter().enumerate() {
            let t = tensor[(i, j)];
            if t == T::zero() {
                continue;
            }
            let term = embed_product(dims, &[(slot_a, ai.as_ref()), (slot_b, bj.as_ref())])?;
            matrix::add_scaled(&mut out, term.as_ref(), creal(t));
        }
    }
    Ok(out)
}

/// `Σ_ab T_ab S_a S_b` for a single spin, before embedding.
fn quadratic_local<T: Real>(ops: &SpinOperators<T>, tensor: &Matrix3<T>) -> CMat<T> {
    let d = ops.dim();
    let mut out = matrix::zeros::<T>(d);
    for (i, si) in ops.components().into_iter().enumerate() {
        for (j, sj) in ops.components().into_iter().enumerate() {
            let t = tensor[(i, j)];
            if t == T::zero() {
                continue;
            }
            let prod = matrix::matmul(si.as_ref(), sj.as_ref());
            matrix::add_scaled(&mut out, prod.as_ref(), creal(t));
        }
    }
    out
}

fn check_slot(map: &EmbeddingMap, spin: Spin) -> Result<()> {
    let d = map.dims()[map.target()];
    if d != spin.dim() {
        return Err(Error::DimensionMismatch {
            op: spin.dim(),
            slot: d,
        });
    }
    Ok(())
}

/// Electron Zeeman interaction `β Bᵀ G S` for the center whose electron is
/// the map's target.
pub fn zeeman_term<T: Real>(
    center: &SpinCenter<T>,
    b0: &FieldPoint<T>,
    map: &EmbeddingMap,
) -> Result<CMat<T>> {
    let ops = zeeman_operators(center, map)?;
    let mut out = matrix::zeros::<T>(map.total_dim());
    for (a, op) in ops.iter().enumerate() {
        if b0.b0[a] != T::zero() {
            matrix::add_scaled(&mut out, op.as_ref(), creal(b0.b0[a]));
        }
    }
    Ok(out)
}

/// The three operators `β (G S)_a` so that the Zeeman term is `Σ_a B_a Z_a`.
fn zeeman_operators<T: Real>(center: &SpinCenter<T>, map: &EmbeddingMap) -> Result<[CMat<T>; 3]> {
    check_slot(map, center.spin)?;
    let g = rotate_axial_tensor(&center.g)?;
    let ops = SpinOperators::<T>::new(center.spin);
    let beta = lit::<T>(BOHR_MHZ_PER_GAUSS);
    let local = |a: usize| {
        let mut m = matrix::zeros::<T>(ops.dim());
        for (b, sb) in ops.components().into_iter().enumerate() {
            matrix::add_scaled(&mut m, sb.as_ref(), creal(beta * g[(a, b)]));
        }
        m
    };
    Ok([
        embed_operator(local(0).as_ref(), map)?,
        embed_operator(local(1).as_ref(), map)?,
        embed_operator(local(2).as_ref(), map)?,
    ])
}

/// Axial zero-field splitting `Sᵀ D S` with `D` having principal values
/// `{2D/3, -D/3, -D/3}` about `zfs_axis`; equals `D (S_z'^2 - S(S+1)/3)`.
pub fn zfs_term<T: Real>(center: &SpinCenter<T>, map: &EmbeddingMap) -> Result<CMat<T>> {
    check_slot(map, center.spin)?;
    if center.zfs_d == T::zero() {
        return Ok(matrix::zeros(map.total_dim()));
    }
    if center.spin == Spin::HALF {
        return Err(Error::ZfsOnSpinHalf {
            d: to_f64(center.zfs_d),
        });
    }
    let tensor = rotate_axial_tensor(&AxialTensor::traceless(center.zfs_d, center.zfs_axis)?)?;
    let ops = SpinOperators::<T>::new(center.spin);
    embed_operator(quadratic_local(&ops, &tensor).as_ref(), map)
}

/// Hyperfine coupling `Sᵀ A I` between the map's target electron and its
/// `nucleus_index`-th nucleus, which sits in the slot right after the
/// electron plus `nucleus_index`.
pub fn hfc_term<T: Real>(
    center: &SpinCenter<T>,
    nucleus_index: usize,
    map: &EmbeddingMap,
) -> Result<CMat<T>> {
    let nucleus = center
        .nuclei
        .get(nucleus_index)
        .ok_or(Error::NucleusOutOfRange {
            index: nucleus_index,
            len: center.nuclei.len(),
        })?;
    check_slot(map, center.spin)?;
    let nuc_slot = map.target() + 1 + nucleus_index;
    check_slot(&map.retarget(nuc_slot)?, nucleus.spin)?;
    let tensor = rotate_axial_tensor(&nucleus.hfc)?;
    let s = SpinOperators::<T>::new(center.spin);
    let i = SpinOperators::<T>::new(nucleus.spin);
    bilinear(map.dims(), map.target(), &s, &tensor, nuc_slot, &i)
}

/// Nuclear quadrupole `Q (I_z'^2 - I(I+1)/3)` for the nucleus at the map's
/// target. Zero for spin-1/2 whatever `Q` is.
pub fn quadrupole_term<T: Real>(nucleus: &Nucleus<T>, map: &EmbeddingMap) -> Result<CMat<T>> {
    check_slot(map, nucleus.spin)?;
    if nucleus.spin == Spin::HALF || nucleus.quadrupole_q == T::zero() {
        return Ok(matrix::zeros(map.total_dim()));
    }
    let tensor = rotate_axial_tensor(&AxialTensor::traceless(
        nucleus.quadrupole_q,
        nucleus.quadrupole_axis,
    )?)?;
    let ops = SpinOperators::<T>::new(nucleus.spin);
    embed_operator(quadratic_local(&ops, &tensor).as_ref(), map)
}

/// Electron-electron dipolar coupling `D_dd [3 (S1·n)(S2·n) - S1·S2]`.
pub fn dipolar_term<T: Real>(system: &SpinSystem<T>) -> Result<CMat<T>> {
    let c2 = system.center2.as_ref().ok_or(Error::MissingSecondCenter)?;
    crate::algebra::tensor::check_unit(&system.n12)?;
    let dims = system.dims();
    if system.d_dd == T::zero() {
        return Ok(matrix::zeros(system.total_dim()));
    }
    let n = &system.n12;
    let tensor = (n * n.transpose() * lit::<T>(3.0) - Matrix3::identity()) * system.d_dd;
    let s1 = SpinOperators::<T>::new(system.center1.spin);
    let s2 = SpinOperators::<T>::new(c2.spin);
    bilinear(
        &dims,
        system.electron_slot(CenterId::First),
        &s1,
        &tensor,
        system.electron_slot(CenterId::Second),
        &s2,
    )
}

/// Field-independent part plus the three Zeeman generators, so that
/// `H(B) = static + Σ_a B_a zeeman[a]`.
#[derive(Clone, Debug)]
pub struct HamiltonianModel<T: Real> {
    pub static_part: CMat<T>,
    pub zeeman: [CMat<T>; 3],
}

impl<T: Real> HamiltonianModel<T> {
    pub fn new(system: &SpinSystem<T>) -> Result<Self> {
        system.validate()?;
        let n = system.total_dim();
        let mut static_part = matrix::zeros::<T>(n);
        let mut zeeman = [
            matrix::zeros::<T>(n),
            matrix::zeros::<T>(n),
            matrix::zeros::<T>(n),
        ];
        let one = creal(T::one());
        for (id, center) in system.centers() {
            let map = system.electron_map(id)?;
            for (acc, op) in zeeman.iter_mut().zip(zeeman_operators(center, &map)?) {
                matrix::add_scaled(acc, op.as_ref(), one);
            }
            matrix::add_scaled(&mut static_part, zfs_term(center, &map)?.as_ref(), one);
            for (k, nucleus) in center.nuclei.iter().enumerate() {
                matrix::add_scaled(&mut static_part, hfc_term(center, k, &map)?.as_ref(), one);
                let nmap = system.nucleus_map(id, k)?;
                matrix::add_scaled(
                    &mut static_part,
                    quadrupole_term(nucleus, &nmap)?.as_ref(),
                    one,
                );
            }
        }
        if system.center2.is_some() {
            matrix::add_scaled(&mut static_part, dipolar_term(system)?.as_ref(), one);
        }
        Ok(HamiltonianModel {
            static_part,
            zeeman,
        })
    }

    pub fn dim(&self) -> usize {
        self.static_part.nrows()
    }

    pub fn at(&self, b0: &FieldPoint<T>) -> CMat<T> {
        let mut h = self.static_part.clone();
        for a in 0..3 {
            if b0.b0[a] != T::zero() {
                matrix::add_scaled(&mut h, self.zeeman[a].as_ref(), creal(b0.b0[a]));
            }
        }
        h
    }

    /// Hamiltonian for a field of magnitude `b` along `direction`.
    pub fn along(&self, direction: &Vector3<T>, b: T) -> CMat<T> {
        self.at(&FieldPoint::along(direction, b))
    }
}

/// Full lab-frame Hamiltonian at one field point.
pub fn assemble_hamiltonian<T: Real>(
    system: &SpinSystem<T>,
    b0: &FieldPoint<T>,
) -> Result<CMat<T>> {
    Ok(HamiltonianModel::new(system)?.at(b0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::{kron, max_abs, max_abs_diff, trace};
    use crate::algebra::tetrahedral_axis;
    use crate::evolution::eigenvalues;
    use approx::assert_relative_eq;
    use num_complex::Complex;

    fn nv_center(nuclei: bool) -> SpinCenter<f64> {
        let z = Vector3::z();
        SpinCenter {
            spin: Spin::ONE,
            g: AxialTensor::new(2.0029, 2.0031, z).unwrap(),
            zfs_d: 2872.0,
            zfs_axis: z,
            nuclei: if nuclei {
                vec![Nucleus::axial(Spin::ONE, -2.2, -2.7, -4.8, z).unwrap()]
            } else {
                vec![]
            },
            alpha: 1.0,
        }
    }

    fn free_electron(spin: Spin) -> SpinCenter<f64> {
        SpinCenter {
            spin,
            g: AxialTensor::isotropic(2.0),
            zfs_d: 0.0,
            zfs_axis: Vector3::z(),
            nuclei: vec![],
            alpha: 0.0,
        }
    }

    #[test]
    fn zeeman_spin_half_splitting() {
        let c = free_electron(Spin::HALF);
        let map = EmbeddingMap::new(vec![2], 0).unwrap();
        let h = zeeman_term(&c, &FieldPoint::new(Vector3::new(0.0, 0.0, 1000.0)), &map).unwrap();
        let e = eigenvalues(&h).unwrap();
        // CODATA mu_B/h = 1.39962449 MHz/G; g B / 2 at g = 2, B = 1000 G
        assert_relative_eq!(e[1], 1399.62449, epsilon = 1e-5);
        assert_relative_eq!(e[0], -1399.62449, epsilon = 1e-5);
        let zero = zeeman_term(&c, &FieldPoint::zero(), &map).unwrap();
        assert_eq!(max_abs(zero.as_ref()), 0.0);
    }

    #[test]
    fn zeeman_nv_parallel_splitting() {
        let c = nv_center(false);
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        let h = zeeman_term(&c, &FieldPoint::new(Vector3::new(0.0, 0.0, 1024.0)), &map).unwrap();
        let split = (h[(0, 0)] - h[(2, 2)]).re;
        assert_relative_eq!(
            split,
            2.0 * 2.0029 * 1.3996245 * 1024.0,
            max_relative = 1e-7
        );
        assert!(max_abs(h.as_ref()) > 0.0);
        assert_eq!(h[(0, 1)], Complex::new(0.0, 0.0));
    }

    #[test]
    fn zeeman_uses_perpendicular_g_for_transverse_field() {
        let c = nv_center(false);
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        let h = zeeman_term(&c, &FieldPoint::new(Vector3::new(500.0, 0.0, 0.0)), &map).unwrap();
        let ops = SpinOperators::<f64>::new(Spin::ONE);
        let expect = matrix::scaled(ops.sx.as_ref(), creal(BOHR_MHZ_PER_GAUSS * 2.0031 * 500.0));
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-10);
    }

    #[test]
    fn zfs_along_z() {
        let c = nv_center(false);
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        let h = zfs_term(&c, &map).unwrap();
        let d = 2872.0;
        let expect = matrix::diag(&[d / 3.0, -2.0 * d / 3.0, d / 3.0]);
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-10);
        assert_relative_eq!(h[(0, 0)].re, 957.3333333333, epsilon = 1e-9);
        assert_relative_eq!(h[(1, 1)].re, -1914.6666666667, epsilon = 1e-9);
    }

    #[test]
    fn zfs_zero_and_spin_half() {
        let mut c = nv_center(false);
        c.zfs_d = 0.0;
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        assert_eq!(max_abs(zfs_term(&c, &map).unwrap().as_ref()), 0.0);

        let mut p1 = free_electron(Spin::HALF);
        let map2 = EmbeddingMap::new(vec![2], 0).unwrap();
        assert_eq!(max_abs(zfs_term(&p1, &map2).unwrap().as_ref()), 0.0);
        p1.zfs_d = 10.0;
        assert!(matches!(
            zfs_term(&p1, &map2),
            Err(Error::ZfsOnSpinHalf { .. })
        ));
    }

    #[test]
    fn zfs_tilted_keeps_spectrum() {
        let mut c = nv_center(false);
        c.zfs_axis = tetrahedral_axis(0.4);
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        let h = zfs_term(&c, &map).unwrap();
        let e = eigenvalues(&h).unwrap();
        assert_relative_eq!(e[0], -1914.6666666667, epsilon = 1e-9);
        assert_relative_eq!(e[1], 957.3333333333, epsilon = 1e-9);
        assert_relative_eq!(e[2], 957.3333333333, epsilon = 1e-9);
        assert!(trace(h.as_ref()).norm() < 1e-10);
    }

    #[test]
    fn hfc_isotropic_is_scalar_product() {
        let mut c = free_electron(Spin::ONE);
        let axis = Vector3::new(0.6, 0.0, 0.8);
        c.nuclei
            .push(Nucleus::axial(Spin::HALF, 100.0, 100.0, 0.0, axis).unwrap());
        let map = EmbeddingMap::new(vec![3, 2], 0).unwrap();
        let h = hfc_term(&c, 0, &map).unwrap();
        let s = SpinOperators::<f64>::new(Spin::ONE);
        let i = SpinOperators::<f64>::new(Spin::HALF);
        let mut expect = matrix::zeros::<f64>(6);
        for (a, b) in s.components().into_iter().zip(i.components()) {
            matrix::add_scaled(
                &mut expect,
                kron(a.as_ref(), b.as_ref()).as_ref(),
                creal(100.0),
            );
        }
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-12);
    }

    #[test]
    fn hfc_nv_nitrogen_matches_pas_form() {
        let c = nv_center(true);
        let map = EmbeddingMap::new(vec![3, 3], 0).unwrap();
        let h = hfc_term(&c, 0, &map).unwrap();
        let s = SpinOperators::<f64>::new(Spin::ONE);
        let mut expect = matrix::scaled(kron(s.sz.as_ref(), s.sz.as_ref()).as_ref(), creal(-2.2));
        matrix::add_scaled(
            &mut expect,
            kron(s.sx.as_ref(), s.sx.as_ref()).as_ref(),
            creal(-2.7),
        );
        matrix::add_scaled(
            &mut expect,
            kron(s.sy.as_ref(), s.sy.as_ref()).as_ref(),
            creal(-2.7),
        );
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-12);
    }

    #[test]
    fn hfc_p1_carbon_tensor() {
        let mut c = free_electron(Spin::HALF);
        c.nuclei
            .push(Nucleus::axial(Spin::HALF, 340.0, 140.0, 0.0, Vector3::z()).unwrap());
        let map = EmbeddingMap::new(vec![2, 2], 0).unwrap();
        let h = hfc_term(&c, 0, &map).unwrap();
        // |++>: A_par / 4
        assert_relative_eq!(h[(0, 0)].re, 85.0, epsilon = 1e-12);
        // flip-flop <+-|H|-+> = A_perp / 2
        assert_relative_eq!(h[(1, 2)].re, 70.0, epsilon = 1e-12);
        let e = eigenvalues(&h).unwrap();
        // {|+->, |-+>} block: -A_par/4 +- A_perp/2
        for (g, w) in e.iter().zip([-155.0, -15.0, 85.0, 85.0]) {
            assert_relative_eq!(*g, w, epsilon = 1e-10);
        }
    }

    #[test]
    fn hfc_index_out_of_range() {
        let c = nv_center(true);
        let map = EmbeddingMap::new(vec![3, 3], 0).unwrap();
        assert!(matches!(
            hfc_term(&c, 1, &map),
            Err(Error::NucleusOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn quadrupole_examples() {
        let n = Nucleus::axial(Spin::ONE, 0.0, 0.0, -4.8, Vector3::z()).unwrap();
        let map = EmbeddingMap::new(vec![3], 0).unwrap();
        let h = quadrupole_term(&n, &map).unwrap();
        let expect = matrix::diag(&[-1.6, 3.2, -1.6]);
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-12);

        let half = Nucleus::axial(Spin::HALF, 0.0, 0.0, -4.8, Vector3::z()).unwrap();
        let map2 = EmbeddingMap::new(vec![2], 0).unwrap();
        assert_eq!(
            max_abs(quadrupole_term(&half, &map2).unwrap().as_ref()),
            0.0
        );

        let none = Nucleus::axial(Spin::ONE, 0.0, 0.0, 0.0, Vector3::z()).unwrap();
        assert_eq!(max_abs(quadrupole_term(&none, &map).unwrap().as_ref()), 0.0);
    }

    #[test]
    fn dipolar_along_z_expands() {
        let sys = SpinSystem::pair(
            free_electron(Spin::ONE),
            free_electron(Spin::HALF),
            1.3,
            Vector3::z(),
        );
        let h = dipolar_term(&sys).unwrap();
        let a = SpinOperators::<f64>::new(Spin::ONE);
        let b = SpinOperators::<f64>::new(Spin::HALF);
        let mut expect = matrix::scaled(
            kron(a.sz.as_ref(), b.sz.as_ref()).as_ref(),
            creal(2.0 * 1.3),
        );
        matrix::add_scaled(
            &mut expect,
            kron(a.sx.as_ref(), b.sx.as_ref()).as_ref(),
            creal(-1.3),
        );
        matrix::add_scaled(
            &mut expect,
            kron(a.sy.as_ref(), b.sy.as_ref()).as_ref(),
            creal(-1.3),
        );
        assert!(max_abs_diff(h.as_ref(), expect.as_ref()) < 1e-12);
        assert!(trace(h.as_ref()).norm() < 1e-12);
    }

    #[test]
    fn dipolar_two_half_spins_spectrum() {
        // Hand diagonalization in the product basis: |++>, |--> carry +1/2;
        // the {|+->, |-+>} block is [[-1/2, -1/2], [-1/2, -1/2]] with
        // eigenvalues 0 and -1.
        let sys = SpinSystem::pair(
            free_electron(Spin::HALF),
            free_electron(Spin::HALF),
            1.0,
            Vector3::z(),
        );
        let h = dipolar_term(&sys).unwrap();
        let explicit = {
            let mut m = matrix::diag(&[0.5, -0.5, -0.5, 0.5]);
            m[(1, 2)] = creal(-0.5);
            m[(2, 1)] = creal(-0.5);
            m
        };
        assert!(max_abs_diff(h.as_ref(), explicit.as_ref()) < 1e-15);
        let e = eigenvalues(&h).unwrap();
        for (g, w) in e.iter().zip([-1.0, 0.0, 0.5, 0.5]) {
            assert_relative_eq!(*g, w, epsilon = 1e-12);
        }
    }

    #[test]
    fn dipolar_zero_and_single_center() {
        let sys = SpinSystem::pair(
            free_electron(Spin::HALF),
            free_electron(Spin::HALF),
            0.0,
            Vector3::z(),
        );
        assert_eq!(max_abs(dipolar_term(&sys).unwrap().as_ref()), 0.0);
        let single = SpinSystem::single(free_electron(Spin::HALF));
        assert!(matches!(
            dipolar_term(&single),
            Err(Error::MissingSecondCenter)
        ));
    }

    /// The single-center Hamiltonian written out term by term with explicit
    /// Kronecker products.
    fn single_nv_direct(b: Vector3<f64>) -> CMat<f64> {
        let s = SpinOperators::<f64>::new(Spin::ONE);
        let id = matrix::identity::<f64>(3);
        let beta = BOHR_MHZ_PER_GAUSS;
        let (gpar, gperp, d, apar, aperp, q) = (2.0029, 2.0031, 2872.0, -2.2, -2.7, -4.8);
        let e = |op: &CMat<f64>| kron(op.as_ref(), id.as_ref());
        let n = |op: &CMat<f64>| kron(id.as_ref(), op.as_ref());
        let mut h = matrix::scaled(e(&s.sz).as_ref(), creal(beta * gpar * b.z));
        matrix::add_scaled(&mut h, e(&s.sx).as_ref(), creal(beta * gperp * b.x));
        matrix::add_scaled(&mut h, e(&s.sy).as_ref(), creal(beta * gperp * b.y));
        let sz2 = matrix::matmul(s.sz.as_ref(), s.sz.as_ref());
        matrix::add_scaled(&mut h, e(&sz2).as_ref(), creal(d));
        matrix::add_scaled(
            &mut h,
            matrix::identity::<f64>(9).as_ref(),
            creal(-2.0 * d / 3.0),
        );
        matrix::add_scaled(
            &mut h,
            kron(s.sz.as_ref(), s.sz.as_ref()).as_ref(),
            creal(apar),
        );
        matrix::add_scaled(
            &mut h,
            kron(s.sx.as_ref(), s.sx.as_ref()).as_ref(),
            creal(aperp),
        );
        matrix::add_scaled(
            &mut h,
            kron(s.sy.as_ref(), s.sy.as_ref()).as_ref(),
            creal(aperp),
        );
        matrix::add_scaled(&mut h, n(&sz2).as_ref(), creal(q));
        matrix::add_scaled(
            &mut h,
            matrix::identity::<f64>(9).as_ref(),
            creal(-2.0 * q / 3.0),
        );
        h
    }

    #[test]
    fn isolated_nv_matches_direct_evaluation() {
        let sys = SpinSystem::single(nv_center(true));
        for b in [
            Vector3::zeros(),
            Vector3::new(0.0, 0.0, 1024.0),
            Vector3::new(300.0, -200.0, 700.0),
        ] {
            let h = assemble_hamiltonian(&sys, &FieldPoint::new(b)).unwrap();
            assert_eq!(h.nrows(), 9);
            let direct = single_nv_direct(b);
            assert!(
                max_abs_diff(h.as_ref(), direct.as_ref()) < 1e-9,
                "B = {b:?}"
            );
        }
        let e = eigenvalues(&assemble_hamiltonian(&sys, &FieldPoint::zero()).unwrap()).unwrap();
        // three levels near -2D/3, six near D/3, split by A and Q only
        for &v in &e[..3] {
            assert!((v + 2.0 * 2872.0 / 3.0).abs() < 10.0);
        }
        for &v in &e[3..] {
            assert!((v - 2872.0 / 3.0).abs() < 10.0);
        }
    }

    #[test]
    fn affine_in_field() {
        let sys = SpinSystem::single(nv_center(true));
        let model = HamiltonianModel::new(&sys).unwrap();
        let b = Vector3::new(120.0, 30.0, 400.0);
        let h0 = model.at(&FieldPoint::zero());
        let hb = model.at(&FieldPoint::new(b));
        let ha = model.at(&FieldPoint::new(b * 2.5));
        let lhs = matrix::sub(ha.as_ref(), h0.as_ref());
        let rhs = matrix::scaled(matrix::sub(hb.as_ref(), h0.as_ref()).as_ref(), creal(2.5));
        assert!(max_abs_diff(lhs.as_ref(), rhs.as_ref()) < 1e-9);
    }

    #[test]
    fn block_diagonal_in_total_projection_without_flip_flops() {
        // axes and field along z with A_perp = 0: only |Ms,mI> -> |Ms,mI>
        let mut c = nv_center(true);
        c.nuclei[0].hfc.perpendicular = 0.0;
        let sys = SpinSystem::single(c);
        let h =
            assemble_hamiltonian(&sys, &FieldPoint::new(Vector3::new(0.0, 0.0, 800.0))).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    assert_eq!(h[(i, j)], creal(0.0));
                }
            }
        }
        // with A_perp the flip-flop terms conserve Ms + mI
        let sys = SpinSystem::single(nv_center(true));
        let h =
            assemble_hamiltonian(&sys, &FieldPoint::new(Vector3::new(0.0, 0.0, 800.0))).unwrap();
        let m = |k: usize| (1.0 - (k / 3) as f64) + (1.0 - (k % 3) as f64);
        for i in 0..9 {
            for j in 0..9 {
                if m(i) != m(j) {
                    assert_eq!(h[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn assembled_dimensions() {
        let z = Vector3::z();
        let p1 = SpinCenter {
            spin: Spin::HALF,
            g: AxialTensor::isotropic(2.0023),
            zfs_d: 0.0,
            zfs_axis: z,
            nuclei: vec![Nucleus::axial(Spin::ONE, 114.0, 81.0, -4.8, z).unwrap()],
            alpha: 0.0,
        };
        let sys = SpinSystem::pair(nv_center(true), p1.clone(), 1.0, z);
        assert_eq!(sys.dims(), vec![3, 3, 2, 3]);
        let h =
            assemble_hamiltonian(&sys, &FieldPoint::new(Vector3::new(0.0, 0.0, 512.0))).unwrap();
        assert_eq!(h.nrows(), 54);
        assert!(matrix::is_hermitian(h.as_ref(), 1e-10));

        let mut p1c = p1;
        p1c.nuclei
            .push(Nucleus::axial(Spin::HALF, 340.0, 140.0, 0.0, z).unwrap());
        let sys = SpinSystem::pair(nv_center(true), p1c, 1.0, z);
        assert_eq!(sys.total_dim(), 108);

        let mut nv1 = nv_center(true);
        nv1.nuclei
            .push(Nucleus::axial(Spin::HALF, 100.0, 100.0, 0.0, z).unwrap());
        let mut nv2 = nv_center(true);
        nv2.zfs_axis = tetrahedral_axis(0.0);
        nv2.g.axis = nv2.zfs_axis;
        let sys = SpinSystem::pair(nv1, nv2, 1.0, z);
        let h =
            assemble_hamiltonian(&sys, &FieldPoint::new(Vector3::new(0.0, 0.0, 590.0))).unwrap();
        assert_eq!(h.nrows(), 162);
        assert!(matrix::is_hermitian(h.as_ref(), 1e-10));
    }
}
