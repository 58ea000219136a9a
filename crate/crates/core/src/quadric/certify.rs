use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{apply_j, complex_to_real, omega, weights_f64, LevelSetPoint, C64};
use crate::error::{Error, Result};
use crate::weights::DerivedConeData;

/// An invertible real 2×2 matrix `P`; the frame is built from
/// `(f, g) = (Φ₁, Φ₂)·P`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 2]", into = "[[f64; 2]; 2]")]
pub struct FrameBasisChange([[f64; 2]; 2]);

impl FrameBasisChange {
    pub const IDENTITY: FrameBasisChange = FrameBasisChange([[1.0, 0.0], [0.0, 1.0]]);

    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if !det.is_finite() || det == 0.0 {
            return Err(Error::Precondition("frame basis change must be invertible".into()));
        }
        Ok(FrameBasisChange(m))
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.0
    }

    /// Weights of the transformed pair `(f, g)` on a vector `v` of `Φ`.
    fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [
            v[0] * m[0][0] + v[1] * m[1][0],
            v[0] * m[0][1] + v[1] * m[1][1],
        ]
    }
}

impl TryFrom<[[f64; 2]; 2]> for FrameBasisChange {
    type Error = Error;

    fn try_from(m: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(m)
    }
}

impl From<FrameBasisChange> for [[f64; 2]; 2] {
    fn from(b: FrameBasisChange) -> Self {
        b.0
    }
}

impl Default for FrameBasisChange {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// Tangent vectors at a point of `ℂ⁶`, each as 12 real coordinates.
///
/// `X`, `Y` generate the rotations `z_j ↦ e^{i a_j t} z_j`,
/// `w_j ↦ e^{i b_j t} w_j` where `(a_j, b_j)` are the weights of `f`
/// (resp. `g`). `Z = X + JY` and `W = JX − Y = JZ` span the complement used
/// to project onto `T_pN`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseFrame {
    pub x: DVector<f64>,
    pub y: DVector<f64>,
    pub z: DVector<f64>,
    pub w: DVector<f64>,
}

pub fn transverse_frame(
    d: &DerivedConeData,
    p: &LevelSetPoint,
    bc: &FrameBasisChange,
) -> TransverseFrame {
    let (a, b, _) = weights_f64(d);
    let field = |col: usize| {
        let c: [C64; 6] = std::array::from_fn(|k| {
            let (weight, coord) = if k < 3 {
                (bc.apply(a[k])[col], p.point.z[k])
            } else {
                (bc.apply(b[k - 3])[col], p.point.w[k - 3])
            };
            C64::new(0.0, weight) * coord
        });
        complex_to_real(&c)
    };
    let x = field(0);
    let y = field(1);
    let z = &x + apply_j(&y);
    let w = apply_j(&x) - &y;
    TransverseFrame { x, y, z, w }
}

/// The constant `c` with `ω(X, ·) = c·df` at `p`, fitted by least squares,
/// and the residual of the fit.
pub fn hamiltonian_scale(d: &DerivedConeData, p: &LevelSetPoint) -> (f64, f64) {
    let frame = transverse_frame(d, p, &FrameBasisChange::IDENTITY);
    let (a, b, _) = weights_f64(d);
    let coords = p.point.coords();
    let mut df = DVector::zeros(12);
    for k in 0..6 {
        let weight = if k < 3 { a[k][0] } else { b[k - 3][0] };
        df[2 * k] = 2.0 * weight * coords[k].re;
        df[2 * k + 1] = 2.0 * weight * coords[k].im;
    }
    let wx = DVector::from_fn(12, |k, _| {
        let mut e = DVector::zeros(12);
        e[k] = 1.0;
        omega(&frame.x, &e)
    });
    let denom = df.norm_squared();
    if denom == 0.0 {
        return (0.0, wx.norm());
    }
    let c = wx.dot(&df) / denom;
    (c, (wx - df * c).norm())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertTolerances {
    /// Relative singular-value threshold for rank decisions.
    pub rank_rel: f64,
    /// Bound on the operator identities.
    pub identity: f64,
    /// Eigenvalues with `|λ| ≤ tol_zero` count as zero.
    pub tol_zero: f64,
    /// Eigenvalues `≥ tol_pos · λ_max` count as positive.
    pub tol_pos: f64,
    /// Bound on the level-set residuals of the point.
    pub residual: f64,
}

impl Default for CertTolerances {
    fn default() -> Self {
        CertTolerances {
            rank_rel: 1e-9,
            identity: 1e-8,
            tol_zero: 1e-8,
            tol_pos: 1e-6,
            residual: 1e-10,
        }
    }
}

/// Errors of the induced structure; present only at regular, transversal
/// points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructureErrors {
    /// `‖J_N² + I‖_F`
    pub jn_square: f64,
    /// `‖J_N X − Y‖ + ‖J_N Y + X‖`
    pub jn_xy: f64,
    /// `‖J_Nᵀ Ω J_N − Ω‖_F` on the orthonormal basis of `T_pN`
    pub omega_compat: f64,
    /// How far `J·T_pN`, `X` and `Y` are from `T_pM = T_pN ⊕ span{Z, W}`
    pub tangency: f64,
    /// `‖S X‖ + ‖S Y‖` for the symmetric form `S` of `q`
    pub leaf_kernel: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCertificate {
    pub point: LevelSetPoint,
    pub jacobian_rank: usize,
    pub regular: bool,
    pub transversal_rank: usize,
    pub transversal: bool,
    /// `σ_min / σ_max` of `[T_pN | Z | W]`; small values flag a
    /// near-singular projection.
    pub projection_conditioning: f64,
    pub errors: Option<StructureErrors>,
    /// Eigenvalues of the symmetric part of `q(u, v) = ω(J_N u, v)`,
    /// ascending.
    pub positivity_spectrum: Vec<f64>,
    pub near_zero: usize,
    pub positive: usize,
    pub pass: bool,
}

impl PointCertificate {
    pub fn jn_square_error(&self) -> Option<f64> {
        self.errors.map(|e| e.jn_square)
    }

    pub fn jn_xy_error(&self) -> Option<f64> {
        self.errors.map(|e| e.jn_xy)
    }

    pub fn omega_compat_error(&self) -> Option<f64> {
        self.errors.map(|e| e.omega_compat)
    }
}

impl Serialize for PointCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "point": self.point,
            "ranks": {
                "jacobian": self.jacobian_rank,
                "regular": self.regular,
                "transversal": self.transversal_rank,
                "is_transversal": self.transversal,
                "projection_conditioning": self.projection_conditioning,
            },
            "errors": self.errors,
            "spectrum": self.positivity_spectrum,
            "pass": self.pass,
        })
        .serialize(s)
    }
}

fn numerical_rank(singular: &DVector<f64>, rel: f64) -> usize {
    let max = singular.max();
    if max == 0.0 {
        return 0;
    }
    singular.iter().filter(|&&s| s > rel * max).count()
}

/// Orthonormal basis of the kernel of `jac` (as columns), assuming its
/// rank is `rank`.
fn kernel_basis(jac: &DMatrix<f64>, rank: usize) -> DMatrix<f64> {
    let n = jac.ncols();
    let eig = SymmetricEigen::new(jac.transpose() * jac);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let cols: Vec<_> = order[..n - rank]
        .iter()
        .map(|&i| eig.eigenvectors.column(i).into_owned())
        .collect();
    DMatrix::from_columns(&cols)
}

fn omega_matrix(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n / 2 {
        m[(2 * k, 2 * k + 1)] = -1.0;
        m[(2 * k + 1, 2 * k)] = 1.0;
    }
    m
}

/// Pointwise certificate of the transverse Kähler structure at `p`.
///
/// `J_N u` is the `T_pN` component of `Ju` in the splitting
/// `T_pM = T_pN ⊕ span{Z, W}`.
pub fn certify_point(
    d: &DerivedConeData,
    p: &LevelSetPoint,
    bc: &FrameBasisChange,
    tol: &CertTolerances,
) -> PointCertificate {
    let jac = super::constraint_jacobian(d, &p.point);
    let jacobian_rank = numerical_rank(&jac.singular_values(), tol.rank_rel);
    let regular = jacobian_rank == 4;
    let mut cert = PointCertificate {
        point: *p,
        jacobian_rank,
        regular,
        transversal_rank: 0,
        transversal: false,
        projection_conditioning: 0.0,
        errors: None,
        positivity_spectrum: Vec::new(),
        near_zero: 0,
        positive: 0,
        pass: false,
    };
    if !regular {
        return cert;
    }

    let n = kernel_basis(&jac, 4);
    let frame = transverse_frame(d, p, bc);
    let mut k = n.clone().insert_columns(8, 2, 0.0);
    k.set_column(8, &frame.z);
    k.set_column(9, &frame.w);
    let svd = k.clone().svd(true, true);
    cert.transversal_rank = numerical_rank(&svd.singular_values, tol.rank_rel);
    cert.transversal = cert.transversal_rank == 10;
    cert.projection_conditioning = svd.singular_values.min() / svd.singular_values.max();
    if !cert.transversal {
        return cert;
    }

    let jn_ambient = DMatrix::from_columns(
        &(0..8).map(|a| apply_j(&n.column(a).into_owned())).collect::<Vec<_>>(),
    );
    let Ok(coef) = svd.solve(&jn_ambient, 0.0) else {
        return cert;
    };
    let jn = coef.rows(0, 8).into_owned();
    let x_n = n.transpose() * &frame.x;
    let y_n = n.transpose() * &frame.y;
    let tangency = (&k * &coef - &jn_ambient)
        .norm()
        .max((&n * &x_n - &frame.x).norm())
        .max((&n * &y_n - &frame.y).norm());

    let identity = DMatrix::<f64>::identity(8, 8);
    let jn_square = (&jn * &jn + &identity).norm();
    let jn_xy = (&jn * &x_n - &y_n).norm() + (&jn * &y_n + &x_n).norm();
    let omega_n = n.transpose() * omega_matrix(12) * &n;
    let omega_compat = (jn.transpose() * &omega_n * &jn - &omega_n).norm();

    let q = jn.transpose() * &omega_n;
    let sym = (&q + q.transpose()) * 0.5;
    let leaf_kernel = (&sym * &x_n).norm() + (&sym * &y_n).norm();
    let mut spectrum: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    spectrum.sort_by(f64::total_cmp);
    let max = spectrum.last().copied().unwrap_or(0.0);
    cert.near_zero = spectrum.iter().filter(|l| l.abs() <= tol.tol_zero).count();
    cert.positive = spectrum
        .iter()
        .filter(|&&l| max > 0.0 && l >= tol.tol_pos * max)
        .count();
    cert.positivity_spectrum = spectrum;
    cert.errors = Some(StructureErrors {
        jn_square,
        jn_xy,
        omega_compat,
        tangency,
        leaf_kernel,
    });
    cert.pass = p.residuals.max() <= tol.residual
        && [jn_square, jn_xy, omega_compat, tangency]
            .iter()
            .all(|&e| e <= tol.identity)
        && cert.near_zero == 2
        && cert.positive == 6;
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::{sample_level_point, AmbientPoint};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn frame_at_simple_point() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 0, 1).unwrap();
        let f = transverse_frame(&d, &p, &FrameBasisChange::IDENTITY);
        let x = complex_to_real(&[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let y = complex_to_real(&[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert_eq!(f.x, x);
        assert_eq!(f.y, y);
        assert_eq!(f.w, apply_j(&f.z));

        let two = FrameBasisChange::new([[2.0, 0.0], [0.0, 2.0]]).unwrap();
        let g = transverse_frame(&d, &p, &two);
        assert_eq!(g.x, &f.x * 2.0);
        assert_eq!(g.z, &f.z * 2.0);
        assert!(FrameBasisChange::new([[1.0, 2.0], [2.0, 4.0]]).is_err());
    }

    #[test]
    fn example_point_certifies() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 0, 1).unwrap();
        let cert = certify_point(&d, &p, &FrameBasisChange::IDENTITY, &CertTolerances::default());
        assert!(cert.regular && cert.transversal);
        let e = cert.errors.unwrap();
        assert!(e.jn_square <= 1e-8 && e.jn_xy <= 1e-8 && e.omega_compat <= 1e-8);
        assert_eq!((cert.near_zero, cert.positive), (2, 6));
        assert!(cert.pass, "{cert:?}");
    }

    #[test]
    fn basis_change_keeps_split() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 2, 0).unwrap();
        for m in [[[1.0, 0.0], [0.0, 1.0]], [[2.0, 1.0], [-1.0, 3.0]], [[0.0, 1.0], [1.0, 0.0]], [[-0.5, 0.2], [0.1, 4.0]]] {
            let bc = FrameBasisChange::new(m).unwrap();
            let cert = certify_point(&d, &p, &bc, &CertTolerances::default());
            assert!(cert.pass, "{m:?}: {cert:?}");
            assert_eq!((cert.near_zero, cert.positive), (2, 6));
        }
    }

    #[test]
    fn dependent_pair_is_not_regular() {
        // A₁ = B₂ = (1, 0)
        let d = DerivedConeData::from_int_cone_data([[1, 0], [2, 0], [3, 1]], [[2, 0], [1, 0], [0, -1]]).unwrap();
        let zero = c(0.0, 0.0);
        let pt = AmbientPoint::new([c(1.0, 0.0), zero, zero], [zero, c(2f64.sqrt(), 0.0), zero]);
        let p = LevelSetPoint::new(&d, pt).unwrap();
        assert!(p.residuals.max() < 1e-14);
        let cert = certify_point(&d, &p, &FrameBasisChange::IDENTITY, &CertTolerances::default());
        assert!(!cert.regular);
        assert_eq!(cert.jacobian_rank, 3);
        assert!(!cert.pass);
    }

    #[test]
    fn flow_field_is_half_gradient_dual() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 2, 0).unwrap();
        let (c, res) = hamiltonian_scale(&d, &p);
        assert!((c - 0.5).abs() < 1e-14 && res < 1e-14);
    }
}
