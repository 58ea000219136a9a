use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{residuals, su3_level_data, AmbientPoint, LevelSetPoint, C64};
use crate::error::{Error, Result};

/// Default tolerance for the unitarity and determinant invariants.
pub const SU3_TOL: f64 = 1e-12;

/// A 3×3 complex matrix with `A*A = I` and `det A = 1` up to a tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialUnitaryMatrix(Matrix3<C64>);

impl SpecialUnitaryMatrix {
    pub fn new(m: Matrix3<C64>) -> Result<Self> {
        Self::with_tolerance(m, SU3_TOL)
    }

    pub fn with_tolerance(m: Matrix3<C64>, tol: f64) -> Result<Self> {
        let r = unitarity_residual(&m);
        if r > tol {
            return Err(Error::NotSpecialUnitary(r));
        }
        Ok(SpecialUnitaryMatrix(m))
    }

    pub fn identity() -> Self {
        SpecialUnitaryMatrix(Matrix3::identity())
    }

    /// `diag(g₁, g₂, g₃)` with `|g_k| = 1` and `g₁g₂g₃ = 1`.
    pub fn diagonal(g: [C64; 3]) -> Result<Self> {
        Self::new(Matrix3::from_diagonal(&g.into()))
    }

    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.0
    }

    pub fn residual(&self) -> f64 {
        unitarity_residual(&self.0)
    }
}

/// `max(‖A*A − I‖_F, |det A − 1|)`.
pub fn unitarity_residual(m: &Matrix3<C64>) -> f64 {
    let gram = m.adjoint() * m - Matrix3::identity();
    gram.norm().max((m.determinant() - C64::new(1.0, 0.0)).norm())
}

/// Orthonormalizes a complex Gaussian matrix (QR via Gram–Schmidt, applied
/// twice) and rotates the last column to force `det = 1`.
pub fn random_su3(seed: u64) -> Result<SpecialUnitaryMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix3::from_fn(|_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    for _ in 0..2 {
        for c in 0..3 {
            for prev in 0..c {
                let q = m.column(prev).into_owned();
                let proj = q.dotc(&m.column(c));
                let col = m.column(c) - q * proj;
                m.set_column(c, &col);
            }
            let n = m.column(c).norm();
            if n < 1e-8 {
                return Err(Error::Precondition("singular Gaussian draw".into()));
            }
            let col = m.column(c).unscale(n);
            m.set_column(c, &col);
        }
    }
    let det = m.determinant();
    let fix = det.conj() / det.norm();
    let col = m.column(2) * fix;
    m.set_column(2, &col);
    SpecialUnitaryMatrix::new(m)
}

/// `z` = first column of `A`, `w` = third column of `ᵗA⁻¹`, which for
/// unitary `A` is the conjugate of the third column of `A`.
pub fn embed_su3(a: &SpecialUnitaryMatrix) -> LevelSetPoint {
    let m = a.matrix();
    let point = AmbientPoint::new(
        [m[(0, 0)], m[(1, 0)], m[(2, 0)]],
        [m[(0, 2)].conj(), m[(1, 2)].conj(), m[(2, 2)].conj()],
    );
    LevelSetPoint {
        point,
        residuals: residuals(&su3_level_data(), &point),
    }
}

/// Random element of the maximal torus.
pub fn random_torus_element<R: Rng>(rng: &mut R) -> [C64; 3] {
    let t1: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let t2: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    [
        C64::from_polar(1.0, t1),
        C64::from_polar(1.0, t2),
        C64::from_polar(1.0, -t1 - t2),
    ]
}

/// `‖embed(gAh⁻¹) − (g, h)·embed(A)‖` where `z_k ↦ g_k h₁⁻¹ z_k` and
/// `w_k ↦ g_k⁻¹ h₃ w_k`.
pub fn equivariance_check(a: &SpecialUnitaryMatrix, g: [C64; 3], h: [C64; 3]) -> Result<f64> {
    let gm = SpecialUnitaryMatrix::diagonal(g)?;
    let hm = SpecialUnitaryMatrix::diagonal(h)?;
    let moved = gm.matrix() * a.matrix() * hm.matrix().adjoint();
    let lhs = embed_su3(&SpecialUnitaryMatrix::with_tolerance(moved, 1e-10)?).point;
    let base = embed_su3(a).point;
    let mut err = 0.0f64;
    for k in 0..3 {
        let z = g[k] * h[0].conj() * base.z[k];
        let w = g[k].conj() * h[2] * base.w[k];
        err += (lhs.z[k] - z).norm_sqr() + (lhs.w[k] - w).norm_sqr();
    }
    Ok(err.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_and_diagonal_embeddings() {
        let p = embed_su3(&SpecialUnitaryMatrix::identity());
        assert_eq!(p.point.z, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.point.w, [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

        let d = SpecialUnitaryMatrix::diagonal([c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)]).unwrap();
        let p = embed_su3(&d);
        assert_eq!(p.point.z, [c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.point.w[2], c(-1.0, -0.0));
        assert!(p.residuals.max() == 0.0);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Matrix3::from_diagonal_element(c(2.0, 0.0));
        assert!(matches!(SpecialUnitaryMatrix::new(m), Err(Error::NotSpecialUnitary(_))));
        let m = Matrix3::from_diagonal(&[c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)].into());
        assert!(SpecialUnitaryMatrix::new(m).is_err());
    }

    #[test]
    fn random_matrices() {
        let a = random_su3(0).unwrap();
        assert!(a.residual() <= 1e-12);
        assert_eq!(a, random_su3(0).unwrap());
        let all: Vec<_> = (0..100).map(|s| random_su3(s).unwrap()).collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert!((all[i].matrix() - all[j].matrix()).norm() > 0.0);
            }
        }
        let p = embed_su3(&random_su3(7).unwrap());
        assert!(p.residuals.max() <= 1e-12);
    }

    #[test]
    fn equivariance() {
        let id = [c(1.0, 0.0); 3];
        let a = random_su3(3).unwrap();
        assert_eq!(equivariance_check(&a, id, id).unwrap(), 0.0);
        let g = [c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let r = equivariance_check(&SpecialUnitaryMatrix::identity(), g, id).unwrap();
        assert!(r <= 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in 0..20 {
            let a = random_su3(s).unwrap();
            let g = random_torus_element(&mut rng);
            let h = random_torus_element(&mut rng);
            assert!(equivariance_check(&a, g, h).unwrap() <= 1e-12);
        }
    }
}
