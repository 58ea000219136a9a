use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{residuals, weights_f64, AmbientPoint, LevelSetPoint};
use crate::error::{Error, Result};
use crate::weights::DerivedConeData;

/// `F(z, w) = (Re Σ z_j w_j, Im Σ z_j w_j, Φ(z, w) − C) ∈ ℝ⁴`.
pub fn constraints(d: &DerivedConeData, p: &AmbientPoint) -> DVector<f64> {
    let q = p.quadric_value();
    let phi = super::moment_map(d, p);
    let c = d.c.to_f64();
    DVector::from_vec(vec![q.re, q.im, phi[0] - c[0], phi[1] - c[1]])
}

/// The 4×12 real Jacobian of [`constraints`].
pub fn constraint_jacobian(d: &DerivedConeData, p: &AmbientPoint) -> DMatrix<f64> {
    let (a, b, _) = weights_f64(d);
    let mut jac = DMatrix::zeros(4, 12);
    for j in 0..3 {
        // d(z w) = w dz + z dw
        for (slot, coef, var, weight) in [
            (j, p.w[j], p.z[j], a[j]),
            (3 + j, p.z[j], p.w[j], b[j]),
        ] {
            let (cx, cy) = (2 * slot, 2 * slot + 1);
            jac[(0, cx)] = coef.re;
            jac[(0, cy)] = -coef.im;
            jac[(1, cx)] = coef.im;
            jac[(1, cy)] = coef.re;
            for m in 0..2 {
                jac[(2 + m, cx)] = 2.0 * weight[m] * var.re;
                jac[(2 + m, cy)] = 2.0 * weight[m] * var.im;
            }
        }
    }
    jac
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Projection {
    pub point: LevelSetPoint,
    pub iterations: usize,
    pub residual: f64,
}

/// Gauss–Newton with minimal-norm steps `δ = −Jᵀ(JJᵀ)⁻¹F` until `‖F‖ ≤ tol`.
pub fn project_to_level(
    d: &DerivedConeData,
    p0: &AmbientPoint,
    tol: f64,
    max_iter: usize,
) -> Result<Projection> {
    let mut p = *p0;
    let mut iterations = 0;
    loop {
        if p.is_collapsed() {
            return Err(Error::Collapse);
        }
        let f = constraints(d, &p);
        let residual = f.norm();
        if residual <= tol {
            let point = LevelSetPoint {
                point: p,
                residuals: residuals(d, &p),
            };
            return Ok(Projection {
                point,
                iterations,
                residual,
            });
        }
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual,
            });
        }
        let jac = constraint_jacobian(d, &p);
        let gram = &jac * jac.transpose();
        let y = gram
            .lu()
            .solve(&f)
            .ok_or(Error::NoConvergence { iterations, residual })?;
        let x = p.to_real() - jac.transpose() * y;
        p = AmbientPoint::from_real(&x);
        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::{sample_level_point, C64};

    #[test]
    fn jacobian_matches_finite_differences() {
        let d = DerivedConeData::worked_example();
        let p = AmbientPoint::new(
            [C64::new(0.3, -0.2), C64::new(0.7, 0.1), C64::new(-0.4, 0.5)],
            [C64::new(0.2, 0.9), C64::new(-0.6, 0.3), C64::new(0.1, -0.8)],
        );
        let jac = constraint_jacobian(&d, &p);
        let x = p.to_real();
        let h = 1e-6;
        for k in 0..12 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let fd = (constraints(&d, &AmbientPoint::from_real(&xp))
                - constraints(&d, &AmbientPoint::from_real(&xm)))
                / (2.0 * h);
            for r in 0..4 {
                assert!((fd[r] - jac[(r, k)]).abs() < 1e-8, "entry ({r}, {k})");
            }
        }
    }

    #[test]
    fn fixed_point_and_perturbation() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 0, 1).unwrap();
        let pr = project_to_level(&d, &p.point, 1e-12, 20).unwrap();
        assert_eq!(pr.iterations, 0);
        assert_eq!(pr.point.point, p.point);

        let mut x = p.point.to_real();
        let noise: Vec<f64> = (0..12).map(|k| ((k * 7 % 5) as f64 - 2.0) * 0.3).collect();
        let noise = DVector::from_vec(noise);
        x += noise.normalize() * 1e-2;
        let pr = project_to_level(&d, &AmbientPoint::from_real(&x), 1e-12, 8).unwrap();
        assert!(pr.residual <= 1e-12);
        assert!(pr.iterations <= 8);
    }

    #[test]
    fn zero_z_rejected() {
        let d = DerivedConeData::worked_example();
        let zero = C64::new(0.0, 0.0);
        let p = AmbientPoint::new([zero; 3], [C64::new(1.0, 0.0), zero, zero]);
        assert!(matches!(project_to_level(&d, &p, 1e-12, 10), Err(Error::Collapse)));
    }
}
