//! Floating-point model of the quadric
//! `M = {(z, w) ∈ ℂ³ × ℂ³ : z ≠ 0, w ≠ 0, Σ z_j w_j = 0}`, the embedding of
//! `SU(3)`, the moment map `Φ(z, w) = Σ A_j|z_j|² + B_j|w_j|²` and the
//! torus action on it.
//!
//! Real coordinates on `ℂ⁶` interleave real and imaginary parts:
//! `(Re z₁, Im z₁, …, Re w₃, Im w₃)`. The complex structure `J` is
//! multiplication by `i` and the Kähler form is
//! `ω(u, v) = Σ Im(u_k · conj(v_k))`, so that `ω(Ju, u) = |u|²`.

mod certify;
mod projection;
mod sampling;
mod su3;

pub use certify::{
    certify_point, hamiltonian_scale, transverse_frame, CertTolerances, FrameBasisChange,
    PointCertificate, StructureErrors, TransverseFrame,
};
pub use projection::{constraint_jacobian, constraints, project_to_level, Projection};
pub use sampling::{
    certify_samples, sample_points, SampleConfig, SampleKind, SampleRecord, SampledPoint,
};
pub use su3::{
    embed_su3, equivariance_check, random_su3, random_torus_element, SpecialUnitaryMatrix,
};

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{positive_combination, rat_to_f64, Rat2};
use crate::weights::DerivedConeData;

pub type C64 = Complex64;

/// Below this modulus `z` (or `w`) counts as zero.
pub const COLLAPSE_THRESHOLD: f64 = 1e-8;

/// A point of `ℂ³ × ℂ³`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientPoint {
    pub z: [C64; 3],
    pub w: [C64; 3],
}

impl AmbientPoint {
    pub fn new(z: [C64; 3], w: [C64; 3]) -> Self {
        AmbientPoint { z, w }
    }

    pub fn coords(&self) -> [C64; 6] {
        [self.z[0], self.z[1], self.z[2], self.w[0], self.w[1], self.w[2]]
    }

    pub fn from_coords(c: &[C64; 6]) -> Self {
        AmbientPoint {
            z: [c[0], c[1], c[2]],
            w: [c[3], c[4], c[5]],
        }
    }

    pub fn to_real(&self) -> DVector<f64> {
        complex_to_real(&self.coords())
    }

    pub fn from_real(v: &DVector<f64>) -> Self {
        Self::from_coords(&real_to_complex(v))
    }

    pub fn quadric_value(&self) -> C64 {
        (0..3).map(|j| self.z[j] * self.w[j]).sum()
    }

    pub fn z_norm(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn w_norm(&self) -> f64 {
        self.w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_collapsed(&self) -> bool {
        let zmax = self.z.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let wmax = self.w.iter().map(|c| c.norm()).fold(0.0, f64::max);
        zmax <= COLLAPSE_THRESHOLD || wmax <= COLLAPSE_THRESHOLD
    }
}

pub fn complex_to_real(c: &[C64; 6]) -> DVector<f64> {
    DVector::from_iterator(12, c.iter().flat_map(|z| [z.re, z.im]))
}

pub fn real_to_complex(v: &DVector<f64>) -> [C64; 6] {
    std::array::from_fn(|k| C64::new(v[2 * k], v[2 * k + 1]))
}

/// `J`, multiplication by `i`, on real coordinates.
pub fn apply_j(v: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for k in 0..v.len() / 2 {
        out[2 * k] = -v[2 * k + 1];
        out[2 * k + 1] = v[2 * k];
    }
    out
}

/// `ω(u, v) = Σ Im(u_k conj(v_k))` on real coordinates.
pub fn omega(u: &DVector<f64>, v: &DVector<f64>) -> f64 {
    (0..u.len() / 2)
        .map(|k| u[2 * k + 1] * v[2 * k] - u[2 * k] * v[2 * k + 1])
        .sum()
}

/// Residuals of a point against the defining equations of a level set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residuals {
    /// `|Σ z_j w_j|`
    pub quadric: f64,
    /// `|Φ(z, w) − C|`
    pub moment: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.quadric.max(self.moment)
    }
}

/// A point on `Φ⁻¹(C) ⊂ M` together with how well it satisfies the
/// equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelSetPoint {
    pub point: AmbientPoint,
    pub residuals: Residuals,
}

impl LevelSetPoint {
    /// Evaluates the residuals; fails if `z` or `w` vanishes.
    pub fn new(d: &DerivedConeData, point: AmbientPoint) -> Result<Self> {
        if point.is_collapsed() {
            return Err(Error::Collapse);
        }
        Ok(LevelSetPoint {
            point,
            residuals: residuals(d, &point),
        })
    }

    pub fn z(&self) -> &[C64; 3] {
        &self.point.z
    }

    pub fn w(&self) -> &[C64; 3] {
        &self.point.w
    }
}

impl Serialize for LevelSetPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pair = |c: &C64| [c.re, c.im];
        serde_json::json!({
            "z": self.point.z.iter().map(pair).collect::<Vec<_>>(),
            "w": self.point.w.iter().map(pair).collect::<Vec<_>>(),
            "residuals": self.residuals,
        })
        .serialize(s)
    }
}

pub(crate) fn weights_f64(d: &DerivedConeData) -> ([[f64; 2]; 3], [[f64; 2]; 3], [f64; 2]) {
    (d.a.map(|v| v.to_f64()), d.b.map(|v| v.to_f64()), d.c.to_f64())
}

/// `Φ(z, w) = Σ_j A_j|z_j|² + B_j|w_j|²`.
pub fn moment_map(d: &DerivedConeData, p: &AmbientPoint) -> [f64; 2] {
    let (a, b, _) = weights_f64(d);
    let mut out = [0.0; 2];
    for j in 0..3 {
        let (zz, ww) = (p.z[j].norm_sqr(), p.w[j].norm_sqr());
        for m in 0..2 {
            out[m] += a[j][m] * zz + b[j][m] * ww;
        }
    }
    out
}

pub fn residuals(d: &DerivedConeData, p: &AmbientPoint) -> Residuals {
    let phi = moment_map(d, p);
    let c = d.c.to_f64();
    Residuals {
        quadric: p.quadric_value().norm(),
        moment: ((phi[0] - c[0]).powi(2) + (phi[1] - c[1]).powi(2)).sqrt(),
    }
}

/// Cone data whose level set is `X₀ = {|z|² = 1, |w|² = 1, Σ z_j w_j = 0}`,
/// the image of `SU(3)`.
pub fn su3_level_data() -> DerivedConeData {
    DerivedConeData::from_int_cone_data([[1, 0]; 3], [[0, 1]; 3]).expect("consistent")
}

/// The point with `z_i = √a`, `w_j = √b` and all other coordinates zero,
/// where `C = a·A_i + b·B_j` with `a, b > 0`.
pub fn sample_level_point(d: &DerivedConeData, i: usize, j: usize) -> Result<LevelSetPoint> {
    if i >= 3 || j >= 3 {
        return Err(Error::Precondition(format!("indices ({i}, {j}) out of range")));
    }
    if i == j {
        return Err(Error::Precondition("the z and w supports must differ (i != j)".into()));
    }
    let (a, b) = positive_combination(&d.c, &d.a[i], &d.b[j]).ok_or_else(|| {
        Error::Precondition(format!(
            "C is not a positive combination of A_{} and B_{}",
            i + 1,
            j + 1
        ))
    })?;
    let zero = C64::new(0.0, 0.0);
    let mut z = [zero; 3];
    let mut w = [zero; 3];
    z[i] = C64::new(rat_to_f64(&a).sqrt(), 0.0);
    w[j] = C64::new(rat_to_f64(&b).sqrt(), 0.0);
    LevelSetPoint::new(d, AmbientPoint::new(z, w))
}

fn character(weight: &Rat2, angles: [f64; 2]) -> C64 {
    let [x, y] = weight.to_f64();
    C64::from_polar(1.0, x * angles[0] + y * angles[1])
}

/// `t·(z, w) = (t^{A₁}z₁, …, t^{B₃}w₃)` for `t = (e^{iθ₁}, e^{iθ₂})`.
pub fn action_orbit_map(d: &DerivedConeData, p: &LevelSetPoint, angles: [f64; 2]) -> LevelSetPoint {
    let z = std::array::from_fn(|j| character(&d.a[j], angles) * p.point.z[j]);
    let w = std::array::from_fn(|j| character(&d.b[j], angles) * p.point.w[j]);
    let point = AmbientPoint::new(z, w);
    LevelSetPoint {
        point,
        residuals: residuals(d, &point),
    }
}

/// Checks `Σ α(A_j)|z_j|² + Σ α(B_j)|w_j|² = α(C)` for an apex functional
/// `α`, and returns the resulting bound on `max(|z|², |w|²)` together with
/// the residual of the identity.
pub fn boundedness_witness(d: &DerivedConeData, alpha: &Rat2, p: &AmbientPoint) -> (f64, f64) {
    let al = alpha.to_f64();
    let eval = |v: &Rat2| {
        let v = v.to_f64();
        al[0] * v[0] + al[1] * v[1]
    };
    let lhs: f64 = (0..3)
        .map(|j| eval(&d.a[j]) * p.z[j].norm_sqr() + eval(&d.b[j]) * p.w[j].norm_sqr())
        .sum();
    let rhs = eval(&d.c);
    let min_gen = d.generators().iter().map(eval).fold(f64::INFINITY, f64::min);
    ((lhs - rhs).abs(), rhs / min_gen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn moment_map_examples() {
        let d = DerivedConeData::worked_example();
        let zero = c(0.0, 0.0);
        let p = AmbientPoint::new([c(1.0, 0.0), zero, zero], [zero, c(1.0, 0.0), zero]);
        assert_eq!(moment_map(&d, &p), [1.0, 1.0]);

        let q = AmbientPoint::new(
            [zero, zero, c(0.5f64.sqrt(), 0.0)],
            [c(1.5f64.sqrt(), 0.0), zero, zero],
        );
        let phi = moment_map(&d, &q);
        assert!((phi[0] - 1.0).abs() < 1e-15 && (phi[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_point_rejected() {
        let d = DerivedConeData::worked_example();
        let zero = c(0.0, 0.0);
        let p = AmbientPoint::new([zero; 3], [c(1.0, 0.0), zero, zero]);
        assert!(matches!(LevelSetPoint::new(&d, p), Err(Error::Collapse)));
    }

    #[test]
    fn sample_points_on_example() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 0, 1).unwrap();
        assert_eq!(p.z()[0], c(1.0, 0.0));
        assert_eq!(p.w()[1], c(1.0, 0.0));
        assert!(p.residuals.max() <= 1e-14);

        let q = sample_level_point(&d, 2, 0).unwrap();
        assert!((q.z()[2].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((q.w()[0].re - 1.5f64.sqrt()).abs() < 1e-15);
        assert!(q.residuals.max() <= 1e-14);

        assert!(matches!(sample_level_point(&d, 0, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn action_identity_and_isotropy() {
        let d = DerivedConeData::worked_example();
        let p = sample_level_point(&d, 0, 1).unwrap();
        let same = action_orbit_map(&d, &p, [0.0, 0.0]);
        assert_eq!(same.point, p.point);

        // t = (−1, 1) lies in the ℤ/2 stabilizer of the (3, 1) stratum
        let q = sample_level_point(&d, 2, 0).unwrap();
        let moved = action_orbit_map(&d, &q, [PI, 0.0]);
        for k in 0..3 {
            assert!((moved.point.z[k] - q.point.z[k]).norm() < 1e-15);
            assert!((moved.point.w[k] - q.point.w[k]).norm() < 1e-15);
        }
        // but moves the (1, 2) point
        let moved = action_orbit_map(&d, &p, [PI, 0.0]);
        assert!((moved.point.z[0] - p.point.z[0]).norm() > 1.0);
    }

    #[test]
    fn omega_convention() {
        let u = complex_to_real(&[c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.5), c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 0.0)]);
        let ju = apply_j(&u);
        assert!((omega(&ju, &u) - u.norm_squared()).abs() < 1e-12);
        let v = apply_j(&ju);
        assert!((v + &u).norm() == 0.0);
        // ω(Ju, Jv) = ω(u, v)
        let w = complex_to_real(&[c(0.3, -1.0), c(2.0, 0.1), c(0.0, 0.5), c(1.0, 0.0), c(-1.0, 2.0), c(0.0, 0.0)]);
        assert!((omega(&apply_j(&u), &apply_j(&w)) - omega(&u, &w)).abs() < 1e-12);
    }

    #[test]
    fn boundedness_on_example_points() {
        let d = DerivedConeData::worked_example();
        let alpha = Rat2::from_ints(1, 1);
        for (i, j) in [(0, 1), (2, 0), (1, 2)] {
            let p = sample_level_point(&d, i, j).unwrap();
            let (res, bound) = boundedness_witness(&d, &alpha, &p.point);
            assert!(res < 1e-12);
            assert!(p.point.z_norm().powi(2) <= bound + 1e-12);
            assert!(p.point.w_norm().powi(2) <= bound + 1e-12);
        }
    }
}
