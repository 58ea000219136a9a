use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    boundedness_witness, certify_point, embed_su3, project_to_level, random_su3,
    sample_level_point, AmbientPoint, CertTolerances, FrameBasisChange, LevelSetPoint,
    PointCertificate,
};
use crate::error::{Error, Result};
use crate::geometry::{find_apex_functional, positive_combination, rat_to_f64, Rat2};
use crate::weights::DerivedConeData;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
    /// Norm of the Gaussian perturbation applied before projecting.
    pub perturbation: f64,
    pub projection_tol: f64,
    pub max_iter: usize,
    pub frame: FrameBasisChange,
    pub tolerances: CertTolerances,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            count: 100,
            seed: 0,
            perturbation: 1e-2,
            projection_tol: 1e-12,
            max_iter: 50,
            frame: FrameBasisChange::IDENTITY,
            tolerances: CertTolerances::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleKind {
    /// `z_i = √a`, `w_j = √b` (1-based indices).
    Seed { i: usize, j: usize },
    /// A seed point perturbed and projected back.
    Perturbed { i: usize, j: usize, iterations: usize },
    /// Image of a random special unitary matrix, rescaled onto the level set.
    Su3 { seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledPoint {
    pub index: usize,
    #[serde(flatten)]
    pub kind: SampleKind,
    pub point: LevelSetPoint,
}

/// One certified sample, or the reason none could be produced.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub kind: Option<SampleKind>,
    pub certificate: Option<PointCertificate>,
    /// `(identity residual, bound on ‖z‖², ‖w‖²)` from the apex functional
    pub boundedness: Option<(f64, f64)>,
    pub bounded: bool,
    pub error: Option<String>,
    pub pass: bool,
}

/// Scales `(s, t)` with `C = s·A + t·B` when all `A_j` coincide, all `B_j`
/// coincide and `A`, `B` are independent, so the level set is a rescaled
/// copy of `X₀`.
fn su3_scaling(d: &DerivedConeData) -> Option<(f64, f64)> {
    let constant = |v: &[Rat2; 3]| v.iter().all(|x| *x == v[0]);
    if !constant(&d.a) || !constant(&d.b) || d.a[0].cross(&d.b[0]) == 0.into() {
        return None;
    }
    positive_combination(&d.c, &d.a[0], &d.b[0]).map(|(s, t)| (rat_to_f64(&s), rat_to_f64(&t)))
}

fn seed_pairs(d: &DerivedConeData) -> Vec<(usize, usize)> {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && positive_combination(&d.c, &d.a[i], &d.b[j]).is_some())
        .collect()
}

fn sample_one(
    d: &DerivedConeData,
    cfg: &SampleConfig,
    seeds: &[(usize, usize)],
    su3: Option<(f64, f64)>,
    k: usize,
) -> Result<SampledPoint> {
    if k < seeds.len() {
        let (i, j) = seeds[k];
        return Ok(SampledPoint {
            index: k,
            kind: SampleKind::Seed { i: i + 1, j: j + 1 },
            point: sample_level_point(d, i, j)?,
        });
    }
    if let Some((s, t)) = su3 {
        if k % 3 == 2 {
            let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
            let e = embed_su3(&random_su3(seed)?).point;
            let point = AmbientPoint::new(e.z.map(|z| z * s.sqrt()), e.w.map(|w| w * t.sqrt()));
            return Ok(SampledPoint {
                index: k,
                kind: SampleKind::Su3 { seed },
                point: LevelSetPoint::new(d, point)?,
            });
        }
    }
    let (i, j) = seeds[k % seeds.len()];
    let base = sample_level_point(d, i, j)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let noise = DVector::from_fn(12, |_, _| rng.sample::<f64, _>(StandardNormal));
    let x = base.point.to_real() + noise.normalize() * cfg.perturbation;
    let pr = project_to_level(d, &AmbientPoint::from_real(&x), cfg.projection_tol, cfg.max_iter)?;
    Ok(SampledPoint {
        index: k,
        kind: SampleKind::Perturbed {
            i: i + 1,
            j: j + 1,
            iterations: pr.iterations,
        },
        point: pr.point,
    })
}

/// `count` deterministic level-set points: the explicit seed points first,
/// then projected perturbations of them, with every third replaced by an
/// embedded random `SU(3)` matrix when the level set is a copy of `X₀`.
pub fn sample_points(d: &DerivedConeData, cfg: &SampleConfig) -> Result<Vec<Result<SampledPoint>>> {
    if cfg.count == 0 {
        return Err(Error::Precondition("sample count must be at least 1".into()));
    }
    let seeds = seed_pairs(d);
    if seeds.is_empty() {
        return Err(Error::Precondition(
            "C is not a positive combination of any A_i, B_j with i != j".into(),
        ));
    }
    let su3 = su3_scaling(d);
    Ok((0..cfg.count)
        .into_par_iter()
        .map(|k| sample_one(d, cfg, &seeds, su3, k))
        .collect())
}

/// Samples and certifies; also checks the apex-functional bound on every
/// point when the cone has an apex.
pub fn certify_samples(d: &DerivedConeData, cfg: &SampleConfig) -> Result<Vec<SampleRecord>> {
    let alpha = find_apex_functional(&d.generators()).ok().flatten();
    let samples = sample_points(d, cfg)?;
    Ok(samples
        .into_par_iter()
        .enumerate()
        .map(|(index, s)| match s {
            Err(e) => SampleRecord {
                index,
                kind: None,
                certificate: None,
                boundedness: None,
                bounded: false,
                error: Some(e.to_string()),
                pass: false,
            },
            Ok(s) => {
                let cert = certify_point(d, &s.point, &cfg.frame, &cfg.tolerances);
                let boundedness = alpha.map(|a| boundedness_witness(d, &a, &s.point.point));
                let bounded = boundedness.is_some_and(|(res, bound)| {
                    let slack = bound * (1.0 + 1e-12);
                    res <= 1e-10
                        && s.point.point.z_norm().powi(2) <= slack
                        && s.point.point.w_norm().powi(2) <= slack
                });
                let pass = cert.pass && bounded;
                SampleRecord {
                    index,
                    kind: Some(s.kind),
                    certificate: Some(cert),
                    boundedness,
                    bounded,
                    error: None,
                    pass,
                }
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_batch() {
        let d = DerivedConeData::worked_example();
        let cfg = SampleConfig::default();
        let recs = certify_samples(&d, &cfg).unwrap();
        assert_eq!(recs.len(), 100);
        assert!(recs.iter().all(|r| r.pass), "{:?}", recs.iter().find(|r| !r.pass));
        let seeds = recs
            .iter()
            .filter(|r| matches!(r.kind, Some(SampleKind::Seed { .. })))
            .count();
        assert_eq!(seeds, 6);
        for r in &recs {
            if let Some(SampleKind::Perturbed { iterations, .. }) = r.kind {
                assert!(iterations <= 8);
            }
        }
    }

    #[test]
    fn deterministic() {
        let d = DerivedConeData::worked_example();
        let cfg = SampleConfig { count: 20, seed: 5, ..Default::default() };
        let a = serde_json::to_string(&certify_samples(&d, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&certify_samples(&d, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn su3_points_for_constant_data() {
        let d = DerivedConeData::from_int_cone_data([[-1, 0]; 3], [[-1, -1]; 3]).unwrap();
        let cfg = SampleConfig { count: 30, ..Default::default() };
        let recs = certify_samples(&d, &cfg).unwrap();
        assert!(recs.iter().any(|r| matches!(r.kind, Some(SampleKind::Su3 { .. }))));
        assert!(recs.iter().all(|r| r.pass));
    }

    #[test]
    fn zero_count_rejected() {
        let d = DerivedConeData::worked_example();
        let cfg = SampleConfig { count: 0, ..Default::default() };
        assert!(sample_points(&d, &cfg).is_err());
    }
}
