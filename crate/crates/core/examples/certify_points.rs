//! Pointwise certificate of the transverse Kähler structure, in detail for
//! one point and in bulk for a seeded sample.
//!
//! ```bash
//! cargo run --release --example certify_points
//! ```

use twisted_flag::quadric::{
    certify_point, certify_samples, project_to_level, sample_level_point, AmbientPoint,
    CertTolerances, FrameBasisChange, SampleConfig, C64,
};
use twisted_flag::{DerivedConeData, Result};

fn main() -> Result<()> {
    let d = DerivedConeData::worked_example();
    let p = sample_level_point(&d, 0, 1)?;
    let c = certify_point(&d, &p, &FrameBasisChange::IDENTITY, &CertTolerances::default());
    println!("ranks: jacobian {}  transversal {}", c.jacobian_rank, c.transversal_rank);
    println!("errors: {:?}", c.errors);
    let spectrum: Vec<String> = c.positivity_spectrum.iter().map(|l| format!("{l:.3e}")).collect();
    println!("spectrum: {}", spectrum.join(" "));

    // a generic point: push a seed point off its coordinate axes and project
    let mut q = p.point;
    q.z[2] = C64::new(0.3, 0.2);
    q.w[0] = C64::new(-0.1, 0.4);
    let pr = project_to_level(&d, &AmbientPoint::new(q.z, q.w), 1e-13, 50)?;
    let c = certify_point(&d, &pr.point, &FrameBasisChange::new([[2.0, 1.0], [-1.0, 1.0]])?, &CertTolerances::default());
    println!("projected in {} steps, pass = {}", pr.iterations, c.pass);

    let recs = certify_samples(&d, &SampleConfig::default())?;
    let worst = recs
        .iter()
        .filter_map(|r| r.certificate.as_ref()?.errors)
        .map(|e| e.jn_square.max(e.jn_xy).max(e.omega_compat))
        .fold(0.0, f64::max);
    println!("{} / {} pass, worst identity error {worst:.2e}", recs.iter().filter(|r| r.pass).count(), recs.len());
    Ok(())
}
