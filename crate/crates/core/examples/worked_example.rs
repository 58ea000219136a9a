//! The worked example end to end: weights from cone data, the cone
//! condition, isotropy and a handful of certified points.
//!
//! ```bash
//! cargo run --example worked_example
//! ```

use twisted_flag::isotropy::{freeness_check, singular_stratum_census};
use twisted_flag::quadric::{certify_samples, SampleConfig};
use twisted_flag::report::format_diag;
use twisted_flag::weights::{check_star, derive, weights_from_cone_data};
use twisted_flag::{DerivedConeData, Result};

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn main() -> Result<()> {
    let d = DerivedConeData::worked_example();
    let g = weights_from_cone_data(d.a, d.b)?;
    println!("scale {}", g.scale);
    println!("rho_L = {}", format_diag(&g.integer.left));
    println!("rho_R = {}", format_diag(&g.integer.right));
    assert_eq!(derive(&g.integer)?, d.scale(3.into()));

    let cond = check_star(&d);
    println!("cone condition: {}  (N, R, C) = {:?}", cond.star, (cond.nrc.n(), cond.nrc.regular, cond.nrc.compact));

    let v = freeness_check(&d, None)?;
    if let Some(f) = v.failing_pair {
        println!("free: {}  first failing pair (A_{}, B_{}), det {}", v.free, f.i + 1, f.j + 1, f.determinant);
    }
    for s in singular_stratum_census(&d)?.iter().filter(|s| s.pattern.is_singleton()) {
        println!("  I={:?} J={:?}  order {:?}", one_based(&s.pattern.z_indices()), one_based(&s.pattern.w_indices()), s.isotropy.order());
    }

    let cfg = SampleConfig { count: 12, ..Default::default() };
    let recs = certify_samples(&d, &cfg)?;
    println!("certified {}/{} points", recs.iter().filter(|r| r.pass).count(), recs.len());
    Ok(())
}
