//! The straight-line deformation of cone data to the standard
//! configuration, checked at each sample.

use twisted_flag::weights::{check_star, interpolated, InterpolationSpec};
use twisted_flag::{DerivedConeData, Result};

fn main() -> Result<()> {
    let d = DerivedConeData::worked_example();
    let spec = InterpolationSpec::for_data(&d, InterpolationSpec::uniform_samples(4))?;
    println!("C = {}·A_1 + {}·B_1", spec.a, spec.b);
    for &t in &spec.samples {
        let dt = interpolated(&d, &spec, t);
        println!(
            "t = {:<4} A = {:?}  star = {}",
            t.to_string(),
            dt.a.map(|v| v.to_string()),
            check_star(&dt).star
        );
    }
    Ok(())
}
