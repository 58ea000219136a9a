//! Isotropy groups on every support stratum.
//!
//! ```bash
//! cargo run --example isotropy_census
//! ```

use twisted_flag::isotropy::{classify_prop53, freeness_check, singular_stratum_census};
use twisted_flag::weights::derive;
use twisted_flag::{DerivedConeData, Result, WeightSystem};

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn show(name: &str, d: &DerivedConeData) -> Result<()> {
    println!("== {name}");
    println!("free: {}", freeness_check(d, None)?.free);
    for s in singular_stratum_census(d)? {
        let factors = s.isotropy.nontrivial_factors();
        if !factors.is_empty() || s.pattern.is_singleton() {
            println!(
                "  I={:?} J={:?}  factors {:?}  effective {:?}",
                one_based(&s.pattern.z_indices()),
                one_based(&s.pattern.w_indices()),
                factors,
                s.effective_factors
            );
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    show("worked example", &DerivedConeData::worked_example())?;
    let std = WeightSystem::standard_torus();
    show("standard torus", &derive(&std)?)?;
    println!("classification: {:?}", classify_prop53(&std)?);

    let doubled = WeightSystem::new([[0, 0]; 3], [[2, 0], [0, 1], [-2, -1]])?;
    println!("doubled right weights: {:?}", classify_prop53(&doubled));
    Ok(())
}
