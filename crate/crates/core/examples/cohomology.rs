//! Basic Betti numbers, the de Rham check and both Hodge branches.
//!
//! ```bash
//! cargo run --example cohomology
//! ```

use twisted_flag::cohomology::{
    basic_model, dga_cohomology, hodge_model, lefschetz_check, su3_derham_model, HodgeBeta,
};
use twisted_flag::Result;

fn main() -> Result<()> {
    let h = basic_model();
    println!("basic: {:?}", h.graded_dims());
    println!("{:?}", lefschetz_check(&h));
    println!("de Rham: {:?}", dga_cohomology(&su3_derham_model())?.betti);

    for (name, beta) in [("generic", HodgeBeta::generic()), ("degenerate", HodgeBeta::degenerate())] {
        let t = hodge_model(beta)?;
        println!("{name}: rank {} branch {:?}", t.beta_rank, t.branch);
        for p in (0..5).rev() {
            println!("   {:?}", t.h[p]);
        }
    }
    Ok(())
}
