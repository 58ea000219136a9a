//! All 27 membership checks of the cone condition for one weight system,
//! read from JSON on the command line (defaults to the worked example).
//!
//! ```bash
//! cargo run --example check_star -- '{"wL":[[0,0],[0,0],[0,0]],"wR":[[1,0],[0,1],[-1,-1]]}'
//! ```

use twisted_flag::report::load_input;
use twisted_flag::weights::{check_interpolation_path, check_star, InterpolationSpec};
use twisted_flag::{Result, WeightSystem};

fn main() -> Result<()> {
    let arg = std::env::args().nth(1);
    let d = match arg {
        Some(a) => load_input(&a)?.cone_data()?,
        None => twisted_flag::weights::derive(&WeightSystem::worked_example())?,
    };
    println!("A = {:?}\nB = {:?}\nC = {}", d.a.map(|v| v.to_string()), d.b.map(|v| v.to_string()), d.c);

    let r = check_star(&d);
    for (name, checks) in [("A", &r.a_pairs), ("B", &r.b_pairs), ("mixed", &r.mixed)] {
        for c in checks.iter() {
            println!("{name:>5} ({}, {}): {:?}", c.i + 1, c.j + 1, c.membership.status);
        }
    }
    println!("star = {}", r.star);
    if r.star {
        let spec = InterpolationSpec::for_data(&d, InterpolationSpec::uniform_samples(8))?;
        println!("interpolation path holds: {}", check_interpolation_path(&d, &spec)?);
    }
    Ok(())
}
