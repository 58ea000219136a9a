//! Exhaustive search over small weight systems.
//!
//! ```bash
//! cargo run --release --example enumerate -- 2
//! ```

use twisted_flag::isotropy::Prop53Class;
use twisted_flag::report::enumeration_records;
use twisted_flag::Result;

fn main() -> Result<()> {
    let bound: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let recs = enumeration_records(bound)?;
    let free = recs.iter().filter(|r| r.free).count();
    let flag = recs.iter().filter(|r| r.classification == Prop53Class::FreeFlagCase).count();
    println!("bound {bound}: {} systems, {free} free, {flag} flag-case", recs.len());
    for r in recs.iter().filter(|r| r.free).take(6) {
        println!("  free: wR = {:?}", r.weights.right);
    }
    if let Some(r) = recs.iter().find(|r| !r.weights.left_is_trivial()) {
        println!("  first with nontrivial wL: {:?} / {:?}", r.weights.left, r.weights.right);
    }
    Ok(())
}
