//! `SU(3)` inside the quadric: random special unitary matrices land on
//! `X₀` and the embedding intertwines the two torus actions.
//!
//! ```bash
//! cargo run --example embed_su3
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_flag::quadric::{embed_su3, equivariance_check, random_su3, random_torus_element};
use twisted_flag::Result;

fn main() -> Result<()> {
    let a = random_su3(7)?;
    let p = embed_su3(&a);
    println!("z = {:.4?}\nw = {:.4?}", p.point.z, p.point.w);
    println!("residuals {:?}", p.residuals);

    let worst = (0..1000u64)
        .map(|s| random_su3(s).map(|a| embed_su3(&a).residuals.max()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("worst residual over 1000 matrices: {worst:.2e}");

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut eq = 0.0f64;
    for s in 0..100 {
        let (g, h) = (random_torus_element(&mut rng), random_torus_element(&mut rng));
        eq = eq.max(equivariance_check(&random_su3(s)?, g, h)?);
    }
    println!("worst equivariance residual: {eq:.2e}");
    Ok(())
}
