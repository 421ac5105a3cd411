//! Commutant, center and minimal central projections of a planted tuple.

use optuple::algebra::{center_basis, commutant_basis, minimal_central_projections};
use optuple::matrices::random;
use optuple::planted::plant;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    // 2 copies of a 2-dimensional atom plus 3 copies of a 1-dimensional one
    let p = random::tuple(&mut rng, 2, 2);
    let q = random::tuple(&mut rng, 2, 1);
    let planted = plant(vec![(p, 2), (q, 3)], &mut rng);
    let a = &planted.tuple;

    let c = commutant_basis(a, 1e-8)?;
    println!("dim A = {}, commutant dimension {} (Schur predicts {})", a.dim(), c.len(), planted.commutant_dim());
    let z = center_basis(&c, 1e-8)?;
    println!("center dimension {}", z.len());
    let cp = minimal_central_projections(a, 1e-8, 0)?;
    for (i, p) in cp.projections.iter().enumerate() {
        println!("central projection {i}: rank {:.0}", p.trace().re);
    }
    Ok(())
}
