//! The B-transform `T ↦ T(I + |T|)^{-1}` maps any tuple to a tuple of strict
//! contractions, commutes with adjoints and keeps the commutant.

use optuple::algebra::commutant_basis;
use optuple::matrices::{adjoint, b_transform, inverse_b_transform, random, tuple_norm, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random::tuple(&mut rng, 2, 4).map(|m| m * C64::new(5.0, 0.0));
    let b = b_transform(&a);
    println!("||A|| = {:.4}, ||B(A)|| = {:.6}", tuple_norm(&a), tuple_norm(&b));
    println!("||B(A*) - B(A)*|| = {:.2e}", b_transform(&adjoint(&a)).max_distance(&adjoint(&b)));
    println!("||B^-1(B(A)) - A|| = {:.2e}", inverse_b_transform(&b)?.max_distance(&a));
    let (ca, cb) = (commutant_basis(&a, 1e-8)?, commutant_basis(&b, 1e-8)?);
    println!("commutant dims {} and {}, span distance {:.2e}", ca.len(), cb.len(), ca.span_distance(&cb));
    Ok(())
}
