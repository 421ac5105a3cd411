//! Unitary equivalence by decomposition, cross-checked by the trace-word oracle.

use optuple::decomp::{are_equivalent, invariant_key};
use optuple::matrices::random;
use optuple::oracle::specht_equivalent;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a = random::tuple(&mut rng, 2, 3);
    let b = a.conjugate(&random::unitary(&mut rng, 3));
    let t = a.map(|m| m.transpose());

    for (name, other) in [("U A U*", &b), ("transpose", &t)] {
        println!(
            "A vs {name}: decomposition {}, trace words {}",
            are_equivalent(&a, other, 1e-8)?,
            specht_equivalent(&a, other)?
        );
    }
    let (ka, kb) = (invariant_key(&a), invariant_key(&b));
    println!("invariant keys: {} entries, equal {}", ka.len(), ka == kb);
    Ok(())
}
