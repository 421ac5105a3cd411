//! Classes of tuples over a persistent atom registry. Equivalent atoms found in
//! different tuples get the same label.

use optuple::decomp::{classify, AtomRegistry};
use optuple::matrices::{ampl, direct_sum, random};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = random::tuple(&mut rng, 2, 2);
    let q = random::tuple(&mut rng, 2, 3);
    let a = direct_sum(&ampl(2, &p)?, &q)?;
    let b = direct_sum(&p, &ampl(3, &q)?)?.conjugate(&random::unitary(&mut rng, 11));

    let dir = std::env::temp_dir().join(format!("optuple-registry-example-{}", std::process::id()));
    {
        let registry = AtomRegistry::open(&dir)?;
        println!("class of A = {}", classify(&a, &registry, 1e-8, 0)?);
        println!("class of B = {}", classify(&b, &registry, 1e-8, 0)?);
        registry.save()?;
        println!("{} atoms saved under {}", registry.len(), dir.display());
    }
    // a fresh process sees the same labels
    let reopened = AtomRegistry::open(&dir)?;
    println!("reopened: class of 3.A = {}", classify(&ampl(3, &a)?, &reopened, 1e-8, 0)?);
    drop(reopened);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
