//! Splitting a tuple along a predicate on its atoms: normal part versus the rest,
//! three-way normality split, and the norm-one parts of a contraction.

use optuple::decomp::{contraction_parts, ideal_split, normal_three_way, Predicate};
use optuple::matrices::{block_diag, random, spectral_norm, CMat, MatrixTuple, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let j2 = CMat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0].map(|x| C64::new(x, 0.0)));
    let five = CMat::from_element(1, 1, C64::new(5.0, 0.0));
    let a = MatrixTuple::new(vec![block_diag(&j2, &five)])?;

    let split = ideal_split(&a, &Predicate::jointly_normal(), 1e-8, 0)?;
    println!("jointly normal part: dim {}, complement: dim {}", split.part.dim(), split.complement.dim());
    let small = ideal_split(&a, &Predicate::parse("norm<=1")?, 1e-8, 0)?;
    println!("norm<=1 part: dim {}", small.part.dim());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // commuting normal pair, non-commuting Hermitian pair, non-normal pair
    let n = random::normal(&mut rng, 2);
    let (h1, h2) = (random::hermitian(&mut rng, 2), random::hermitian(&mut rng, 2));
    let m = random::gaussian(&mut rng, 2, 2);
    let first = block_diag(&block_diag(&n, &h1), &m);
    let second = block_diag(&block_diag(&(&n * &n), &h2), &CMat::identity(2, 2));
    let pair = MatrixTuple::new(vec![first, second])?;
    let [jointly, separately, neither] = normal_three_way(&pair, 1e-8, 0)?;
    println!("three-way: jointly {}, separately only {}, neither {}", jointly.dim(), separately.dim(), neither.dim());

    let x = random::gaussian(&mut rng, 3, 3);
    let c = &x * C64::new(1.0 / spectral_norm(&x), 0.0);
    let parts = contraction_parts(&MatrixTuple::new(vec![c])?, 1e-8, 0)?;
    println!("contraction: H0 {}, H1 {}, H2 {}", parts.h0.dim(), parts.h1.dim(), parts.h2.dim());
    Ok(())
}
