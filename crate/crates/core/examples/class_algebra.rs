//! Multiplicity classes: direct sums, lattice operations, complements and the
//! level-set partition.

use optuple::classes::{
    minus_delta, minus_nabla, partition_of_unity, ratio, scalar_mul, symbolic_dim, type_flags, PrimeLabel, TupleClass,
};
use optuple::scalars::ExtScalar;

fn main() -> optuple::Result<()> {
    let p = PrimeLabel::atom("P", 1);
    let q = PrimeLabel::atom("Q", 2);
    let s = PrimeLabel::semiprime("S");
    let f = PrimeLabel::fractal("F");

    let a = TupleClass::new([(p.clone(), ExtScalar::int(1)), (q.clone(), ExtScalar::int(2)), (f.clone(), ExtScalar::ALEPH0)])?;
    let b = TupleClass::new([(p.clone(), ExtScalar::int(3)), (s.clone(), ExtScalar::frac(1, 2))])?;
    println!("A = {a}");
    println!("B = {b}");
    println!("A + B = {}", a.oplus(&b));
    println!("A v B = {}", a.join(&b));
    println!("A ^ B = {}", a.meet(&b));
    println!("A disjoint B: {}", a.disjoint(&b));

    let half = TupleClass::single(s.clone(), ExtScalar::frac(1, 2))?;
    println!("3/2 . {half} = {}", scalar_mul(ExtScalar::frac(3, 2), &half)?);
    match scalar_mul(ExtScalar::frac(1, 2), &a) {
        Ok(c) => println!("unexpected {c}"),
        Err(e) => println!("1/2 . A refused: {e}"),
    }

    // complements of X <= Y: the least and the greatest X' with X + X' = Y
    let x = TupleClass::new([(p.clone(), ExtScalar::int(1)), (f.clone(), ExtScalar::ALEPH0)])?;
    let y = TupleClass::new([(p.clone(), ExtScalar::int(3)), (f.clone(), ExtScalar::ALEPH0)])?;
    println!("Y - X (least) = {}", minus_delta(&y, &x)?);
    println!("Y - X (greatest) = {}", minus_nabla(&y, &x)?);

    let part = partition_of_unity(&a.oplus(&b));
    for ((t, alpha), e) in &part.levels {
        println!("E^{t}_{alpha} = {e}");
    }
    println!("E_sm = {}", part.e_sm);
    println!("reconstructed: {}", part.reconstruct());

    let flags: Vec<String> = type_flags(&half).iter().map(ToString::to_string).collect();
    println!("flags of {half}: {}", flags.join(", "));
    println!("dim A = {}", symbolic_dim(&a));
    let q2 = TupleClass::single(q, ExtScalar::int(4))?;
    let q1 = TupleClass::single(PrimeLabel::atom("Q", 2), ExtScalar::int(2))?;
    println!("{q2} : {q1} = {}", ratio(&q2, &q1)?);
    Ok(())
}
