//! Extended scalars: exact rationals plus a tower of alephs.

use optuple::scalars::ExtScalar;

fn main() -> optuple::Result<()> {
    let half: ExtScalar = "1/2".parse()?;
    let two = ExtScalar::int(2);
    let aleph0 = ExtScalar::ALEPH0;

    println!("1/2 + 1/2 = {}", half + half);
    println!("2 * aleph0 = {}", two * aleph0);
    println!("0 * aleph1 = {}", ExtScalar::ZERO * ExtScalar::aleph(1));
    println!("aleph0 + aleph2 = {}", aleph0 + ExtScalar::aleph(2));

    // least x with a + x = b
    println!("3 - 1 = {}", ExtScalar::sub_delta(ExtScalar::int(3), ExtScalar::ONE)?);
    println!("aleph0 - 5 = {}", ExtScalar::sub_delta(aleph0, ExtScalar::int(5))?);
    println!("aleph0 - aleph0 = {}", ExtScalar::sub_delta(aleph0, aleph0)?);

    println!("order: 3/2 < aleph0 < aleph1 is {}", half * ExtScalar::int(3) < aleph0 && aleph0 < ExtScalar::aleph(1));
    println!("json of aleph1: {}", ExtScalar::aleph(1).to_json());
    Ok(())
}
