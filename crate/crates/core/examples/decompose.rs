//! Isotypic decomposition of a hidden direct sum.

use optuple::decomp::isotypic_decomposition;
use optuple::jsonio::to_canonical_string;
use optuple::planted::{random_planted, PlantedConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> optuple::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = PlantedConfig { max_dim: 16, ..PlantedConfig::default() };
    let planted = random_planted(&mut rng, cfg);
    let planted_summary: Vec<(usize, usize)> = planted.parts.iter().map(|(p, m)| (p.dim(), *m)).collect();
    println!("planted (atom dim, multiplicity): {planted_summary:?}");

    let report = isotypic_decomposition(&planted.tuple, 1e-8, 0)?;
    println!("recovered (atom dim, multiplicity): {:?}", report.summary());
    println!("residual {:.2e}", report.residual);
    for (i, b) in report.blocks.iter().enumerate() {
        let p = b.projection();
        println!("block {i}: projection rank {:.0}, idempotent defect {:.1e}", p.trace().re, (&p * &p - &p).norm());
    }
    let text = to_canonical_string(&report.to_json());
    println!("report JSON: {} bytes, first line {:?}", text.len(), text.lines().next().unwrap_or(""));
    Ok(())
}
