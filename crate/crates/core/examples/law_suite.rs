//! Run the exhaustive symbolic law suite and print one line per law.
//!
//! `cargo run --release --example law_suite -- 3`

use std::time::Instant;

use optuple::oracle::{default_mult_set, exhaustive_law_suite};

fn main() -> optuple::Result<()> {
    let size = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let start = Instant::now();
    let report = exhaustive_law_suite(size, &default_mult_set())?;
    for law in &report.laws {
        let tag = if law.expected_failure { " (documented negative case)" } else { "" };
        println!("{:<28} cases {:>10}  failures {}{tag}", law.law, law.cases, law.failure_count);
        for f in &law.failures {
            println!("    {f}");
        }
    }
    println!(
        "{} registries, {} cases, {} unexpected failures in {:.1?}",
        report.registries,
        report.total_cases(),
        report.unexpected_failures(),
        start.elapsed()
    );
    Ok(())
}
