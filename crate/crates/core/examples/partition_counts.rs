//! Certified r-color partition counts: evaluate the analytic formula,
//! round, and compare against the exact recurrence.
//!
//!     cargo run --example partition_counts

use rademacher::oracle::p_r_exact_table;
use rademacher::partitions::p_r_certified;
use rademacher::PrecisionContext;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    for r in [1u32, 2, 7, 24] {
        let table = p_r_exact_table(r, 30)?;
        println!("r = {r}:");
        for n in [1u64, 5, 10, 30] {
            let count = p_r_certified(r, n, &ctx, &table)?;
            println!(
                "  p_{r}({n}) = {} (margin {:.2e}, c_max {}, certified: {})",
                count.rounded,
                count.margin,
                count.c_max,
                count.certified == Some(true)
            );
        }
    }
    Ok(())
}
