//! The classical one-color expansion of p(n), and its agreement with the
//! coefficient route at a matched series cutoff.
//!
//!     cargo run --example classical_rademacher

use rademacher::oracle::p_exact;
use rademacher::partitions::{consistency_theorem1_vs_theorem4, p1_classical};
use rademacher::PrecisionContext;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    for n in [100u64, 200] {
        let count = p1_classical(n, &ctx, None)?;
        let exact = p_exact(n);
        println!(
            "p({n}) = {} (margin {:.2e}, c_max {}, exact match: {})",
            count.rounded,
            count.margin,
            count.c_max,
            count.rounded == exact
        );
    }
    for n in [1u64, 10, 50] {
        let (classical, coefficient) = consistency_theorem1_vs_theorem4(n, &ctx)?;
        let rel = ((classical.clone() - &coefficient) / &classical).abs().to_f64();
        println!("n = {n}: expansions differ by relative {rel:.2e}");
    }
    Ok(())
}
