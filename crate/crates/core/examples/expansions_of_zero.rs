//! Expansions of zero: for r in {12, 24} the positive-index Poincaré
//! series of weight 2 + r/2 land in trivial cusp-form spaces, so every
//! computed coefficient must vanish — a stringent end-to-end null test.
//!
//!     cargo run --example expansions_of_zero

use rademacher::partitions::expansion_of_zero;
use rademacher::PrecisionContext;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    for r in [12u32, 24] {
        for n in 1..=5u64 {
            let res = expansion_of_zero(r, n, &ctx)?;
            println!(
                "r = {r}, n = {n}: |coefficient| = {:.2e} (c_max {})",
                res.value.abs().to_f64(),
                res.c_max
            );
        }
    }
    Ok(())
}
