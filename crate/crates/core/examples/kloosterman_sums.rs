//! Generalized Kloosterman sums with the eta multiplier: sample values,
//! the index symmetry, and the Moebius specialization A(0, 1; c) = mu(c).
//!
//!     cargo run --example kloosterman_sums

use rademacher::kloosterman::{kloosterman_sum, kloosterman_symmetry_check, RationalIndex24};
use rademacher::verify::moebius;
use rademacher::PrecisionContext;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    let m = RationalIndex24::new(-1); // m = -1/24, the p(n) index
    for c in [1u64, 2, 5, 12] {
        let a = kloosterman_sum(m, RationalIndex24::new(24 * 5 - 1), c, &ctx)?;
        println!(
            "A(-1/24, 119/24; {c}) = {:.6} + {:.6}i ({} terms)",
            a.value.re.to_f64(),
            a.value.im.to_f64(),
            a.term_count
        );
    }
    for (n, c) in [(1u64, 7u64), (4, 11), (9, 25)] {
        let resid = kloosterman_symmetry_check(n, c, &ctx)?;
        println!("symmetry residual at (n, c) = ({n}, {c}): {:.2e}", resid.to_f64());
    }
    for c in 1..=12u64 {
        let a = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), c, &ctx)?;
        println!("A(0, 1; {c:2}) = {:+.3}  mu({c}) = {:+}", a.value.re.to_f64(), moebius(c));
    }
    Ok(())
}
