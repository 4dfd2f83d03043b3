//! Resolving zeta(14) from a partition count: p_24(1) = 24 pins down
//! B_14 = 28 / p_24(1) = 7/6 through the Eisenstein coefficient formula,
//! and with it zeta(14). Also cross-checks Eisenstein coefficients against
//! their truncated Kloosterman form.
//!
//!     cargo run --example zeta_from_partitions

use rademacher::partitions::zeta14_from_identity;
use rademacher::poincare::{eisenstein_coeff, eisenstein_coeff_kloosterman};
use rademacher::PrecisionContext;
use rug::ops::Pow;
use rug::Float;

fn main() -> rademacher::Result<()> {
    let prec = 192;
    let (b14, zeta) = zeta14_from_identity(prec)?;
    let mut dirichlet = Float::new(prec);
    for n in 1..=100u32 {
        dirichlet += Float::with_val(prec, 1) / Float::with_val(prec, n).pow(14);
    }
    println!("B_14 recovered from p_24(1): {b14}");
    println!("zeta(14) from the identity:  {:.20}", zeta.to_f64());
    println!("partial Dirichlet sum:       {:.20}", dirichlet.to_f64());
    println!("difference: {:.2e}", (zeta - dirichlet).abs().to_f64());

    let ctx = PrecisionContext::default();
    for (k, n) in [(4i64, 1u64), (8, 3), (14, 2)] {
        let exact = eisenstein_coeff(k, n)?;
        let approx = eisenstein_coeff_kloosterman(k, n, 1000, &ctx)?;
        println!(
            "E_{k} coefficient at n = {n}: exact {exact}, Kloosterman form {:.4}",
            approx.to_f64()
        );
    }
    Ok(())
}
