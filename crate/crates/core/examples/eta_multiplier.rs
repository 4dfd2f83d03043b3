//! The eta multiplier system: exact 24th roots of unity recovered from
//! numeric evaluation and checked against the transformation law.
//!
//!     cargo run --example eta_multiplier

use rademacher::hp::Complex;
use rademacher::modular::{eta_eval, eta_multiplier, ModularMatrix};
use rademacher::PrecisionContext;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    let prec = ctx.bits;
    let samples = [
        ModularMatrix::s(),
        ModularMatrix::t(),
        ModularMatrix::from_i64(2, 1, 5, 3)?,
        ModularMatrix::from_i64(7, 2, 38, 11)?,
    ];
    for mat in &samples {
        let v = eta_multiplier(mat, &ctx)?;
        let tau = Complex::with_val(prec, 0.2, 0.9);
        let lhs = eta_eval(&mat.apply(&tau), &ctx)?;
        let rhs = &(&v.value(prec) * &mat.automorphy_denom(&tau).principal_sqrt()?)
            * &eta_eval(&tau, &ctx)?;
        let resid = (&lhs - &rhs).abs().to_f64() / lhs.abs().to_f64();
        println!(
            "{mat:?}: v_eta = zeta_24^{:2}, transformation residual {resid:.2e}",
            v.exponent()
        );
    }
    Ok(())
}
