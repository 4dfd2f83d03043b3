//! Half-integer Bessel functions: the I_{3/2} closed form and the
//! rotation identity I_nu(z) = i^{-nu} J_nu(iz).
//!
//!     cargo run --example bessel_identities

use rademacher::bessel::{bessel_i, bessel_j, i_three_halves_closed, HalfIntOrder};
use rademacher::hp::{exp_two_pi_i, Complex};
use rademacher::PrecisionContext;
use rug::Float;

fn main() -> rademacher::Result<()> {
    let ctx = PrecisionContext::default();
    let prec = ctx.bits;
    let nu = HalfIntOrder::new(3); // nu = 3/2
    for z in [0.01f64, 1.0, 10.0, 30.0] {
        let zc = Complex::real(Float::with_val(prec, z));
        let series = bessel_i(nu, &zc, &ctx)?;
        let closed = i_three_halves_closed(&zc.re);
        let rel = ((series.re.clone() - &closed) / &closed).abs().to_f64();
        println!("I_3/2({z}) = {:.12e}, closed-form relative error {rel:.2e}", closed.to_f64());
    }
    for two_nu in [3i64, 5, 27] {
        let nu = HalfIntOrder::new(two_nu);
        let z = Complex::real(Float::with_val(prec, 2.5));
        let iz = z.mul_i();
        let lhs = bessel_i(nu, &z, &ctx)?;
        let rhs = &exp_two_pi_i(-(two_nu as i128), 8, prec) * &bessel_j(nu, &iz, &ctx)?;
        let rel = (&lhs - &rhs).abs().to_f64() / lhs.abs().to_f64();
        println!("rotation identity at nu = {two_nu}/2: relative residual {rel:.2e}");
    }
    Ok(())
}
