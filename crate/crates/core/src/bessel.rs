//! Bessel functions J and I of half-integer order by power series, the
//! gamma function at half-integers, and the sinh kernel of the classical
//! partition series.
//!
//! The arguments arising in the coefficient sums are 4 pi sqrt(|m| n) / c,
//! moderate at desk scale, so the direct power series converge quickly and
//! no asymptotic regime is needed; precision is raised instead.

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::hp::{float_pi, Complex};
use crate::precision::PrecisionContext;

/// An exact half-integer order nu = two_nu / 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfIntOrder {
    pub two_nu: i64,
}

impl HalfIntOrder {
    pub fn new(two_nu: i64) -> Self {
        HalfIntOrder { two_nu }
    }

    pub fn to_f64(&self) -> f64 {
        self.two_nu as f64 / 2.0
    }
}

/// Gamma(x) for x = two_x / 2 > 0, kept as an exact rational times sqrt(pi)
/// internally: Gamma(1/2) = sqrt(pi) and Gamma(j + 1/2) = (2j)!/(4^j j!) sqrt(pi).
pub fn gamma_half(two_x: i64, prec: u32) -> Result<Float> {
    if two_x < 1 {
        return Err(Error::domain("gamma_half requires a positive argument"));
    }
    if two_x % 2 == 0 {
        let x = two_x / 2;
        return Ok(Float::with_val(prec, Integer::factorial((x - 1) as u32).complete()));
    }
    let j = ((two_x - 1) / 2) as u32;
    let rat = Rational::from((
        Integer::factorial(2 * j).complete(),
        Integer::from(4).pow(j) * Integer::factorial(j).complete(),
    ));
    Ok(Float::with_val(prec, &rat) * float_pi(prec).sqrt())
}

/// Shared power series
/// sum_{p>=0} s^p (z/2)^(2p+nu) / (p! Gamma(p+nu+1)), s = -1 for J, +1 for I.
/// Truncated when the next term drops below 2^(-prec-8-extra) of the
/// partial sum.
fn bessel_series(nu: HalfIntOrder, z: &Complex, prec: u32, alternating: bool, extra_cutoff_bits: u32) -> Result<Complex> {
    if nu.two_nu < 0 {
        return Err(Error::domain("bessel series requires nu >= 0"));
    }
    if z.is_zero() {
        return Ok(if nu.two_nu == 0 {
            Complex::one(prec)
        } else {
            Complex::zero(prec)
        });
    }
    let half = z.unscale(&Float::with_val(prec, 2));
    // (z/2)^nu
    let lead = if nu.two_nu % 2 == 0 {
        half.powi((nu.two_nu / 2) as u64)
    } else {
        half.pow_float(&(Float::with_val(prec, nu.two_nu) / 2u32))?
    };
    let mut z2 = &half * &half;
    if alternating {
        z2 = -&z2;
    }
    let mut term = lead.unscale(&gamma_half(nu.two_nu + 2, prec)?);
    let mut sum = term.clone();
    let eps = Float::with_val(prec, 1) >> (prec + 8 + extra_cutoff_bits);
    let floor = Float::with_val(prec, 1) >> prec;
    for p in 1..200_000i64 {
        term = &term * &z2;
        // p (p + nu) = p (2p + two_nu) / 2
        let denom = Float::with_val(prec, p) * Float::with_val(prec, 2 * p + nu.two_nu) / 2u32;
        term = term.unscale(&denom);
        sum = &sum + &term;
        let bound = Float::with_val(prec, &sum.abs() + &floor) * &eps;
        if term.abs() < bound {
            return Ok(sum);
        }
    }
    Err(Error::precision("bessel series did not converge"))
}

/// Ordinary Bessel function J_nu(z), nu >= 0.
pub fn bessel_j(nu: HalfIntOrder, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    bessel_series(nu, z, ctx.bits, true, 0)
}

/// Modified Bessel function I_nu(z), nu >= 0; all series terms positive for
/// z > 0 so there is no cancellation.
pub fn bessel_i(nu: HalfIntOrder, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    bessel_series(nu, z, ctx.bits, false, 0)
}

/// J with a tightened truncation cutoff; for stability diagnostics.
pub fn bessel_j_tight(nu: HalfIntOrder, z: &Complex, ctx: &PrecisionContext, extra_bits: u32) -> Result<Complex> {
    bessel_series(nu, z, ctx.bits, true, extra_bits)
}

/// I with a tightened truncation cutoff; for stability diagnostics.
pub fn bessel_i_tight(nu: HalfIntOrder, z: &Complex, ctx: &PrecisionContext, extra_bits: u32) -> Result<Complex> {
    bessel_series(nu, z, ctx.bits, false, extra_bits)
}

/// Closed form I_{3/2}(z) = sqrt(2/(pi z)) (cosh z - sinh z / z), z > 0.
pub fn i_three_halves_closed(z: &Float) -> Float {
    let prec = z.prec();
    let front = (Float::with_val(prec, 2) / (float_pi(prec) * z)).sqrt();
    let inner = z.clone().cosh() - z.clone().sinh() / z;
    front * inner
}

/// Closed form J_{1/2}(z) = sqrt(2/(pi z)) sin z, z > 0.
pub fn j_half_closed(z: &Float) -> Float {
    let prec = z.prec();
    let front = (Float::with_val(prec, 2) / (float_pi(prec) * z)).sqrt();
    front * z.clone().sin()
}

/// The analytic derivative d/dn [ sinh(mu sqrt(n - 1/24) / c) / sqrt(n - 1/24) ]
/// with mu = pi sqrt(2/3), evaluated in closed form with t = sqrt(n - 1/24):
/// (mu / c) cosh(mu t / c) / (2 t^2) - sinh(mu t / c) / (2 t^3).
pub fn sinh_kernel(n: u64, c: u64, prec: u32) -> Result<Float> {
    if n < 1 || c < 1 {
        return Err(Error::domain("sinh_kernel requires n >= 1, c >= 1"));
    }
    let mu = float_pi(prec) * (Float::with_val(prec, 2) / 3u32).sqrt();
    let t2 = Float::with_val(prec, Rational::from((24 * n as i64 - 1, 24)));
    let t = t2.clone().sqrt();
    let x = Float::with_val(prec, &mu * &t) / c;
    let mu_over_c = mu / c;
    let first = mu_over_c * x.clone().cosh() / (Float::with_val(prec, &t2 * 2u32));
    let second = x.sinh() / (Float::with_val(prec, &t2 * &t) * 2u32);
    Ok(first - second)
}
