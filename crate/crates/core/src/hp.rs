//! High-precision complex arithmetic on top of MPFR reals.
//!
//! Only the operations the series evaluations actually need: field
//! arithmetic, exp/log, principal square root and powers under the branch
//! convention -pi <= arg z < pi, and exact-angle roots of unity
//! e^(2 pi i a/b) evaluated from reduced rationals.

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Float, Rational};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A complex number with explicit mantissa precision in both parts.
/// Operations inherit the precision of their left operand and never
/// silently downgrade it.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

pub fn float_pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl Complex {
    pub fn zero(prec: u32) -> Self {
        Complex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Complex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    pub fn with_val(prec: u32, re: f64, im: f64) -> Self {
        Complex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Complex {
            re,
            im: Float::new(prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Round/extend both parts to a new working precision.
    pub fn to_prec(&self, prec: u32) -> Self {
        Complex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: (-&self.im).complete(self.im.prec()),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut s = Float::with_val(prec, &self.re * &self.re);
        s += Float::with_val(prec, &self.im * &self.im);
        s
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// Argument under the convention -pi <= arg z < pi. MPFR's atan2 maps
    /// the negative real axis to +pi; this maps it to -pi instead.
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return -float_pi(prec);
            }
            return Float::new(prec);
        }
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, f: &Float) -> Self {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re * f),
            im: Float::with_val(prec, &self.im * f),
        }
    }

    pub fn unscale(&self, f: &Float) -> Self {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re / f),
            im: Float::with_val(prec, &self.im / f),
        }
    }

    pub fn mul_i(&self) -> Self {
        Complex {
            re: (-&self.im).complete(self.prec()),
            im: self.re.clone(),
        }
    }

    pub fn div(&self, rhs: &Complex) -> Complex {
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        num.unscale(&d)
    }

    pub fn recip(&self) -> Complex {
        let prec = self.prec();
        Complex::one(prec).div(self)
    }

    /// Principal square root: exp(log(z)/2) with -pi <= arg z < pi, so the
    /// negative real axis maps onto the negative imaginary axis.
    pub fn principal_sqrt(&self) -> Result<Complex> {
        if self.is_zero() {
            return Err(Error::domain("principal_sqrt of zero"));
        }
        let mag = self.abs().sqrt();
        let half = self.arg() / 2u32;
        let (sin, cos) = half.sin_cos(Float::new(self.prec()));
        Ok(Complex {
            re: Float::with_val(self.prec(), &mag * &cos),
            im: Float::with_val(self.prec(), &mag * &sin),
        })
    }

    pub fn exp(&self) -> Complex {
        let prec = self.prec();
        let mag = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(prec));
        Complex {
            re: Float::with_val(prec, &mag * &cos),
            im: Float::with_val(prec, &mag * &sin),
        }
    }

    pub fn ln(&self) -> Result<Complex> {
        if self.is_zero() {
            return Err(Error::domain("log of zero"));
        }
        Ok(Complex {
            re: self.abs().ln(),
            im: self.arg(),
        })
    }

    /// Principal power z^e = exp(e log z).
    pub fn pow_float(&self, e: &Float) -> Result<Complex> {
        let l = self.ln()?;
        Ok(Complex {
            re: Float::with_val(self.prec(), &l.re * e),
            im: Float::with_val(self.prec(), &l.im * e),
        }
        .exp())
    }

    /// Integer power by square-and-multiply.
    pub fn powi(&self, mut e: u64) -> Complex {
        let mut acc = Complex::one(self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let prec = self.prec();
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re -= Float::with_val(prec, &self.im * &rhs.im);
        let mut im = Float::with_val(prec, &self.re * &rhs.im);
        im += Float::with_val(prec, &self.im * &rhs.re);
        Complex { re, im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let prec = self.prec();
        Complex {
            re: (-&self.re).complete(prec),
            im: (-&self.im).complete(prec),
        }
    }
}

/// e^(2 pi i num/den) with the angle reduced modulo 1 exactly as a rational
/// before any floating evaluation, so the trig argument stays bounded.
pub fn exp_two_pi_i(num: i128, den: i128, prec: u32) -> Complex {
    assert!(den != 0, "zero denominator in exact phase");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let num = num.rem_euclid(den);
    let frac = Rational::from((rug::Integer::from(num), rug::Integer::from(den)));
    let theta = float_pi(prec) * 2u32 * Float::with_val(prec, &frac);
    let (sin, cos) = theta.sin_cos(Float::new(prec));
    Complex { re: cos, im: sin }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn sqrt_of_positive_real() {
        let z = Complex::with_val(P, 4.0, 0.0);
        let s = z.principal_sqrt().unwrap();
        assert!(close(&s.re, 2.0, 1e-30) && s.im.is_zero());
    }

    #[test]
    fn sqrt_branch_on_negative_axis() {
        // arg(-1) = -pi under the convention, so sqrt(-1) = -i.
        let z = Complex::with_val(P, -1.0, 0.0);
        let s = z.principal_sqrt().unwrap();
        assert!(close(&s.re, 0.0, 1e-30));
        assert!(close(&s.im, -1.0, 1e-30));
    }

    #[test]
    fn sqrt_of_i() {
        let z = Complex::with_val(P, 0.0, 1.0);
        let s = z.principal_sqrt().unwrap();
        let c = (std::f64::consts::FRAC_PI_4).cos();
        assert!(close(&s.re, c, 1e-15) && close(&s.im, c, 1e-15));
    }

    #[test]
    fn sqrt_of_zero_is_domain_error() {
        assert!(Complex::zero(P).principal_sqrt().is_err());
    }

    #[test]
    fn exact_phase_quarters() {
        let z = exp_two_pi_i(1, 4, P);
        assert!(close(&z.re, 0.0, 1e-35) && close(&z.im, 1.0, 1e-35));
        let z = exp_two_pi_i(-3, 4, P); // same as 1/4 turn
        assert!(close(&z.im, 1.0, 1e-35));
        let z = exp_two_pi_i(21, 24, P); // e^{-i pi/4}
        let c = (std::f64::consts::FRAC_PI_4).cos();
        assert!(close(&z.re, c, 1e-15) && close(&z.im, -c, 1e-15));
    }

    #[test]
    fn field_ops_round_trip() {
        let a = Complex::with_val(P, 1.5, -2.25);
        let b = Complex::with_val(P, -0.75, 3.0);
        let prod = &a * &b;
        let back = prod.div(&b);
        assert!((&back - &a).abs().to_f64() < 1e-35);
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let a = Complex::with_val(P, 0.3, 0.4);
        let mut acc = Complex::one(P);
        for _ in 0..7 {
            acc = &acc * &a;
        }
        assert!((&acc - &a.powi(7)).abs().to_f64() < 1e-35);
    }
}
