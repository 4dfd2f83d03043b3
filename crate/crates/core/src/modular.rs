//! SL2(Z), the Dedekind eta function, and its multiplier system.
//!
//! The multiplier v_eta(M) is the 24th root of unity in the transformation
//! law eta(M tau) = v_eta(M) sqrt(c tau + d) eta(tau), with square roots on
//! the branch -pi <= arg z < pi. It is computed here by numerically
//! evaluating that ratio at a sample point and snapping to the nearest
//! 24th root of unity; the snap is exact once the angular residual is well
//! inside the 2 pi / 24 root spacing.
//!
//! Eta itself is evaluated by first pulling the argument into the standard
//! fundamental domain with the exact identities eta(tau + 1) =
//! e^(pi i/12) eta(tau) and eta(-1/tau) = sqrt(-i tau) eta(tau), then
//! summing the sparse pentagonal series (cross-checked against the Euler
//! product) where |q| <= e^(-pi sqrt(3)).

use rug::ops::CompleteRound;
use rug::{Complete, Float, Integer};
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::hp::{exp_two_pi_i, float_pi, Complex};
use crate::precision::PrecisionContext;

/// An element of SL2(Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularMatrix {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl ModularMatrix {
    pub fn new(a: Integer, b: Integer, c: Integer, d: Integer) -> Result<Self> {
        let det = Integer::from(&a * &d) - Integer::from(&b * &c);
        if det != 1 {
            return Err(Error::domain(format!("determinant {det} != 1")));
        }
        Ok(ModularMatrix { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        ModularMatrix::new(a.into(), b.into(), c.into(), d.into())
    }

    /// The translation generator S = [1 1; 0 1].
    pub fn s() -> Self {
        ModularMatrix::from_i64(1, 1, 0, 1).expect("unimodular")
    }

    /// The inversion generator T = [0 -1; 1 0].
    pub fn t() -> Self {
        ModularMatrix::from_i64(0, -1, 1, 0).expect("unimodular")
    }

    pub fn identity() -> Self {
        ModularMatrix::from_i64(1, 0, 0, 1).expect("unimodular")
    }

    pub fn neg(&self) -> Self {
        ModularMatrix {
            a: (-&self.a).complete(),
            b: (-&self.b).complete(),
            c: (-&self.c).complete(),
            d: (-&self.d).complete(),
        }
    }

    pub fn mul(&self, rhs: &ModularMatrix) -> Self {
        ModularMatrix {
            a: Integer::from(&self.a * &rhs.a) + Integer::from(&self.b * &rhs.c),
            b: Integer::from(&self.a * &rhs.b) + Integer::from(&self.b * &rhs.d),
            c: Integer::from(&self.c * &rhs.a) + Integer::from(&self.d * &rhs.c),
            d: Integer::from(&self.c * &rhs.b) + Integer::from(&self.d * &rhs.d),
        }
    }

    /// Moebius action (a tau + b) / (c tau + d).
    pub fn apply(&self, tau: &Complex) -> Complex {
        let prec = tau.prec();
        let num = &tau.scale(&Float::with_val(prec, &self.a))
            + &Complex::real(Float::with_val(prec, &self.b));
        let den = self.automorphy_denom(tau);
        num.div(&den)
    }

    /// c tau + d.
    pub fn automorphy_denom(&self, tau: &Complex) -> Complex {
        let prec = tau.prec();
        &tau.scale(&Float::with_val(prec, &self.c))
            + &Complex::real(Float::with_val(prec, &self.d))
    }
}

/// Exact 24th root of unity e^(2 pi i e / 24), stored as the exponent mod 24.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityRoot24 {
    e: u8,
}

impl UnityRoot24 {
    pub fn new(e: i64) -> Self {
        UnityRoot24 {
            e: e.rem_euclid(24) as u8,
        }
    }

    pub fn exponent(&self) -> u8 {
        self.e
    }

    /// Integer power; exponent arithmetic stays exact mod 24.
    pub fn pow(&self, k: i64) -> Self {
        UnityRoot24::new(self.e as i64 * (k.rem_euclid(24)))
    }

    pub fn inverse(&self) -> Self {
        UnityRoot24::new(-(self.e as i64))
    }

    pub fn value(&self, prec: u32) -> Complex {
        exp_two_pi_i(self.e as i128, 24, prec)
    }
}

impl Mul for UnityRoot24 {
    type Output = UnityRoot24;
    fn mul(self, rhs: UnityRoot24) -> UnityRoot24 {
        UnityRoot24::new(self.e as i64 + rhs.e as i64)
    }
}

/// Complete a coprime bottom row (c, d), c >= 1, to a matrix [a b; c d]
/// in SL2(Z), with a the representative of d^{-1} mod c in [0, c).
pub fn complete_bottom_row(c: i64, d: i64) -> Result<ModularMatrix> {
    if c <= 0 {
        return Err(Error::domain("bottom row requires c >= 1"));
    }
    let ci = Integer::from(c);
    let di = Integer::from(d);
    if Integer::from(ci.gcd_ref(&di)) != 1 {
        return Err(Error::domain(format!("gcd({c}, {d}) != 1")));
    }
    let a = if c == 1 {
        Integer::new()
    } else {
        Integer::from(d.rem_euclid(c))
            .invert(&ci)
            .map_err(|_| Error::domain("no inverse"))?
    };
    let b = ((&a * &di).complete() - 1u32).div_exact(&ci);
    ModularMatrix::new(a, b, ci, di)
}

/// Pull tau into the fundamental domain |Re| <= 1/2, |tau| >= 1 by exact
/// generator moves, returning (factor, reduced) with
/// eta(tau) = factor * eta(reduced).
pub fn reduce_to_fundamental(tau: &Complex, prec: u32) -> Result<(Complex, Complex)> {
    let mut z = tau.to_prec(prec);
    let mut fac = Complex::one(prec);
    for _ in 0..100_000 {
        let t = z.re.clone().round();
        if !t.is_zero() {
            let ti = t
                .to_integer()
                .ok_or_else(|| Error::precision("non-finite value during reduction"))?;
            z.re -= Float::with_val(prec, &ti);
            // eta(z + t) = e^(pi i t / 12) eta(z)
            fac = &fac * &exp_two_pi_i(ti.mod_u(24) as i128, 24, prec);
        }
        if z.norm_sqr() < 1u32 {
            // eta(z) = sqrt(-i sigma) eta(sigma) with sigma = -1/z
            let sigma = -&z.recip();
            let minus_i_sigma = Complex::from_parts(sigma.im.clone(), (-&sigma.re).complete(prec));
            fac = &fac * &minus_i_sigma.principal_sqrt()?;
            z = sigma;
        } else {
            return Ok((fac, z));
        }
    }
    Err(Error::precision("fundamental-domain reduction did not terminate"))
}

/// Eta on the fundamental domain: sparse pentagonal series, cross-checked
/// against the truncated Euler product. Both run at prec + 32 internal bits
/// and must agree to 2^(4 - prec) relative error.
fn eta_fundamental(z: &Complex, prec: u32) -> Result<Complex> {
    let wp = prec + 32;
    let z = z.to_prec(wp);
    let pi = float_pi(wp);
    // 2 pi i z
    let w = Complex::from_parts(
        -Float::with_val(wp, &z.im * &pi) * 2u32,
        Float::with_val(wp, &z.re * &pi) * 2u32,
    );
    let q = w.exp();
    let prefactor = w.unscale(&Float::with_val(wp, 24)).exp();

    let y = z.im.to_f64();
    let bits_per_power = 2.0 * std::f64::consts::PI * y * std::f64::consts::LOG2_E;
    let max_exp = ((wp as f64 + 16.0) / bits_per_power).ceil() as u64 + 1;

    // pentagonal series: 1 + sum_{n>=1} (-1)^n (q^{n(3n-1)/2} + q^{n(3n+1)/2})
    let mut pent = Complex::one(wp);
    let mut n = 1u64;
    loop {
        let e1 = n * (3 * n - 1) / 2;
        if e1 > max_exp {
            break;
        }
        let e2 = n * (3 * n + 1) / 2;
        let mut term = q.powi(e1);
        if e2 <= max_exp {
            term = &term + &q.powi(e2);
        }
        if n % 2 == 1 {
            pent = &pent - &term;
        } else {
            pent = &pent + &term;
        }
        n += 1;
    }

    // Euler product
    let mut prod = Complex::one(wp);
    let mut qn = q.clone();
    for _ in 1..=max_exp {
        prod = &prod * &(&Complex::one(wp) - &qn);
        qn = &qn * &q;
    }

    let pent_val = &prefactor * &pent;
    let prod_val = &prefactor * &prod;
    let diff = (&pent_val - &prod_val).abs();
    let tol = pent_val.abs() * (Float::with_val(wp, 1) >> (prec - 4));
    if diff > tol {
        return Err(Error::precision("pentagonal/product eta cross-check failed"));
    }
    Ok(pent_val.to_prec(prec))
}

/// Evaluate eta(tau) anywhere on the upper half plane.
pub fn eta_eval(tau: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if !(tau.im > 0u32) {
        return Err(Error::domain("eta requires Im(tau) > 0"));
    }
    let wp = ctx.bits + 32;
    let (factor, reduced) = reduce_to_fundamental(tau, wp)?;
    let value = &factor * &eta_fundamental(&reduced, wp)?;
    Ok(value.to_prec(ctx.bits))
}

/// The eta multiplier v_eta(M) as an exact 24th root of unity.
///
/// For c > 0 the transformation ratio is evaluated numerically at the
/// context's sample point (at >= 96 working bits) and snapped to the
/// nearest 24th root; the snap is rejected unless the angular residual is
/// below 0.02 rad against a root spacing of 2 pi / 24 ~ 0.2618 rad.
/// Rows with c < 0 (or c = 0, d < 0) factor through -I, which carries
/// exponent 6 under the branch convention; c = 0 rows are powers of the
/// translation S with exponent b mod 24.
pub fn eta_multiplier(m: &ModularMatrix, ctx: &PrecisionContext) -> Result<UnityRoot24> {
    let c_neg = m.c < 0;
    if c_neg || (m.c.is_zero() && m.d < 0) {
        // v(-M') = i v(M') since sqrt(-(w)) = -i sqrt(w) for Im w > 0
        let inner = eta_multiplier(&m.neg(), ctx)?;
        return Ok(inner * UnityRoot24::new(6));
    }
    if m.c.is_zero() {
        // M = [1 b; 0 1]: eta(tau + b) = e^(pi i b / 12) eta(tau)
        return Ok(UnityRoot24::new(m.b.mod_u(24) as i64));
    }
    let prec = ctx.bits.max(96) + 32;
    let tau0 = Complex::with_val(prec, ctx.sample_point.0, ctx.sample_point.1);
    if !(tau0.im > 0u32) {
        return Err(Error::domain("sample point must lie in the upper half plane"));
    }
    let denom = m.automorphy_denom(&tau0);
    let mtau = m.apply(&tau0);
    let (f1, z1) = reduce_to_fundamental(&mtau, prec)?;
    let eta_m = &f1 * &eta_fundamental(&z1, prec)?;
    let (f0, z0) = reduce_to_fundamental(&tau0, prec)?;
    let eta_0 = &f0 * &eta_fundamental(&z0, prec)?;
    let ratio = eta_m.div(&(&denom.principal_sqrt()? * &eta_0));

    let modulus = ratio.abs().to_f64();
    if (modulus - 1.0).abs() > 1e-3 {
        return Err(Error::precision(format!(
            "multiplier ratio modulus {modulus} far from 1; raise precision"
        )));
    }
    let ang = ratio.arg().to_f64();
    let step = std::f64::consts::PI / 12.0;
    let idx = (ang / step).round();
    let resid = (ang - idx * step).abs();
    if resid >= 0.02 {
        return Err(Error::precision(format!(
            "multiplier snap residual {resid:.4} rad too large; raise precision"
        )));
    }
    Ok(UnityRoot24::new(idx as i64))
}
