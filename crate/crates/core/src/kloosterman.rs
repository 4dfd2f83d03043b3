//! Generalized Kloosterman sums A(m, n; c) twisted by powers of the eta
//! multiplier.
//!
//! A(m, n; c) = sum over d mod c, (c, d) = 1, of
//!   v_eta(M)^(-24m) e^(2 pi i (m a + n d) / c),   M = [a *; c d],
//! with d running over the canonical residues [0, c) and a the [0, c)
//! representative of d^(-1) mod c. Both the multiplier power and the phase
//! are exact rationals with denominator dividing 24c; only the final
//! complex exponentials are floating.

use rug::Float;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::hp::{exp_two_pi_i, Complex};
use crate::modular::{complete_bottom_row, eta_multiplier};
use crate::precision::PrecisionContext;

/// An element of (1/24)Z stored exactly as the scaled integer t, value t/24.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalIndex24 {
    pub t: i64,
}

impl RationalIndex24 {
    pub fn new(t: i64) -> Self {
        RationalIndex24 { t }
    }

    pub fn is_integer(&self) -> bool {
        self.t % 24 == 0
    }

    pub fn is_positive(&self) -> bool {
        self.t > 0
    }

    pub fn neg(&self) -> Self {
        RationalIndex24 { t: -self.t }
    }

    pub fn add(&self, other: RationalIndex24) -> Self {
        RationalIndex24 { t: self.t + other.t }
    }

    pub fn to_f64(&self) -> f64 {
        self.t as f64 / 24.0
    }
}

/// Value of one Kloosterman sum, with the number of summed terms phi(c).
#[derive(Clone, Debug)]
pub struct KloostermanValue {
    pub value: Complex,
    pub c: u64,
    pub term_count: u64,
}

/// Exponent cache for v_eta at completed bottom rows. The exponent is an
/// exact integer mod 24, independent of precision and sample point, so a
/// process-wide cache is sound.
fn exponent_cache() -> &'static Mutex<HashMap<(u64, u64), u8>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), u8>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// v_eta exponent of the completed bottom row (c, d), memoized by (c, d).
pub fn multiplier_exponent(c: u64, d: u64, ctx: &PrecisionContext) -> Result<u8> {
    if let Some(&e) = exponent_cache().lock().unwrap().get(&(c, d)) {
        return Ok(e);
    }
    let m = complete_bottom_row(c as i64, d as i64)?;
    let e = eta_multiplier(&m, ctx)?.exponent();
    exponent_cache().lock().unwrap().insert((c, d), e);
    Ok(e)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse of d mod c in [0, c); c >= 1, gcd(c, d) = 1.
fn inv_mod(d: u64, c: u64) -> u64 {
    if c == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (c as i128, (d % c) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(c as i128) as u64
}

/// A(m, n; c). Requires c >= 1; m, n are exact elements of (1/24)Z.
pub fn kloosterman_sum(
    m: RationalIndex24,
    n: RationalIndex24,
    c: u64,
    ctx: &PrecisionContext,
) -> Result<KloostermanValue> {
    if c == 0 {
        return Err(Error::domain("kloosterman sum requires c >= 1"));
    }
    let prec = ctx.bits;
    // v^(-24m) is trivial whenever 24m is a multiple of 24, in particular
    // for the Ramanujan sums (m = 0) and all integer spectral indices.
    let multiplier_trivial = m.t % 24 == 0;
    let mut sum = Complex::zero(prec);
    let mut terms = 0u64;
    let den = 24i128 * c as i128;
    for d in 0..c {
        if gcd(c, d) != 1 {
            continue;
        }
        let a = inv_mod(d, c);
        let e_pow: i128 = if multiplier_trivial {
            0
        } else {
            let e = multiplier_exponent(c, d, ctx)? as i128;
            (-(m.t as i128) * e).rem_euclid(24)
        };
        // turns = e_pow/24 + (m a + n d)/(24 c), over the common denominator 24c
        let num = e_pow * c as i128 + m.t as i128 * a as i128 + n.t as i128 * d as i128;
        sum = &sum + &exp_two_pi_i(num, den, prec);
        terms += 1;
    }
    Ok(KloostermanValue {
        value: sum,
        c,
        term_count: terms,
    })
}

/// Same sum with every completion shifted by S^shift on the left
/// (a -> a + shift * c), evaluating the multiplier directly, bypassing the
/// cache. Diagnostic: well-definedness of the summand means the result is
/// independent of shift.
pub fn kloosterman_sum_shifted(
    m: RationalIndex24,
    n: RationalIndex24,
    c: u64,
    shift: u64,
    ctx: &PrecisionContext,
) -> Result<KloostermanValue> {
    if c == 0 {
        return Err(Error::domain("kloosterman sum requires c >= 1"));
    }
    let prec = ctx.bits;
    let mut sum = Complex::zero(prec);
    let mut terms = 0u64;
    let den = 24i128 * c as i128;
    let s_shift = {
        let mut m = crate::modular::ModularMatrix::identity();
        for _ in 0..shift {
            m = m.mul(&crate::modular::ModularMatrix::s());
        }
        m
    };
    for d in 0..c {
        if gcd(c, d) != 1 {
            continue;
        }
        let a = inv_mod(d, c) + shift * c;
        let mat = s_shift.mul(&complete_bottom_row(c as i64, d as i64)?);
        let e = eta_multiplier(&mat, ctx)?.exponent() as i128;
        let e_pow = (-(m.t as i128) * e).rem_euclid(24);
        let num = e_pow * c as i128 + m.t as i128 * a as i128 + n.t as i128 * d as i128;
        sum = &sum + &exp_two_pi_i(num, den, prec);
        terms += 1;
    }
    Ok(KloostermanValue {
        value: sum,
        c,
        term_count: terms,
    })
}

/// Residual of the half-integer-weight symmetry relation
/// i^(-1/2) A(-n + 1/24, 1/24; c) = i^(1/2) A(-1/24, n - 1/24; c).
pub fn kloosterman_symmetry_check(n: u64, c: u64, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits;
    let lhs = kloosterman_sum(
        RationalIndex24::new(1 - 24 * n as i64),
        RationalIndex24::new(1),
        c,
        ctx,
    )?;
    let rhs = kloosterman_sum(
        RationalIndex24::new(-1),
        RationalIndex24::new(24 * n as i64 - 1),
        c,
        ctx,
    )?;
    // i^(1/2) = e^(i pi/4) under the principal branch
    let lhs = &exp_two_pi_i(-1, 8, prec) * &lhs.value;
    let rhs = &exp_two_pi_i(1, 8, prec) * &rhs.value;
    Ok((&lhs - &rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn euler_phi(mut n: u64) -> u64 {
        let mut result = n;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                while n % p == 0 {
                    n /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if n > 1 {
            result -= result / n;
        }
        result
    }

    #[test]
    fn single_term_sums() {
        let c = ctx();
        // A(-1/24, n - 1/24; 1) = v(T)^1 = e^(-i pi/4) for any n
        for n in [1u64, 5, 17] {
            let v = kloosterman_sum(
                RationalIndex24::new(-1),
                RationalIndex24::new(24 * n as i64 - 1),
                1,
                &c,
            )
            .unwrap();
            assert_eq!(v.term_count, 1);
            let w = exp_two_pi_i(21, 24, c.bits);
            assert!((&v.value - &w).abs().to_f64() < 1e-30);
        }
        // A(0, 1; 1) = 1
        let v = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), 1, &c).unwrap();
        assert!((v.value.re.to_f64() - 1.0).abs() < 1e-30 && v.value.im.to_f64().abs() < 1e-30);
    }

    #[test]
    fn ramanujan_sum_at_two() {
        let c = ctx();
        let v = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), 2, &c).unwrap();
        assert!((v.value.re.to_f64() + 1.0).abs() < 1e-30);
        assert!(v.value.im.to_f64().abs() < 1e-30);
    }

    #[test]
    fn invalid_c() {
        assert!(kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), 0, &ctx()).is_err());
    }

    #[test]
    fn magnitude_bounded_by_phi() {
        let c = ctx();
        for cc in 1..=30u64 {
            let v = kloosterman_sum(RationalIndex24::new(-23), RationalIndex24::new(1), cc, &c).unwrap();
            assert_eq!(v.term_count, euler_phi(cc), "phi({cc})");
            assert!(v.value.abs().to_f64() <= v.term_count as f64 + 1e-9);
        }
    }

    #[test]
    fn symmetry_relation_samples() {
        let c = ctx();
        for (n, cc) in [(1u64, 1u64), (3, 5), (7, 12)] {
            let r = kloosterman_symmetry_check(n, cc, &c).unwrap();
            assert!(r.to_f64() < 2f64.powi(-64), "n = {n}, c = {cc}: {}", r.to_f64());
        }
    }

    #[test]
    fn completion_shift_invariance() {
        let c = ctx();
        for (m, n, cc) in [(-23i64, 1i64, 5u64), (-47, 1, 7), (1, 25, 6), (-1, 23, 12)] {
            let base = kloosterman_sum(RationalIndex24::new(m), RationalIndex24::new(n), cc, &c).unwrap();
            for shift in [1u64, 3] {
                let shifted =
                    kloosterman_sum_shifted(RationalIndex24::new(m), RationalIndex24::new(n), cc, shift, &c)
                        .unwrap();
                let d = (&base.value - &shifted.value).abs().to_f64();
                assert!(d < 2f64.powi(-64), "m={m} n={n} c={cc} shift={shift}: {d}");
            }
        }
    }

    #[test]
    fn rational_index_arithmetic() {
        let a = RationalIndex24::new(-23);
        assert!(!a.is_integer());
        assert!(RationalIndex24::new(48).is_integer());
        assert_eq!(a.neg().t, 23);
        assert_eq!(a.add(RationalIndex24::new(24)).t, 1);
    }
}
