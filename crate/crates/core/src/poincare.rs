//! Fourier coefficients of Poincaré series of weight k >= 5/2 and spectral
//! index m in (1/24)Z with k - 12m even: Kloosterman–Bessel sums over c for
//! m != 0, and the exact Eisenstein closed form for m = 0.
//!
//! There is no a-priori tail bound for the sums over c here; truncation is
//! accepted a posteriori when doubling the cutoff moves the value by less
//! than the requested target (and, downstream, when the rounded integer is
//! certified against the exact oracle).

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::bessel::{bessel_i, bessel_j, HalfIntOrder};
use crate::error::{Error, Result};
use crate::hp::{exp_two_pi_i, float_pi, Complex};
use crate::kloosterman::{kloosterman_sum, RationalIndex24};
use crate::oracle::{bernoulli, sigma};
use crate::precision::PrecisionContext;

/// Weight and index pair (k, m), k = two_k / 2 >= 5/2, m in (1/24)Z with
/// k - 12m an even integer (validated exactly on scaled integers).
#[derive(Clone, Copy, Debug)]
pub struct WeightIndexPair {
    pub two_k: i64,
    pub m: RationalIndex24,
}

impl WeightIndexPair {
    pub fn new(two_k: i64, m: RationalIndex24) -> Result<Self> {
        if two_k < 5 {
            return Err(Error::domain("weight must be at least 5/2"));
        }
        // k - 12m = (two_k - m24) / 2 must be an even integer
        if (two_k - m.t).rem_euclid(4) != 0 {
            return Err(Error::domain(format!(
                "k - 12m not an even integer for two_k = {two_k}, 24m = {}",
                m.t
            )));
        }
        Ok(WeightIndexPair { two_k, m })
    }

    pub fn k_f64(&self) -> f64 {
        self.two_k as f64 / 2.0
    }
}

/// One per-c term of a coefficient sum, for diagnostics output.
#[derive(Clone, Debug)]
pub struct CoeffTerm {
    pub c: u64,
    pub kloosterman: Complex,
    pub term: Complex,
}

/// A truncated coefficient value with its truncation diagnostics.
#[derive(Clone, Debug)]
pub struct CoefficientResult {
    pub value: Complex,
    pub c_max: u64,
    /// |value(c_max) - value(c_max/2)|, the doubling-check residual.
    pub tail_estimate: f64,
    pub converged: bool,
    pub terms: Option<Vec<CoeffTerm>>,
}

/// Truncation policy for one evaluation.
#[derive(Clone, Debug)]
pub struct Truncation {
    /// First checkpoint; defaults to max(32, ceil(8 sqrt(24n + 24|m|))).
    pub c_first: Option<u64>,
    /// Evaluate at exactly this cutoff instead of doubling adaptively.
    pub fixed: Option<u64>,
    /// Absolute doubling-check target on the assembled coefficient.
    pub target: f64,
    pub keep_terms: bool,
}

impl Truncation {
    pub fn adaptive(target: f64) -> Self {
        Truncation {
            c_first: None,
            fixed: None,
            target,
            keep_terms: false,
        }
    }

    pub fn fixed(c_max: u64) -> Self {
        Truncation {
            c_first: None,
            fixed: Some(c_max),
            target: 0.0,
            keep_terms: false,
        }
    }
}

/// Default first checkpoint of the doubling policy.
pub fn default_c_first(m: RationalIndex24, n: RationalIndex24) -> u64 {
    let s = (n.t.abs() + m.t.abs()) as f64;
    32u64.max((8.0 * s.sqrt()).ceil() as u64)
}

pub(crate) struct AdaptiveSum {
    pub sum: Complex,
    pub c_max: u64,
    pub tail_estimate: f64,
    pub converged: bool,
}

/// Sum term(1) + term(2) + ... with checkpoints at c_first/2, c_first,
/// 2 c_first, ...; stop once consecutive checkpoints differ (scaled by
/// `scale`) by less than `target`, or at the fixed/cap limit.
pub(crate) fn sum_adaptive(
    prec: u32,
    c_first: u64,
    cap: u64,
    fixed: Option<u64>,
    target: f64,
    scale: f64,
    term: &mut dyn FnMut(u64) -> Result<Complex>,
) -> Result<AdaptiveSum> {
    let limit = fixed.unwrap_or(cap).min(cap);
    let first = fixed.unwrap_or(c_first).min(limit).max(1);
    let mut next_checkpoint = (first / 2).max(1);
    let mut prev: Option<Complex> = None;
    let mut sum = Complex::zero(prec);
    let mut tail = f64::INFINITY;
    let mut c = 0u64;
    let converged = loop {
        c += 1;
        sum = &sum + &term(c)?;
        if c == next_checkpoint {
            if let Some(p) = &prev {
                tail = (&sum - p).abs().to_f64() * scale;
                if fixed.is_none() && tail < target {
                    break true;
                }
            }
            prev = Some(sum.clone());
            next_checkpoint = if c < first { first } else { c * 2 };
        }
        if c >= limit {
            break fixed.is_some() && tail < target;
        }
    };
    Ok(AdaptiveSum {
        sum,
        c_max: c,
        tail_estimate: tail,
        converged,
    })
}

/// Shared Kloosterman–Bessel assembly for m != 0:
/// prefactor * sum_c A(m, n; c)/c * B_{k-1}(4 pi sqrt(|m| n) / c), with
/// B = J and a Kronecker delta for m > 0, B = I for m < 0, and
/// prefactor = 2 pi i^{-k} (n / |m|)^{(k-1)/2}.
pub fn eval_series(
    pair: &WeightIndexPair,
    n: RationalIndex24,
    ctx: &PrecisionContext,
    trunc: &Truncation,
) -> Result<CoefficientResult> {
    if pair.m.t == 0 {
        return Err(Error::domain("m = 0 is the Eisenstein case"));
    }
    if n.t <= 0 {
        return Err(Error::domain("coefficient index must be positive"));
    }
    if (n.t - pair.m.t).rem_euclid(24) != 0 {
        return Err(Error::domain(format!(
            "index 24n = {} not congruent to 24m = {} mod 24",
            n.t, pair.m.t
        )));
    }
    let prec = ctx.bits;
    let ratio = Float::with_val(prec, n.t) / Float::with_val(prec, pair.m.t.abs());
    let power = ratio.pow(Float::with_val(prec, pair.two_k - 2) / 4u32);
    let prefactor = exp_two_pi_i(-(pair.two_k as i128), 8, prec)
        .scale(&(float_pi(prec) * 2u32 * &power));
    let prefactor_abs = prefactor.abs().to_f64();
    // 4 pi sqrt(|m| n) = pi sqrt(24|m| 24n) / 6
    let z1 = float_pi(prec) * Float::with_val(prec, pair.m.t.abs() * n.t).sqrt() / 6u32;
    let order = HalfIntOrder::new(pair.two_k - 2);
    let positive_m = pair.m.t > 0;

    let mut terms: Option<Vec<CoeffTerm>> = if trunc.keep_terms { Some(Vec::new()) } else { None };
    let c_first = trunc.c_first.or(ctx.c_max_initial).unwrap_or_else(|| default_c_first(pair.m, n));
    let mut body = |c: u64| -> Result<Complex> {
        let a = kloosterman_sum(pair.m, n, c, ctx)?;
        let z = Complex::real(Float::with_val(prec, &z1 / c));
        let b = if positive_m {
            bessel_j(order, &z, ctx)?
        } else {
            bessel_i(order, &z, ctx)?
        };
        let t = (&a.value * &b).unscale(&Float::with_val(prec, c));
        if let Some(list) = terms.as_mut() {
            list.push(CoeffTerm {
                c,
                kloosterman: a.value.clone(),
                term: &t * &prefactor,
            });
        }
        Ok(t)
    };
    let summed = sum_adaptive(
        prec,
        c_first,
        ctx.c_max_cap,
        trunc.fixed,
        trunc.target,
        prefactor_abs,
        &mut body,
    )?;
    let mut value = &prefactor * &summed.sum;
    if positive_m && pair.m.t == n.t {
        value = &value + &Complex::one(prec);
    }
    Ok(CoefficientResult {
        value,
        c_max: summed.c_max,
        tail_estimate: summed.tail_estimate,
        converged: summed.converged,
        terms,
    })
}

/// Coefficient c_n of P_{k,m} for m < 0 (I-Bessel series).
/// Fails with a precision error if the doubling check cannot reach the
/// requested target before the truncation cap.
pub fn coeff_negative_m(
    pair: &WeightIndexPair,
    n: RationalIndex24,
    ctx: &PrecisionContext,
    trunc: &Truncation,
) -> Result<CoefficientResult> {
    if pair.m.t >= 0 {
        return Err(Error::domain("coeff_negative_m requires m < 0"));
    }
    let res = eval_series(pair, n, ctx, trunc)?;
    if trunc.fixed.is_none() && !res.converged {
        return Err(Error::precision(format!(
            "doubling check stalled at c_max = {} (tail {:.3e})",
            res.c_max, res.tail_estimate
        )));
    }
    Ok(res)
}

/// Coefficient c_n of P_{k,m} for m > 0 (J-Bessel series plus Kronecker delta).
pub fn coeff_positive_m(
    pair: &WeightIndexPair,
    n: RationalIndex24,
    ctx: &PrecisionContext,
    trunc: &Truncation,
) -> Result<CoefficientResult> {
    if pair.m.t <= 0 {
        return Err(Error::domain("coeff_positive_m requires m > 0"));
    }
    let res = eval_series(pair, n, ctx, trunc)?;
    if trunc.fixed.is_none() && !res.converged {
        return Err(Error::precision(format!(
            "doubling check stalled at c_max = {} (tail {:.3e})",
            res.c_max, res.tail_estimate
        )));
    }
    Ok(res)
}

/// Exact Eisenstein coefficient of weight k (even, >= 4) at n >= 1:
/// -(2k / B_k) sigma_{k-1}(n). An integer for every weight used here.
pub fn eisenstein_coeff(k: i64, n: u64) -> Result<Rational> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::domain("Eisenstein coefficients require even k >= 4"));
    }
    if n < 1 {
        return Err(Error::domain("Eisenstein coefficients require n >= 1"));
    }
    let s = sigma(k as u32 - 1, n)?;
    let b = bernoulli(k as u32);
    Ok(-Rational::from((Integer::from(2 * k) * s, Integer::from(1))) / b)
}

/// The same coefficient through the truncated Kloosterman form
/// (-1)^(k/2) (2 pi)^k n^(k-1) / (k-1)! * sum_{c<=c_max} A(0, n; c) / c^k.
/// Converges like a zeta tail, so only loose agreement is expected.
pub fn eisenstein_coeff_kloosterman(
    k: i64,
    n: u64,
    c_max: u64,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::domain("Eisenstein coefficients require even k >= 4"));
    }
    let prec = ctx.bits;
    let mut sum = Float::new(prec);
    for c in 1..=c_max {
        let a = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24 * n as i64), c, ctx)?;
        sum += a.value.re / Float::with_val(prec, c).pow(k as u32);
    }
    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
    let front = (float_pi(prec) * 2u32).pow(k as u32)
        * Float::with_val(prec, Integer::from(n).pow(k as u32 - 1))
        / Float::with_val(prec, Integer::factorial(k as u32 - 1).complete());
    Ok(front * sum * sign)
}

/// zeta(k) for even k >= 2 through the Bernoulli closed form
/// zeta(k) = (-1)^(k/2+1) (2 pi)^k B_k / (2 k!).
pub fn zeta_even(k: i64, prec: u32) -> Result<Float> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::domain("zeta_even requires even k >= 2"));
    }
    let b = Float::with_val(prec, &bernoulli(k as u32));
    let sign = if (k / 2) % 2 == 0 { -1 } else { 1 };
    Ok((float_pi(prec) * 2u32).pow(k as u32) * b
        / (Float::with_val(prec, Integer::factorial(k as u32).complete()) * 2u32)
        * sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::p_r_exact_table;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn weight_index_validation() {
        // k = 5/2, m = -23/24: k - 12m = 2 + 12n is even
        assert!(WeightIndexPair::new(5, RationalIndex24::new(-23)).is_ok());
        assert!(WeightIndexPair::new(5, RationalIndex24::new(-22)).is_err());
        assert!(WeightIndexPair::new(4, RationalIndex24::new(0)).is_err());
        assert!(WeightIndexPair::new(28, RationalIndex24::new(48)).is_ok());
    }

    #[test]
    fn index_mismatch_is_domain_error() {
        let pair = WeightIndexPair::new(5, RationalIndex24::new(-23)).unwrap();
        // 24n = 12 is not congruent to -23 mod 24
        let err = eval_series(&pair, RationalIndex24::new(12), &ctx(), &Truncation::adaptive(0.1));
        assert!(err.is_err());
    }

    #[test]
    fn weight_five_halves_gives_minus_p1() {
        // c_{1/24} of P_{5/2, -23/24} equals -p(1) = -1
        let pair = WeightIndexPair::new(5, RationalIndex24::new(-23)).unwrap();
        let res = eval_series(&pair, RationalIndex24::new(1), &ctx(), &Truncation::adaptive(0.05)).unwrap();
        assert!(res.converged);
        assert!((res.value.re.to_f64() + 1.0).abs() < 0.1, "{}", res.value.re.to_f64());
        assert!(res.value.im.to_f64().abs() < 1e-6);
    }

    #[test]
    fn weight_14_gives_minus_p24_of_24() {
        // m = -23 at weight 14; the coefficient at index 1 is -p_24(24).
        let pair = WeightIndexPair::new(28, RationalIndex24::new(-552)).unwrap();
        let res = coeff_negative_m(
            &pair,
            RationalIndex24::new(24),
            &ctx().with_bits(256),
            &Truncation::adaptive(0.05),
        )
        .unwrap();
        let table = p_r_exact_table(24, 24).unwrap();
        let want = -table.get(24).unwrap().to_f64();
        let rel = (res.value.re.to_f64() - want).abs() / want.abs();
        assert!(rel < 1e-9, "value {} want {want}", res.value.re.to_f64());
    }

    #[test]
    fn cuspidal_coefficients_vanish() {
        // S_14 = {0}: the coefficient of q^1 in P_{14,2} is ~0, and the
        // Kronecker delta contributes exactly 1 to the m = n case.
        let c = ctx();
        let pair = WeightIndexPair::new(28, RationalIndex24::new(48)).unwrap();
        let res = coeff_positive_m(&pair, RationalIndex24::new(24), &c, &Truncation::fixed(200)).unwrap();
        assert!(res.value.abs().to_f64() < 1e-6, "{}", res.value.abs().to_f64());

        let pair_diag = WeightIndexPair::new(28, RationalIndex24::new(24)).unwrap();
        let with_delta =
            coeff_positive_m(&pair_diag, RationalIndex24::new(24), &c, &Truncation::fixed(200)).unwrap();
        // P_{14,1} is itself cuspidal, so c_1 = 0 and the series part is -1.
        assert!(with_delta.value.abs().to_f64() < 1e-6);
    }

    #[test]
    fn weight_five_halves_diagonal_partial_sum() {
        // k = 5/2, m = n = 1/24: delta contributes 1 and the recorded
        // correction stays below 1 in magnitude at c_max = 1000.
        let pair = WeightIndexPair::new(5, RationalIndex24::new(1)).unwrap();
        let res = coeff_positive_m(&pair, RationalIndex24::new(1), &ctx(), &Truncation::fixed(1000)).unwrap();
        let correction = (&res.value - &Complex::one(res.value.prec())).abs().to_f64();
        assert!(correction < 1.0, "correction = {correction}");
    }

    #[test]
    fn eisenstein_exact_values() {
        assert_eq!(eisenstein_coeff(4, 1).unwrap(), 240);
        assert_eq!(eisenstein_coeff(14, 1).unwrap(), -24);
        assert_eq!(eisenstein_coeff(14, 2).unwrap(), -196632);
        assert!(eisenstein_coeff(3, 1).is_err());
        assert!(eisenstein_coeff(2, 1).is_err());
    }

    #[test]
    fn eisenstein_kloosterman_form_agrees_loosely() {
        let c = ctx();
        for (k, n) in [(4i64, 1u64), (14, 1), (14, 2)] {
            let exact = eisenstein_coeff(k, n).unwrap();
            let exact_f = Float::with_val(c.bits, &exact).to_f64();
            let approx = eisenstein_coeff_kloosterman(k, n, 1000, &c).unwrap().to_f64();
            assert!(
                (approx - exact_f).abs() / exact_f.abs() < 0.01,
                "k = {k}, n = {n}: {approx} vs {exact_f}"
            );
        }
    }

    #[test]
    fn zeta_even_values() {
        let p = 128;
        let pi = float_pi(p);
        let z2 = zeta_even(2, p).unwrap();
        assert!((z2 - pi.clone().square() / 6u32).abs().to_f64() < 1e-35);
        let z4 = zeta_even(4, p).unwrap();
        assert!((z4 - pi.pow(4u32) / 90u32).abs().to_f64() < 1e-35);
        // Dirichlet series partial sum oracle
        let mut dirichlet = Float::new(p);
        for n in 1..=100u32 {
            dirichlet += Float::with_val(p, 1) / Float::with_val(p, n).pow(14);
        }
        let z14 = zeta_even(14, p).unwrap();
        assert!((z14.clone() - &dirichlet).abs().to_f64() / z14.to_f64() < 1e-12);
        assert!((z14.to_f64() - 1.0000612482).abs() < 1e-9);
        assert!(zeta_even(3, p).is_err());
    }
}
