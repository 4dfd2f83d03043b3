//! Certified r-color partition counts. The analytic value of p_r(n) is the
//! negated index-(r/24) coefficient of the weight (2 + r/2), index
//! (-n + r/24) Poincaré series; every count is rounded to the nearest
//! integer with a recorded margin and, where a caller supplies the exact
//! table, certified against it bit for bit.

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

use crate::bessel::sinh_kernel;
use crate::error::{Error, Result};
use crate::hp::{exp_two_pi_i, float_pi, Complex};
use crate::kloosterman::{kloosterman_sum, RationalIndex24};
use crate::oracle::{bernoulli, PartitionTable};
use crate::poincare::{
    default_c_first, eisenstein_coeff, eval_series, sum_adaptive, CoefficientResult, Truncation,
    WeightIndexPair,
};
use crate::precision::{PrecisionContext, MAX_ESCALATIONS};

/// An analytic partition count with rounding and certification evidence.
#[derive(Clone, Debug)]
pub struct CertifiedCount {
    pub analytic: Complex,
    pub rounded: Integer,
    /// |analytic - rounded|; must be < ctx.rounding_margin to round at all.
    pub margin: f64,
    pub c_max: u64,
    /// None when no oracle comparison was requested.
    pub certified: Option<bool>,
}

fn check_r(r: u32) -> Result<()> {
    if !(1..=24).contains(&r) {
        return Err(Error::domain(format!("color count r = {r} outside 1..=24")));
    }
    Ok(())
}

/// Weight/index data of the series whose coefficient at r/24 is -p_r(n).
pub fn theorem_pair(r: u32, n: u64) -> Result<(WeightIndexPair, RationalIndex24)> {
    check_r(r)?;
    let m = RationalIndex24::new(r as i64 - 24 * n as i64);
    let pair = WeightIndexPair::new(4 + r as i64, m)?;
    Ok((pair, RationalIndex24::new(r as i64)))
}

/// Working precision for one evaluation: enough bits to absorb the
/// exponential growth e^{z_1} of the leading I-Bessel term plus headroom.
fn auto_bits(base: u32, m24_abs: i64, n24: i64) -> u32 {
    let z1 = std::f64::consts::PI * ((m24_abs as f64) * (n24 as f64)).sqrt() / 6.0;
    let needed = (z1 * std::f64::consts::LOG2_E).ceil() as u32 + 48;
    base.max(needed)
}

/// The raw coefficient c_{r/24} under the chosen truncation policy.
/// The m = 0 case (r = 24, n = 1) is the exact Eisenstein value.
pub fn p_r_coefficient(
    r: u32,
    n: u64,
    ctx: &PrecisionContext,
    trunc: &Truncation,
) -> Result<CoefficientResult> {
    let (pair, index) = theorem_pair(r, n)?;
    if n == 0 {
        return Err(Error::domain("use p_r(0) = 1 directly"));
    }
    if pair.m.t == 0 {
        let exact = eisenstein_coeff(pair.two_k / 2, 1)?;
        return Ok(CoefficientResult {
            value: Complex::real(Float::with_val(ctx.bits, &exact)),
            c_max: 0,
            tail_estimate: 0.0,
            converged: true,
            terms: None,
        });
    }
    eval_series(&pair, index, ctx, trunc)
}

/// p_r(n) by the analytic formula, with automatic precision sizing and up
/// to MAX_ESCALATIONS doublings when the doubling check, the imaginary-part
/// check, or the rounding margin fails.
pub fn p_r_analytic(r: u32, n: u64, ctx: &PrecisionContext) -> Result<CertifiedCount> {
    check_r(r)?;
    if n == 0 {
        return Ok(CertifiedCount {
            analytic: Complex::one(ctx.bits),
            rounded: Integer::from(1),
            margin: 0.0,
            c_max: 0,
            certified: None,
        });
    }
    let (pair, _) = theorem_pair(r, n)?;
    let mut local = ctx.with_bits(auto_bits(ctx.bits, pair.m.t.abs(), r as i64));
    let mut last_err = None;
    for _ in 0..=MAX_ESCALATIONS {
        let trunc = Truncation::adaptive(ctx.rounding_margin / 2.0);
        match try_round(r, n, &local, &trunc, ctx.rounding_margin) {
            Ok(count) => return Ok(count),
            Err(e @ Error::Domain(_)) => return Err(e),
            Err(e) => {
                last_err = Some(e);
                local = local.escalate();
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::precision("escalation limit reached")))
}

fn try_round(
    r: u32,
    n: u64,
    ctx: &PrecisionContext,
    trunc: &Truncation,
    rounding_margin: f64,
) -> Result<CertifiedCount> {
    let res = p_r_coefficient(r, n, ctx, trunc)?;
    if !res.converged {
        return Err(Error::precision(format!(
            "series for p_{r}({n}) not converged at c_max = {} (tail {:.3e})",
            res.c_max, res.tail_estimate
        )));
    }
    let value = -&res.value;
    let im = value.im.to_f64().abs();
    let re_abs = value.re.to_f64().abs();
    if im > 1e-6 * re_abs + (2f64).powi(-(ctx.bits as i32) / 2) {
        return Err(Error::precision(format!(
            "imaginary part {im:.3e} too large for p_{r}({n})"
        )));
    }
    let rounded = match value.re.to_integer() {
        Some(z) => z,
        None => return Err(Error::precision("non-finite analytic value")),
    };
    let margin = (value.re.clone() - &rounded).abs().to_f64();
    if margin >= rounding_margin {
        return Err(Error::precision(format!(
            "rounding margin {margin:.3e} exceeds {rounding_margin:.3e} for p_{r}({n})"
        )));
    }
    Ok(CertifiedCount {
        analytic: value,
        rounded,
        margin,
        c_max: res.c_max,
        certified: None,
    })
}

/// p_r(n) with certification against the supplied exact table.
pub fn p_r_certified(
    r: u32,
    n: u64,
    ctx: &PrecisionContext,
    table: &PartitionTable,
) -> Result<CertifiedCount> {
    let mut count = p_r_analytic(r, n, ctx)?;
    let exact = table
        .get(n)
        .ok_or_else(|| Error::domain(format!("oracle table too short for n = {n}")))?;
    count.certified = Some(&count.rounded == exact);
    Ok(count)
}

/// p(n) by the classical one-color expansion:
/// (1 / pi sqrt(2)) sum_c A_c(n) sqrt(c) d/dn [ sinh(mu_c sqrt(n - 1/24)) / sqrt(n - 1/24) ]
/// with A_c(n) = e^{pi i / 4} A(-1/24, n - 1/24; c).
pub fn p1_classical(n: u64, ctx: &PrecisionContext, fixed: Option<u64>) -> Result<CertifiedCount> {
    if n == 0 {
        return Ok(CertifiedCount {
            analytic: Complex::one(ctx.bits),
            rounded: Integer::from(1),
            margin: 0.0,
            c_max: 0,
            certified: None,
        });
    }
    let m = RationalIndex24::new(-1);
    let idx = RationalIndex24::new(24 * n as i64 - 1);
    let ctx = ctx.with_bits(auto_bits(ctx.bits, 1, idx.t));
    let prec = ctx.bits;
    let rotation = exp_two_pi_i(1, 8, prec);
    let prefactor = (float_pi(prec) * Float::with_val(prec, 2u32).sqrt()).recip();
    let mut body = |c: u64| -> Result<Complex> {
        let a = kloosterman_sum(m, idx, c, &ctx)?;
        let kernel = sinh_kernel(n, c, prec)?;
        let scale = Float::with_val(prec, c).sqrt() * kernel;
        Ok((&a.value * &rotation).scale(&scale))
    };
    let c_first = fixed.unwrap_or_else(|| default_c_first(m, idx));
    let summed = sum_adaptive(
        prec,
        c_first,
        ctx.c_max_cap,
        fixed,
        ctx.rounding_margin / 2.0,
        prefactor.to_f64(),
        &mut body,
    )?;
    if fixed.is_none() && !summed.converged {
        return Err(Error::precision(format!(
            "classical series for p({n}) not converged at c_max = {}",
            summed.c_max
        )));
    }
    let value = summed.sum.scale(&prefactor);
    let rounded = value
        .re
        .to_integer()
        .ok_or_else(|| Error::precision("non-finite analytic value"))?;
    let margin = (value.re.clone() - &rounded).abs().to_f64();
    Ok(CertifiedCount {
        analytic: value,
        rounded,
        margin,
        c_max: summed.c_max,
        certified: None,
    })
}

/// Evaluate p(n) through both expansions at a matched cutoff
/// c_max = max(32, ceil(8 sqrt(24 n))) and return (classical, coefficient
/// route) for a relative-agreement check.
pub fn consistency_theorem1_vs_theorem4(n: u64, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if n == 0 {
        return Err(Error::domain("consistency check needs n >= 1"));
    }
    let c_max = 32u64.max((8.0 * (24.0 * n as f64).sqrt()).ceil() as u64);
    let classical = p1_classical(n, ctx, Some(c_max))?;
    let ctx4 = ctx.with_bits(auto_bits(ctx.bits, 24 * n as i64 - 1, 1));
    let coeff = p_r_coefficient(1, n, &ctx4, &Truncation::fixed(c_max))?;
    Ok((classical.analytic.re, -coeff.value.re))
}

/// Resolve zeta(14) from the count p_24(1) = 24 = 2k / B_k at k = 14:
/// returns (B_14 recovered as 28 / p_24(1), zeta(14) from the Bernoulli
/// closed form using that recovered value).
pub fn zeta14_from_identity(prec: u32) -> Result<(Rational, Float)> {
    let table = crate::oracle::p_r_exact_table(24, 1)?;
    let p = table
        .get(1)
        .ok_or_else(|| Error::precision("oracle table too short"))?;
    // -2k / B_k * sigma_13(1) = -p_24(1) at k = 14, so B_14 = 28 / p_24(1)
    let b14 = Rational::from((Integer::from(28), p.clone()));
    debug_assert_eq!(b14, bernoulli(14));
    let zeta = (float_pi(prec) * 2u32).pow(14u32) * Float::with_val(prec, &b14)
        / (Float::with_val(prec, rug::Integer::factorial(14).complete()) * 2u32);
    Ok((b14, zeta))
}

/// The index-r/24 coefficient of the weight 2 + r/2, index (n + r/24)
/// Poincaré series: a cusp form coefficient that must vanish for
/// r in {12, 24} and small n ("expansions of zero"). Evaluated at a fixed
/// cutoff of at least 200.
pub fn expansion_of_zero(r: u32, n: u64, ctx: &PrecisionContext) -> Result<CoefficientResult> {
    check_r(r)?;
    if n == 0 {
        return Err(Error::domain("expansion of zero needs n >= 1"));
    }
    let m = RationalIndex24::new(24 * n as i64 + r as i64);
    let idx = RationalIndex24::new(r as i64);
    let pair = WeightIndexPair::new(4 + r as i64, m)?;
    let c_max = default_c_first(m, idx).max(200);
    eval_series(&pair, idx, ctx, &Truncation::fixed(c_max))
}
