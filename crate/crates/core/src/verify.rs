//! Self-check suites behind the `verify` command: every check returns a
//! named pass/fail record so a batch run can report exactly which invariant
//! broke.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::Float;

use crate::bessel::{bessel_i_tight, i_three_halves_closed, HalfIntOrder};
use crate::error::Result;
use crate::hp::Complex;
use crate::kloosterman::{kloosterman_sum, kloosterman_symmetry_check, RationalIndex24};
use crate::modular::{eta_eval, eta_multiplier, reduce_to_fundamental, ModularMatrix};
use crate::oracle::{p_exact_table, p_r_exact_table};
use crate::partitions::{consistency_theorem1_vs_theorem4, expansion_of_zero, p_r_certified};
use crate::poincare::{eisenstein_coeff, eisenstein_coeff_kloosterman};
use crate::precision::PrecisionContext;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Moebius function by trial factorization; oracle for A(0, 1; c).
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn random_matrix(rng: &mut StdRng) -> ModularMatrix {
    // bottom row with 1 <= c <= 50, then a random translate on the left
    loop {
        let c = rng.gen_range(1i64..=50);
        let d = rng.gen_range(-200i64..=200);
        if let Ok(m) = crate::modular::complete_bottom_row(c, d) {
            let shift = rng.gen_range(-6i64..=6);
            let t_pow = ModularMatrix::from_i64(1, shift, 0, 1).unwrap();
            let m = t_pow.mul(&m);
            return if rng.gen_bool(0.5) { m.neg() } else { m };
        }
    }
}

/// v_eta consistency on random matrices: the snapped 24th root of unity must
/// reproduce eta(M tau) / (automorphy factor * eta(tau)) to tolerance at the
/// given precision, at a second sample point as well.
pub fn multiplier_suite(ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x6d6f64756c6172);
    let count = if quick { 20 } else { 100 };
    let tol = (2f64).powi(-64);
    let prec = ctx.bits.max(128);
    let local = ctx.with_bits(prec);
    let mut worst = 0.0f64;
    let mut failures = 0u32;
    for _ in 0..count {
        let mat = random_matrix(&mut rng);
        let v = eta_multiplier(&mat, &local)?;
        for &(x, y) in &[(0.1, 0.7), (-0.3, 1.1)] {
            let tau = Complex::with_val(prec, x, y);
            let lhs = eta_eval(&mat.apply(&tau), &local)?;
            let j = mat.automorphy_denom(&tau);
            let weight = j.principal_sqrt()?;
            let rhs = &(&v.value(prec) * &weight) * &eta_eval(&tau, &local)?;
            let resid = (&lhs - &rhs).abs().to_f64() / lhs.abs().to_f64();
            worst = worst.max(resid);
            if resid >= tol {
                failures += 1;
            }
        }
    }
    out.push(CheckResult::new(
        "multiplier.random-matrices",
        failures == 0,
        format!("{count} matrices, worst relative residual {worst:.3e}"),
    ));

    // consistency of the reduction: the translation phase has period 24,
    // so eta agrees at tau and tau + 2400 even for a deep point.
    let mut tau = Complex::with_val(prec, 0.3, 0.002);
    tau.re += 2400u32;
    let (factor, reduced) = reduce_to_fundamental(&tau, prec)?;
    let direct = &factor * &eta_eval(&reduced, &local)?;
    let expect = eta_eval(&Complex::with_val(prec, 0.3, 0.002), &local)?;
    let resid = (&direct - &expect).abs().to_f64() / expect.abs().to_f64();
    out.push(CheckResult::new(
        "multiplier.reduction-periodicity",
        resid < 1e-20,
        format!("relative residual {resid:.3e}"),
    ));
    Ok(out)
}

/// Kloosterman invariants: the symmetry relation, |A| <= phi(c), and the
/// Moebius evaluation A(0, 1; c) = mu(c).
pub fn kloosterman_suite(ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let tol = (2f64).powi(-64);
    let (n_max, c_max) = if quick { (6u64, 20u64) } else { (20, 50) };
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        for c in 1..=c_max {
            worst = worst.max(kloosterman_symmetry_check(n, c, ctx)?.to_f64());
        }
    }
    out.push(CheckResult::new(
        "kloosterman.symmetry",
        worst < tol,
        format!("n <= {n_max}, c <= {c_max}, worst residual {worst:.3e}"),
    ));

    let c_limit = if quick { 30 } else { 100 };
    let mut worst_mu = 0.0f64;
    for c in 1..=c_limit {
        let a = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), c, ctx)?;
        let mu = moebius(c) as f64;
        worst_mu = worst_mu
            .max((a.value.re.to_f64() - mu).abs())
            .max(a.value.im.to_f64().abs());
    }
    out.push(CheckResult::new(
        "kloosterman.moebius",
        worst_mu < tol,
        format!("c <= {c_limit}, worst residual {worst_mu:.3e}"),
    ));

    let mut bound_ok = true;
    for c in 1..=c_limit {
        let a = kloosterman_sum(RationalIndex24::new(-23), RationalIndex24::new(1), c, ctx)?;
        if a.value.abs().to_f64() > a.term_count as f64 + 1e-9 {
            bound_ok = false;
        }
    }
    out.push(CheckResult::new(
        "kloosterman.trivial-bound",
        bound_ok,
        format!("|A| <= phi(c) for c <= {c_limit}"),
    ));
    Ok(out)
}

/// Bessel checks: the I_{3/2} closed form against the series on log-spaced
/// points, and series stability under a doubled truncation threshold.
pub fn bessel_suite(ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let prec = ctx.bits.max(128);
    let local = ctx.with_bits(prec);
    let tol = (2f64).powi(-64);
    let points = if quick { 12 } else { 50 };
    let mut worst = 0.0f64;
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let z = 1e-3f64 * (30.0 / 1e-3f64).powf(t);
        let zf = Complex::real(Float::with_val(prec, z));
        let series = bessel_i_tight(HalfIntOrder::new(3), &zf, &local, 16)?;
        let closed = i_three_halves_closed(&zf.re);
        let rel = ((series.re - &closed) / &closed).abs().to_f64();
        worst = worst.max(rel);
    }
    out.push(CheckResult::new(
        "bessel.i-three-halves-closed-form",
        worst < tol,
        format!("{points} log-spaced points in [1e-3, 30], worst relative error {worst:.3e}"),
    ));

    let z = Complex::real(Float::with_val(prec, 7.25));
    let base = bessel_i_tight(HalfIntOrder::new(13), &z, &local, 0)?;
    let tight = bessel_i_tight(HalfIntOrder::new(13), &z, &local, 64)?;
    let drift = (&base - &tight).abs().to_f64() / base.abs().to_f64();
    out.push(CheckResult::new(
        "bessel.truncation-stability",
        drift < (2f64).powi(-(prec as i32) + 16),
        format!("relative drift {drift:.3e} under doubled threshold"),
    ));
    Ok(out)
}

/// Identity checks: expansions of zero, the Eisenstein cross-check, and the
/// zeta(14) resolution.
pub fn identities_suite(ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let n_max = if quick { 2u64 } else { 5 };
    let mut worst = 0.0f64;
    for r in [12u32, 24] {
        for n in 1..=n_max {
            let res = expansion_of_zero(r, n, ctx)?;
            worst = worst.max(res.value.abs().to_f64());
        }
    }
    out.push(CheckResult::new(
        "identities.expansions-of-zero",
        worst < 1e-6,
        format!("r in {{12, 24}}, n <= {n_max}, worst |coefficient| {worst:.3e}"),
    ));

    let c_max = if quick { 300 } else { 1000 };
    let weights: &[i64] = if quick { &[4, 14] } else { &[4, 6, 8, 14] };
    let mut worst_rel = 0.0f64;
    for &k in weights {
        for n in 1..=n_max {
            let exact = eisenstein_coeff(k, n)?;
            let exact_f = Float::with_val(ctx.bits, &exact).to_f64();
            let approx = eisenstein_coeff_kloosterman(k, n, c_max, ctx)?.to_f64();
            worst_rel = worst_rel.max((approx - exact_f).abs() / exact_f.abs());
        }
    }
    out.push(CheckResult::new(
        "identities.eisenstein-cross-check",
        worst_rel < 0.01,
        format!("k in {weights:?}, n <= {n_max}, c_max = {c_max}, worst relative error {worst_rel:.3e}"),
    ));

    let (b14, zeta) = crate::partitions::zeta14_from_identity(192)?;
    let mut dirichlet = Float::new(192);
    for n in 1..=100u32 {
        dirichlet += Float::with_val(192, 1) / Float::with_val(192, n).pow(14);
    }
    let diff = (zeta - dirichlet).abs().to_f64();
    out.push(CheckResult::new(
        "identities.zeta14",
        b14 == rug::Rational::from((7, 6)) && diff < 1e-12,
        format!("B_14 = {b14}, |zeta(14) - partial Dirichlet sum| = {diff:.3e}"),
    ));
    Ok(out)
}

/// Partition checks: a certification sweep over the oracle tables and the
/// agreement of the two expansions of p(n).
pub fn partitions_suite(ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let (r_step, n_max) = if quick { (6u32, 12u64) } else { (1, 60) };
    let mut failures = Vec::new();
    let mut worst_margin = 0.0f64;
    let mut r = 1u32;
    while r <= 24 {
        let table = p_r_exact_table(r, n_max)?;
        for n in 1..=n_max {
            let count = p_r_certified(r, n, ctx, &table)?;
            worst_margin = worst_margin.max(count.margin);
            if count.certified != Some(true) {
                failures.push((r, n));
            }
        }
        r += r_step;
    }
    out.push(CheckResult::new(
        "partitions.certification-sweep",
        failures.is_empty() && worst_margin < ctx.rounding_margin,
        format!(
            "r step {r_step}, n <= {n_max}: {} mismatches, worst margin {worst_margin:.3e}",
            failures.len()
        ),
    ));

    let n_classical = if quick { 60u64 } else { 200 };
    let table = p_exact_table(n_classical);
    let count = crate::partitions::p1_classical(n_classical, ctx, None)?;
    out.push(CheckResult::new(
        "partitions.classical",
        count.rounded == table[n_classical as usize] && count.margin < 1e-3,
        format!("p({n_classical}) margin {:.3e}", count.margin),
    ));

    let mut worst_rel = 0.0f64;
    let samples: &[u64] = if quick { &[1, 10] } else { &[1, 10, 50, 120] };
    for &n in samples {
        let (v1, v4) = consistency_theorem1_vs_theorem4(n, ctx)?;
        let rel = (v1.clone() - &v4).abs().to_f64() / v1.to_f64().abs();
        worst_rel = worst_rel.max(rel);
    }
    out.push(CheckResult::new(
        "partitions.route-consistency",
        worst_rel < 1e-6,
        format!("n in {samples:?}, worst relative disagreement {worst_rel:.3e}"),
    ));
    Ok(out)
}

/// Run one suite by name ("all" runs every suite).
pub fn run_suite(name: &str, ctx: &PrecisionContext, quick: bool) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let all = name == "all";
    if all || name == "multiplier" {
        out.extend(multiplier_suite(ctx, quick)?);
    }
    if all || name == "kloosterman" {
        out.extend(kloosterman_suite(ctx, quick)?);
    }
    if all || name == "bessel" {
        out.extend(bessel_suite(ctx, quick)?);
    }
    if all || name == "identities" {
        out.extend(identities_suite(ctx, quick)?);
    }
    if all || name == "partitions" {
        out.extend(partitions_suite(ctx, quick)?);
    }
    if out.is_empty() {
        return Err(crate::error::Error::domain(format!(
            "unknown suite '{name}' (expected all, multiplier, kloosterman, bessel, identities, partitions)"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_small_values() {
        let expect = [1i64, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), want, "mu({})", i + 1);
        }
    }

    #[test]
    fn quick_suites_pass() {
        let ctx = PrecisionContext::default();
        for suite in ["multiplier", "kloosterman", "bessel"] {
            for check in run_suite(suite, &ctx, true).unwrap() {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }

    #[test]
    fn unknown_suite_is_domain_error() {
        assert!(run_suite("nonsense", &PrecisionContext::default(), true).is_err());
    }
}
