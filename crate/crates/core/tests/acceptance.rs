//! Acceptance suite: nine frozen criteria, one pass/fail line each.
//! Every tolerance here is fixed; loosening one is a correctness event,
//! not a tuning knob.

use std::time::Instant;

use rug::ops::Pow;
use rug::Float;

use rademacher::bessel::{bessel_i, bessel_i_tight, bessel_j, i_three_halves_closed, HalfIntOrder};
use rademacher::hp::{exp_two_pi_i, Complex};
use rademacher::kloosterman::{kloosterman_sum, kloosterman_symmetry_check, RationalIndex24};
use rademacher::modular::{eta_multiplier, ModularMatrix};
use rademacher::oracle::{p_exact, p_r_exact_table};
use rademacher::partitions::{
    consistency_theorem1_vs_theorem4, expansion_of_zero, p1_classical, p_r_certified,
    zeta14_from_identity,
};
use rademacher::poincare::{eisenstein_coeff, eisenstein_coeff_kloosterman};
use rademacher::verify::moebius;
use rademacher::PrecisionContext;

fn report(criterion: u32, passed: bool, detail: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion}: {status} — {detail}");
    assert!(passed, "acceptance criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_certification_sweep() {
    let ctx = PrecisionContext::default();
    let start = Instant::now();
    let mut worst_margin = 0.0f64;
    let mut failures = 0u32;
    for r in 1..=24u32 {
        let table = p_r_exact_table(r, 60).unwrap();
        for n in 1..=60u64 {
            let count = p_r_certified(r, n, &ctx, &table).unwrap();
            worst_margin = worst_margin.max(count.margin);
            if count.certified != Some(true) {
                failures += 1;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        failures == 0 && worst_margin < 0.25 && elapsed < 600.0,
        &format!(
            "1440 cases, {failures} failures, worst margin {worst_margin:.3e}, {elapsed:.1}s"
        ),
    );
}

#[test]
fn criterion_2_headline_values() {
    let ctx = PrecisionContext::default();
    let p100 = p1_classical(100, &ctx, None).unwrap();
    let p200 = p1_classical(200, &ctx, None).unwrap();
    let ok = p100.rounded == 190569292u64
        && p200.rounded.to_string() == "3972999029388"
        && p100.rounded == p_exact(100)
        && p200.rounded == p_exact(200)
        && p100.margin < 1e-3
        && p200.margin < 1e-3;
    report(
        2,
        ok,
        &format!(
            "p(100) = {} (margin {:.3e}), p(200) = {} (margin {:.3e}), both oracle-certified",
            p100.rounded, p100.margin, p200.rounded, p200.margin
        ),
    );
}

#[test]
fn criterion_3_route_consistency() {
    let ctx = PrecisionContext::default();
    let mut worst = 0.0f64;
    for n in [1u64, 10, 50, 100, 200] {
        let (classical, coefficient) = consistency_theorem1_vs_theorem4(n, &ctx).unwrap();
        let rel = ((classical.clone() - &coefficient) / &classical).abs().to_f64();
        worst = worst.max(rel);
    }
    report(
        3,
        worst < 1e-6,
        &format!("n in {{1, 10, 50, 100, 200}}, worst relative disagreement {worst:.3e}"),
    );
}

#[test]
fn criterion_4_zeta_14() {
    let ctx = PrecisionContext::default();
    let table = p_r_exact_table(24, 1).unwrap();
    let count = p_r_certified(24, 1, &ctx, &table).unwrap();
    let (b14, zeta) = zeta14_from_identity(192).unwrap();
    let mut dirichlet = Float::new(192);
    for n in 1..=100u32 {
        dirichlet += Float::with_val(192, 1) / Float::with_val(192, n).pow(14);
    }
    let rel = ((zeta.clone() - &dirichlet) / &zeta).abs().to_f64();
    let ok = count.rounded == 24
        && count.margin == 0.0
        && b14 == rug::Rational::from((7, 6))
        && rel < 1e-12;
    report(
        4,
        ok,
        &format!("p_24(1) = {}, B_14 = {b14}, zeta(14) relative residual {rel:.3e}", count.rounded),
    );
}

#[test]
fn criterion_5_eta_multiplier() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use rademacher::modular::{complete_bottom_row, eta_eval};

    let ctx = PrecisionContext::new(128);
    let prec = ctx.bits;
    let tol = (2f64).powi(-64);
    let mut rng = StdRng::seed_from_u64(0x616363657074);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mat = loop {
            let c = rng.gen_range(1i64..=50);
            let d = rng.gen_range(-200i64..=200);
            if let Ok(m) = complete_bottom_row(c, d) {
                let shift = ModularMatrix::from_i64(1, rng.gen_range(-6i64..=6), 0, 1).unwrap();
                let m = shift.mul(&m);
                break if rng.gen_bool(0.5) { m.neg() } else { m };
            }
        };
        let v = eta_multiplier(&mat, &ctx).unwrap();
        let tau = Complex::with_val(prec, 0.1, 0.7);
        let lhs = eta_eval(&mat.apply(&tau), &ctx).unwrap();
        let rhs = &(&v.value(prec) * &mat.automorphy_denom(&tau).principal_sqrt().unwrap())
            * &eta_eval(&tau, &ctx).unwrap();
        worst = worst.max((&lhs - &rhs).abs().to_f64() / lhs.abs().to_f64());
    }
    let s_exp = eta_multiplier(&ModularMatrix::s(), &ctx).unwrap().exponent();
    let t_exp = eta_multiplier(&ModularMatrix::t(), &ctx).unwrap().exponent();
    report(
        5,
        worst < tol && s_exp == 1 && t_exp == 21,
        &format!(
            "100 random matrices, worst residual {worst:.3e}; v(S) = zeta_24^{s_exp}, v(T) = zeta_24^{t_exp}"
        ),
    );
}

#[test]
fn criterion_6_kloosterman() {
    let ctx = PrecisionContext::default();
    let tol = (2f64).powi(-64);
    let mut worst = 0.0f64;
    for n in 1..=20u64 {
        for c in 1..=50u64 {
            worst = worst.max(kloosterman_symmetry_check(n, c, &ctx).unwrap().to_f64());
        }
    }
    let mut worst_mu = 0.0f64;
    for c in 1..=100u64 {
        let a = kloosterman_sum(RationalIndex24::new(0), RationalIndex24::new(24), c, &ctx).unwrap();
        worst_mu = worst_mu
            .max((a.value.re.to_f64() - moebius(c) as f64).abs())
            .max(a.value.im.to_f64().abs());
    }
    report(
        6,
        worst < tol && worst_mu < tol,
        &format!(
            "symmetry (n <= 20, c <= 50) worst {worst:.3e}; Moebius (c <= 100) worst {worst_mu:.3e}"
        ),
    );
}

#[test]
fn criterion_7_bessel() {
    let ctx = PrecisionContext::new(128);
    let prec = ctx.bits;
    let tol = (2f64).powi(-64);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let t = i as f64 / 49.0;
        let z = 1e-3f64 * (30.0 / 1e-3f64).powf(t);
        let zc = Complex::real(Float::with_val(prec, z));
        let series = bessel_i_tight(HalfIntOrder::new(3), &zc, &ctx, 16).unwrap();
        let closed = i_three_halves_closed(&zc.re);
        worst = worst.max(((series.re - &closed) / &closed).abs().to_f64());
    }
    // rotation identity at every order the partition pipelines use
    let mut worst_rot = 0.0f64;
    for two_nu in 3..=26i64 {
        let nu = HalfIntOrder::new(two_nu);
        let z = Complex::real(Float::with_val(prec, 3.75));
        let lhs = bessel_i(nu, &z, &ctx).unwrap();
        let rhs = &exp_two_pi_i(-(two_nu as i128), 8, prec) * &bessel_j(nu, &z.mul_i(), &ctx).unwrap();
        worst_rot = worst_rot.max((&lhs - &rhs).abs().to_f64() / lhs.abs().to_f64());
    }
    report(
        7,
        worst < tol && worst_rot < tol,
        &format!(
            "I_3/2 closed form worst {worst:.3e} on 50 log-spaced points; rotation identity worst {worst_rot:.3e}"
        ),
    );
}

#[test]
fn criterion_8_expansions_of_zero() {
    let ctx = PrecisionContext::default();
    let mut worst = 0.0f64;
    for r in [12u32, 24] {
        for n in 1..=5u64 {
            let res = expansion_of_zero(r, n, &ctx).unwrap();
            worst = worst.max(res.value.abs().to_f64());
        }
    }
    report(
        8,
        worst < 1e-6,
        &format!("r in {{12, 24}}, n <= 5, worst |coefficient| {worst:.3e}"),
    );
}

#[test]
fn criterion_9_eisenstein_cross_check() {
    let ctx = PrecisionContext::default();
    let mut worst = 0.0f64;
    for k in [4i64, 6, 8, 14] {
        for n in 1..=5u64 {
            let exact = eisenstein_coeff(k, n).unwrap();
            let exact_f = Float::with_val(ctx.bits, &exact).to_f64();
            let approx = eisenstein_coeff_kloosterman(k, n, 1000, &ctx).unwrap().to_f64();
            worst = worst.max((approx - exact_f).abs() / exact_f.abs());
        }
    }
    report(
        9,
        worst < 0.01,
        &format!("k in {{4, 6, 8, 14}}, n <= 5, c_max = 1000, worst relative error {worst:.3e}"),
    );
}
