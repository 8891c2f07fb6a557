use ctrace_core::determinantal::{
    mu_in_quotient, specializes_condition, teter_formula, teter_verify, verify_mu_multiplicativity,
    verify_pq_identity, GenericMatrixContext, SegreContext, SymbolicMatrix,
};
use ctrace_core::hilbert_burch::{trace_of_specialization, Assertions};
use ctrace_core::linalg::RankOptions;
use ctrace_core::poly::binomial;
use num_bigint::BigInt;

fn setup(m: usize, n: usize, r: usize) -> (GenericMatrixContext, SegreContext) {
    let ctx = GenericMatrixContext::new(m, n, r).unwrap();
    let seg = SegreContext::new(&ctx);
    (ctx, seg)
}

/// `phi(P) = delta_Y * I_r(Z)`, so `mu(P^l)` in the determinantal ring is
/// the generator count of `I_r(Z)^l` in the polynomial ring of `Z`.
fn mu_p_power_oracle(n: usize, r: usize, l: u32) -> usize {
    let z = SymbolicMatrix::generic("z", r, n);
    z.ideal_of_minors(r).unwrap().power(l).mu_equigenerated().unwrap()
}

/// Monomials of degree `d` in `k` variables.
fn stars_and_bars(k: i64, d: i64) -> BigInt {
    binomial(k + d - 1, d)
}

#[test]
fn teter_numbers_match_both_oracles() {
    let opts = RankOptions::default();
    for (m, n, r, expected) in [(2, 3, 1, 3), (2, 4, 1, 10), (2, 5, 1, 35), (3, 4, 2, 6), (3, 5, 2, 50)] {
        let (ctx, seg) = setup(m, n, r);
        let report = teter_verify(&ctx, &seg, &opts).unwrap();
        assert!(report.agree, "({m},{n},{r}): {report:?}");
        assert_eq!(report.oracle, expected);
        assert_eq!(mu_p_power_oracle(n, r, (n - m) as u32), expected);
    }
}

#[test]
fn r_one_closed_form() {
    for n in 3..=12usize {
        for m in 2..n {
            let f = teter_formula(m, n, 1).unwrap();
            let (m, n) = (m as i64, n as i64);
            assert_eq!(f, binomial(2 * n - m - 1, n - m));
            assert_eq!(f, stars_and_bars(n, n - m));
        }
    }
}

#[test]
fn pq_identity_small_and_medium() {
    let opts = RankOptions::default();
    for (m, n, r) in [(2, 3, 1), (2, 4, 1), (3, 4, 2), (2, 2, 1)] {
        let (ctx, seg) = setup(m, n, r);
        let rep = verify_pq_identity(&ctx, &seg, &opts).unwrap();
        assert!(rep.holds, "({m},{n},{r}) {rep:?}");
    }
}

#[test]
fn pq_identity_detects_a_wrong_right_side() {
    // delta * I_r(X) with delta replaced by another r-minor is a different
    // ideal; compare spans directly
    let (ctx, seg) = setup(2, 3, 1);
    let opts = RankOptions::default();
    let (p, q, _) = ctx.p_q_delta();
    let pq = p.product(&q).unwrap();
    let x22 = ctx.matrix().entry(1, 1).clone();
    let wrong: Vec<_> = ctx
        .ideal_of_minors(1)
        .unwrap()
        .gens()
        .iter()
        .map(|g| g.mul(&x22).unwrap())
        .collect();
    let a = seg.phi_all(pq.gens(), usize::MAX).unwrap();
    let b = seg.phi_all(&wrong, usize::MAX).unwrap();
    assert!(!ctrace_core::linalg::span_equal(&a, &b).unwrap());
    assert!(verify_pq_identity(&ctx, &seg, &opts).unwrap().holds);
}

#[test]
fn multiplicativity_small() {
    let opts = RankOptions::default();
    for (m, n, r, l) in [(2, 3, 1, 1), (2, 3, 1, 2), (2, 4, 1, 1), (3, 4, 2, 1)] {
        let (ctx, seg) = setup(m, n, r);
        let rep = verify_mu_multiplicativity(&ctx, &seg, l, &opts).unwrap();
        assert!(rep.holds, "({m},{n},{r}) l={l} {rep:?}");
        assert_eq!(rep.mu_p, mu_p_power_oracle(n, r, l));
    }
}

#[test]
fn generic_trace_mu_factors_through_segre() {
    // phi(I_r(X)^l) = I_r(Y)^l * I_r(Z)^l with disjoint variables
    let opts = RankOptions::default();
    for (m, n, r) in [(2, 3, 1), (2, 4, 1), (3, 4, 2)] {
        let (ctx, seg) = setup(m, n, r);
        let l = ctx.canonical_exponent();
        let y = SymbolicMatrix::generic("y", m, r).ideal_of_minors(r).unwrap().power(l);
        let z = SymbolicMatrix::generic("z", r, n).ideal_of_minors(r).unwrap().power(l);
        let expected = y.mu_equigenerated().unwrap() * z.mu_equigenerated().unwrap();
        assert_eq!(mu_in_quotient(&ctx.trace(None), &seg, &opts).unwrap(), expected);
    }
}

#[test]
fn specialization_condition_and_identity_specialization() {
    assert!(specializes_condition(3, 4, 2));
    assert!(!specializes_condition(2, 4, 1));
    for (m, n, r) in [(2, 3, 1), (3, 4, 2), (2, 4, 1), (3, 3, 2)] {
        let ctx = GenericMatrixContext::new(m, n, r).unwrap();
        let spec = trace_of_specialization(ctx.matrix(), r, &Assertions::default()).unwrap();
        assert_eq!(spec.ideal, ctx.trace(None));
        assert_eq!(spec.warnings.is_empty(), specializes_condition(m, n, r));
    }
}

#[test]
fn resource_guard_reports_sizes() {
    let (ctx, seg) = setup(3, 5, 2);
    let err = mu_in_quotient(&ctx.trace(None), &seg, &RankOptions::with_max_entries(1000)).unwrap_err();
    match err {
        ctrace_core::Error::Resource { needed, cap } => {
            assert_eq!(cap, 1000);
            assert!(needed > cap);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(
        ctrace_core::Error::Resource { needed: 2, cap: 1 }.exit_code(),
        3
    );
}
