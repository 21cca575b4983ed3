//! The constraint system against a direct expansion of the recurrence in the
//! h-basis, and randomized perturbations of the q-Hermite data.

use proptest::prelude::*;
use qhermite::characterize::{
    check_system, constraint_residual, hermite_candidate, uniqueness_report, AppellExpansion, Case2Sample,
    OpsCandidate, Outcome, Symbolic,
};
use qhermite::families::{expand_in_basis, h_small_table};
use qhermite::opcore::PolyX;
use qhermite::QScalar;

fn scalar((c, e): (i64, i64)) -> QScalar {
    QScalar::from_int(c) * QScalar::s_pow(e)
}

fn q_of(a: &[QScalar], h: &[PolyX], n: usize) -> PolyX {
    (0..=n).fold(PolyX::zero(), |acc, j| acc.add(&h[j].scale(&a[n - j])))
}

fn small() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, -4i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn residuals_are_h_coefficients(
        a_raw in prop::collection::vec(small(), 6),
        b_raw in prop::collection::vec(small(), 5),
        g_raw in prop::collection::vec(small(), 5),
    ) {
        let max_n = 4;
        let mut a: Vec<QScalar> = a_raw.into_iter().map(scalar).collect();
        a[0] = QScalar::one();
        let beta: Vec<QScalar> = b_raw.into_iter().map(scalar).collect();
        let gamma: Vec<QScalar> = g_raw.into_iter().map(scalar).collect();
        let h = h_small_table(max_n + 1);
        let exp = AppellExpansion { a: a.clone() };
        let cand = OpsCandidate { max_n, beta: beta.clone(), gamma: gamma.clone() };
        for n in 0..=max_n {
            let x_term = PolyX::x().scale(&(QScalar::q().one_minus() * QScalar::s_pow(2 * n as i64)))
                .add(&PolyX::constant(beta[n].clone()));
            let mut p = q_of(&a, &h, n + 1).scale(&QScalar::q_pow(n as i64 + 1).one_minus())
                .sub(&x_term.mul(&q_of(&a, &h, n)));
            if n >= 1 {
                p = p.add(&q_of(&a, &h, n - 1).scale(&gamma[n]));
            }
            let coords = expand_in_basis(&p, &h).unwrap();
            for k in 0..=n + 1 {
                let got = constraint_residual(n, k, &exp, &cand).unwrap();
                let want = coords.get(k).cloned().unwrap_or_else(QScalar::zero);
                prop_assert_eq!(got, want, "(n, k) = ({}, {})", n, k);
            }
        }
    }

    #[test]
    fn single_perturbation_is_detected(n in 1usize..=10, which in 0usize..2, d in small()) {
        prop_assume!(d.0 != 0);
        let max_n = 10;
        let exp = AppellExpansion::hermite(max_n + 2);
        let mut cand = hermite_candidate(max_n);
        let delta = scalar(d);
        if which == 0 {
            cand.beta[n] = &cand.beta[n] + &delta;
        } else {
            cand.gamma[n] = &cand.gamma[n] + &delta;
        }
        let rep = check_system(&Symbolic, &exp, &cand, max_n).unwrap();
        prop_assert_eq!(rep.outcome, Outcome::ContradictionWitness);
        prop_assert!(rep.witness.unwrap().n <= n + 1);
    }
}

#[test]
fn hermite_satisfies_the_expanded_recurrence() {
    let max_n = 8;
    let exp = AppellExpansion::hermite(max_n + 2);
    let cand = hermite_candidate(max_n);
    assert_eq!(
        check_system(&Symbolic, &exp, &cand, max_n).unwrap().outcome,
        Outcome::ForcedHermite
    );
}

#[test]
fn default_grid_and_minimal_run() {
    let grid = Case2Sample::default_grid();
    let rep = uniqueness_report(10, &grid).unwrap();
    assert_eq!(rep.outcome, Outcome::ForcedHermite, "{:#?}", rep.checks);
    assert!(rep.complete);
    assert_eq!(rep.checks.len(), 1 + grid.len());
    let small = uniqueness_report(4, &grid).unwrap();
    assert_eq!(small.outcome, Outcome::ForcedHermite);
}
