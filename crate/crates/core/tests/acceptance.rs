//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;

use qhermite::characterize::{
    case2_system, check_system, constraint_residual, constraint_residual_with, derive_beta, hermite_candidate,
    uniqueness_report, AppellExpansion, AtSample, Case2Sample, OpsCandidate, Outcome, Symbolic, UniPolyA,
};
use qhermite::families::{a_series_closed, hermite_table, psi_product_form, psi_table};
use qhermite::opcore::PolyX;
use qhermite::verify::{run_suite, Suite};
use qhermite::QScalar;

type ExactEval = Box<dyn Fn(&PolyX, &BigRational) -> BigRational>;

struct Verdict {
    pass: bool,
    detail: String,
}

fn suites(list: &[(Suite, usize, usize)]) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(s, max_n, t_order) in list {
        let r = run_suite(s, max_n, t_order);
        pass &= r.passed();
        parts.push(format!("{} {} cases {} failures", r.suite, r.cases, r.failures.len()));
        for f in r.failures.iter().take(3) {
            parts.push(format!("FAIL {} {} {}", f.identity, f.params, f.residual));
        }
    }
    Verdict {
        pass,
        detail: parts.join("; "),
    }
}

fn criterion_4() -> Verdict {
    let mut v = suites(&[(Suite::Genfun, 16, 16), (Suite::ACoeffs, 16, 16)]);
    let a = a_series_closed(16);
    let odd = a.coeff(1).is_zero() && a.coeff(3).is_zero();
    v.pass &= odd;
    v.detail.push_str(&format!("; a_1 = a_3 = 0: {odd}"));
    v
}

fn criterion_7() -> (Verdict, Verdict) {
    let n_max = 10;
    let grid = Case2Sample::default_grid();
    let mut notes = Vec::new();
    let mut pass = true;

    let rep = uniqueness_report(n_max, &grid).expect("valid inputs");
    pass &= rep.outcome == Outcome::ForcedHermite && rep.complete;
    notes.push(format!("aggregate {:?}", rep.outcome));

    let herm = check_system(
        &Symbolic,
        &AppellExpansion::hermite(n_max + 2),
        &hermite_candidate(n_max),
        n_max,
    )
    .unwrap();
    pass &= herm.outcome == Outcome::ForcedHermite;
    notes.push("hermite data zero every constraint".into());

    // the (n, n) equation is linear in a_1 with the forced beta weight
    let alpha = UniPolyA::var();
    let mut beta_ok = true;
    for n in 0..=n_max {
        let mut a = vec![UniPolyA::zero(); n + 2];
        a[0] = UniPolyA::one();
        a[1] = alpha.clone();
        let zero = vec![UniPolyA::zero(); n + 1];
        let cand = OpsCandidate {
            max_n: n,
            beta: zero.clone(),
            gamma: zero,
        };
        beta_ok &= constraint_residual(n, n, &AppellExpansion { a }, &cand).unwrap() == derive_beta(n, &alpha);
        beta_ok &= derive_beta(n, &UniPolyA::zero()).is_zero();
    }
    pass &= beta_ok;
    notes.push(format!("beta forcing {beta_ok}"));

    let case1 = &rep.parts[0];
    let literal = "closed-form residual = alpha^j rho(q)";
    for c in case1.checks.iter().filter(|c| c.name != literal) {
        pass &= c.holds;
        if !c.holds {
            notes.push(format!("case I check failed: {}", c.name));
        }
    }
    notes.push(format!(
        "case I {:?}, {} checks, closed-form residual checked for k = 1..5 against its exact factorization \
         (the literal alpha^k clause is judged separately in 7b)",
        case1.outcome,
        case1.checks.len()
    ));

    let mut witnesses = 0;
    for (smp, part) in grid.iter().zip(&rep.parts[1..]) {
        let Some(w) = &part.witness else {
            pass = false;
            notes.push(format!("no witness for {smp}"));
            continue;
        };
        let (exp, cand) = case2_system(n_max, smp).unwrap();
        let again: BigRational =
            constraint_residual_with(&AtSample { s: smp.s.clone() }, w.n, w.k, &exp, &cand).unwrap();
        let ok = part.outcome == Outcome::ContradictionWitness && !again.is_zero() && again.to_string() == w.residual;
        pass &= ok;
        witnesses += ok as usize;
    }
    notes.push(format!(
        "case II witnesses re-evaluated nonzero at {witnesses}/{} samples",
        grid.len()
    ));

    let lit = case1.checks.iter().find(|c| c.name == literal).expect("check present");
    let factor = case1
        .checks
        .iter()
        .find(|c| c.name.starts_with("closed-form residual = a_2j-2"))
        .expect("check present");
    let refuted = Verdict {
        pass: !lit.holds && factor.holds,
        detail: format!(
            "the residual is not a pure alpha^k multiple ({}); it factors as a_2k-2 (1-q) q^n (q^(1-k) - 1)(alpha - alpha*), \
             vanishing at alpha* where gamma_n < 0",
            lit.detail
        ),
    };
    (
        Verdict {
            pass,
            detail: notes.join("; "),
        },
        refuted,
    )
}

fn relative_ok(exact: &BigRational, approx: f64) -> bool {
    let e = num_traits::ToPrimitive::to_f64(exact).expect("finite");
    if exact.is_zero() {
        return approx == 0.0;
    }
    ((approx - e) / e).abs() <= 1e-10
}

fn criterion_8() -> Verdict {
    let xs = [
        BigRational::new(0.into(), 1.into()),
        BigRational::new(1.into(), 2.into()),
        BigRational::new(1.into(), 1.into()),
    ];
    let families: Vec<(&str, Vec<PolyX>)> = vec![("H", hermite_table(12)), ("Psi", psi_table(12))];
    let mut checked = 0;
    let mut bad = Vec::new();
    // q = 1/16 and 81/256 through exact s; q = 1/4 through exact q, since these families live in Q(q)
    let points: Vec<(String, f64, ExactEval)> = vec![
        (
            "s=1/2".into(),
            1.0 / 16.0,
            Box::new(|p, x| p.eval_exact(&BigRational::new(1.into(), 2.into()), x).unwrap()),
        ),
        (
            "q=1/4".into(),
            0.25,
            Box::new(|p, x| p.eval_at_q(&BigRational::new(1.into(), 4.into()), x).unwrap()),
        ),
        (
            "s=3/4".into(),
            81.0 / 256.0,
            Box::new(|p, x| p.eval_exact(&BigRational::new(3.into(), 4.into()), x).unwrap()),
        ),
    ];
    for (label, qf, exact) in &points {
        for (name, table) in &families {
            for (n, p) in table.iter().enumerate() {
                for x in &xs {
                    let e = exact(p, x);
                    let xf = num_traits::ToPrimitive::to_f64(x).unwrap();
                    let f = p.eval_float(*qf, xf, 128).unwrap();
                    checked += 1;
                    if !relative_ok(&e, f) {
                        bad.push(format!("{name}_{n} at {label}, x = {x}: exact {e}, float {f}"));
                    }
                }
            }
        }
    }
    Verdict {
        pass: bad.is_empty(),
        detail: format!("{checked} points, {} outside 1e-10 {}", bad.len(), bad.join("; ")),
    }
}

fn criterion_9() -> Verdict {
    let table = psi_table(12);
    let odd = (1..=11).step_by(2).all(|n| psi_product_form(n) == table[n]);
    // printed even line versus the recurrence: they differ by the sign of the constant in each factor
    let q = QScalar::q();
    let diff_n2 = table[2].sub(&psi_product_form(2));
    let expected = PolyX::constant(QScalar::from_int(2) * (QScalar::one() - &q).pow(2).unwrap() / q);
    let even_differs = (2..=12).step_by(2).all(|n| psi_product_form(n) != table[n]);
    let flipped = (2..=12).step_by(2).all(|n| {
        let m = (n / 2) as i64;
        let p = (0..m).fold(PolyX::one(), |acc, k| {
            let c = QScalar::q_pow(2 * m - 1 - 2 * k).one_minus() * QScalar::q_pow(1 - 2 * m + 2 * k).one_minus();
            acc.mul(&PolyX::monomial(QScalar::from_int(4), 2).sub(&PolyX::constant(c)))
        });
        p == table[n]
    });
    let pass = odd && even_differs && diff_n2 == expected && flipped;
    Verdict {
        pass,
        detail: format!(
            "odd line exact for n <= 11: {odd}; printed even line differs for every even n <= 12: {even_differs}; \
             Psi_2 - printed = 2(1-q)^2/q: {}; even line with '-' matches: {flipped}",
            diff_n2 == expected
        ),
    }
}

fn report(label: &str, title: &str, started: Instant, v: &Verdict) {
    let tag = if v.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {label} [{title}]: {tag} ({:.2} s) {}",
        started.elapsed().as_secs_f64(),
        v.detail
    );
}

fn main() -> ExitCode {
    type Run = Box<dyn Fn() -> Verdict>;
    let criteria: Vec<(&str, &str, Run)> = vec![
        (
            "1",
            "operator identities on Psi",
            Box::new(|| suites(&[(Suite::DqPsi, 20, 16)])),
        ),
        (
            "2",
            "Appell property and h recurrences",
            Box::new(|| suites(&[(Suite::DqH, 20, 16), (Suite::Recurrences, 20, 16)])),
        ),
        ("3", "eigenrelation of E", Box::new(|| suites(&[(Suite::BigE, 20, 16)]))),
        ("4", "generating function and a_n", Box::new(criterion_4)),
        (
            "5",
            "inverse relations",
            Box::new(|| suites(&[(Suite::Inverse, 20, 16)])),
        ),
        ("6", "heat analog", Box::new(|| suites(&[(Suite::Heat, 16, 16)]))),
    ];
    let mut all = true;
    for (label, title, run) in &criteria {
        let t = Instant::now();
        let v = run();
        report(label, title, t, &v);
        all &= v.pass;
    }

    let t = Instant::now();
    let (v7, v7b) = criterion_7();
    report("7", "characterization replay", t, &v7);
    all &= v7.pass;
    let tag = if v7b.pass { "REFUTED" } else { "UNEXPECTED" };
    println!(
        "criterion 7b [literal alpha^k factorization in case I]: {tag} {}",
        v7b.detail
    );
    all &= v7b.pass;

    let t = Instant::now();
    let v8 = criterion_8();
    report("8", "float against exact", t, &v8);
    all &= v8.pass;

    let t = Instant::now();
    let v9 = criterion_9();
    report("9", "Psi recurrence against product lines", t, &v9);
    all &= v9.pass;

    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILURES" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
