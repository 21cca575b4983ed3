//! Case `a_1 != 0`, replayed at an exact rational `s` (so `q = s^4`),
//! followed by the symbolic endgame in the parameters `b` and `c^2`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    first_witness, gamma_shift, lead_weight, strings, AppellExpansion, AtSample, Check, Lift, OpsCandidate, Outcome,
    ReplayReport, UniPolyA, Witness,
};
use crate::error::{Error, Result};
use crate::families::qpoch;
use crate::scalar::QScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Case2Sample {
    pub a1: BigRational,
    pub a2: BigRational,
    pub s: BigRational,
}

impl Case2Sample {
    pub fn new(a1: (i64, i64), a2: (i64, i64), s: (i64, i64)) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        Case2Sample {
            a1: r(a1),
            a2: r(a2),
            s: r(s),
        }
    }

    /// `a1 in {1, -1, 1/3}`, `a2 in {0, 1/7}`, `s in {1/2, 2/3}`.
    pub fn default_grid() -> Vec<Self> {
        let mut out = Vec::new();
        for a1 in [(1, 1), (-1, 1), (1, 3)] {
            for a2 in [(0, 1), (1, 7)] {
                for s in [(1, 2), (2, 3)] {
                    out.push(Self::new(a1, a2, s));
                }
            }
        }
        out
    }
}

impl fmt::Display for Case2Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a1 = {}, a2 = {}, s = {}", self.a1, self.a2, self.s)
    }
}

/// `(1 - q)^2 q^{-1/2} / (4 (1 - q^{1/2})^2)`: the value of `a_1^2` for which
/// a matching `a_2` satisfies every equation, with `gamma_n = 0`.
pub fn case2_critical_a1_squared() -> QScalar {
    let om = QScalar::q().one_minus();
    let or = QScalar::s_pow(2).one_minus();
    &om * &om * QScalar::s_pow(-2) / (QScalar::from_int(4) * &or * &or)
}

struct Numeric {
    lift: AtSample,
    r: BigRational,
    q: BigRational,
}

impl Numeric {
    fn c(&self, x: &QScalar) -> Result<BigRational> {
        self.lift.lift(x)
    }

    fn r_pow(&self, e: i64) -> BigRational {
        if e < 0 {
            num_traits::pow(self.r.recip(), e.unsigned_abs() as usize)
        } else {
            num_traits::pow(self.r.clone(), e as usize)
        }
    }
}

fn numeric(sample: &Case2Sample) -> Numeric {
    Numeric {
        lift: AtSample { s: sample.s.clone() },
        r: &sample.s * &sample.s,
        q: num_traits::pow(sample.s.clone(), 4),
    }
}

/// The candidate at an exact sample: `beta_n` from the `(n, n)` equations,
/// `gamma_n` from `(n, n - 1)`, and `a_3, a_4, ...` from the n-free part of
/// the `(n, n - j)` equations,
/// `(1 - r^{j+1}) a_{j+1} = (1 - r) a_1 a_j - [(1 - r) a_1^2 - (1 - q) a_2] a_{j-1}`.
pub fn case2_system(
    max_n: usize,
    sample: &Case2Sample,
) -> Result<(AppellExpansion<BigRational>, OpsCandidate<BigRational>)> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!("N = {max_n} is below 4")));
    }
    if sample.a1.is_zero() {
        return Err(Error::InvalidArgument("case II needs a1 != 0".into()));
    }
    if !(sample.s.is_positive() && sample.s < BigRational::one()) {
        return Err(Error::InvalidArgument(format!("s = {} is outside (0, 1)", sample.s)));
    }
    let one = BigRational::one();
    let num = numeric(sample);
    let (a1, a2) = (&sample.a1, &sample.a2);

    let mut beta = Vec::with_capacity(max_n + 1);
    let mut gamma = vec![BigRational::zero()];
    for n in 0..=max_n as i64 {
        let w = num.c(&(QScalar::s_pow(2).one_minus() * (QScalar::one() + QScalar::s_pow(4 * n + 2))))?;
        beta.push(w * a1);
        if n >= 1 {
            let g = num.c(&gamma_shift(n, n - 1))? - num.c(&lead_weight(n, n - 1))? * a2 + &beta[n as usize] * a1;
            gamma.push(g);
        }
    }

    let kappa = (&one - &num.r) * a1 * a1 - (&one - &num.q) * a2;
    let mut a = vec![one.clone(), a1.clone(), a2.clone()];
    for j in 2..=max_n {
        let den = &one - num.r_pow(j as i64 + 1);
        let next = ((&one - &num.r) * a1 * &a[j] - &kappa * &a[j - 1]) / den;
        a.push(next);
    }
    a.truncate(max_n + 2);
    Ok((AppellExpansion { a }, OpsCandidate { max_n, beta, gamma }))
}

pub fn replay_case2(max_n: usize, sample: &Case2Sample) -> Result<ReplayReport> {
    let (exp, cand) = case2_system(max_n, sample)?;
    let one = BigRational::one();
    let num = numeric(sample);
    let (a1, a2) = (&sample.a1, &sample.a2);
    let a = &exp.a;
    let om_r = &one - &num.r;
    let om_q = &one - &num.q;
    let kappa = &om_r * a1 * a1 - &om_q * a2;

    let quarter = &om_q * &om_q / BigRational::from_integer(4.into());
    let mut checks = Vec::new();
    // q^n part of the same equations, and the combination without a_{j+1}
    let mut companion_fail = None;
    let mut eliminated_fail = None;
    let mut consistent = true;
    for j in 1..max_n {
        let rj = num.r_pow(1 - j as i64);
        let l_j = &quarter * (num.r_pow(-1) - num.r_pow(-(j as i64))) + &om_r * &num.r * a1 * a1 - &om_q * a2;
        let g = (&one - num.r_pow(j as i64 + 1)) * &rj * &a[j + 1] - &om_r * &num.r * a1 * &a[j] + &l_j * &a[j - 1];
        let e = &om_r * a1 * (&rj - &num.r) * &a[j] + (&l_j - &rj * &kappa) * &a[j - 1];
        consistent &= g == e;
        if companion_fail.is_none() && !g.is_zero() {
            companion_fail = Some((j, g));
        }
        if eliminated_fail.is_none() && !e.is_zero() {
            eliminated_fail = Some((j, e));
        }
    }
    checks.push(Check::new(
        "eliminated form equals companion residual",
        consistent,
        format!("j < {max_n}"),
    ));
    let describe = |f: &Option<(usize, BigRational)>| match f {
        Some((j, v)) => format!("first failure at j = {j}: {v}"),
        None => "holds for every j".to_string(),
    };
    checks.push(Check::new(
        "companion subsystem (q^n part)",
        companion_fail.is_none(),
        describe(&companion_fail),
    ));
    checks.push(Check::new(
        "eliminated subsystem",
        eliminated_fail.is_none(),
        describe(&eliminated_fail),
    ));

    let found = first_witness(&num.lift, &exp, &cand, max_n)?;
    let mut report = ReplayReport::new(Outcome::ContradictionWitness);
    match found {
        Some((n, k, r)) => {
            report.witness = Some(Witness {
                n,
                k,
                residual: r.to_string(),
            })
        }
        None => {
            let nonpositive = cand.gamma.iter().skip(1).all(|g| !g.is_positive());
            report.outcome = if nonpositive {
                Outcome::Degenerate
            } else {
                Outcome::ForcedHermite
            };
        }
    }
    checks.extend(endgame(max_n));
    report.beta = strings(&cand.beta);
    report.gamma = strings(&cand.gamma[1..]);
    report.notes = format!(
        "{sample}, q = {}. Any failing equation rules the sample out; a2 is not free once a1 is fixed.",
        num.q
    );
    report.checks = checks;
    Ok(report)
}

/// Symbolic checks in Q(s) for `a_k = c^k (b r; r)_k / (r; r)_k`, `r = q^{1/2}`.
pub fn endgame(max_n: usize) -> Vec<Check> {
    let r = QScalar::s_pow(2);
    let om_q = QScalar::q().one_minus();
    let om_r = r.one_minus();
    let rr = |e: i64| QScalar::s_pow(2 * e);

    // b formal: (b r; r)_j is a polynomial in b
    let b_shape: Vec<UniPolyA> = (0..=max_n + 1)
        .map(|j| {
            let mut p = UniPolyA::one();
            for i in 1..=j as i64 {
                p = p.mul(&UniPolyA::new(vec![QScalar::one(), -rr(i)]));
            }
            p.scale(&qpoch(&r, &r, j).inv().expect("(r; r)_j is nonzero"))
        })
        .collect();
    let mut common = UniPolyA::zero();
    for j in 2..=max_n {
        let kappa = b_shape[1].mul(&b_shape[1]).scale(&om_r).sub(&b_shape[2].scale(&om_q));
        let f = b_shape[j + 1]
            .scale(&rr(j as i64 + 1).one_minus())
            .sub(&b_shape[1].mul(&b_shape[j]).scale(&om_r))
            .add(&kappa.mul(&b_shape[j - 1]));
        common = common.gcd(&f);
    }
    // b^2 (b - r^-1); the second root gives a_1 = 0, outside this case
    let expected = UniPolyA::new(vec![QScalar::zero(), QScalar::zero(), -rr(-1), QScalar::one()]);
    let excluded = b_shape[1].eval(&rr(-1)).is_zero();
    let b_forced = common == expected && excluded;
    let b_detail = format!("common factor {common}; b = q^(-1/2) makes a_1 = 0");

    // b = 0, c^2 formal: solve the companion equations for c^2
    let shape: Vec<QScalar> = (0..=max_n + 1)
        .map(|j| qpoch(&r, &r, j).inv().expect("nonzero"))
        .collect();
    let target = &om_q * &om_q * QScalar::s_pow(-2) / QScalar::from_int(4);
    let quarter = &om_q * &om_q / QScalar::from_int(4);
    let mut c2_ok = true;
    for j in 2..max_n {
        let ji = j as i64;
        let lin = rr(ji + 1).one_minus() * rr(1 - ji) * &shape[j + 1] - &om_r * &r * &shape[1] * &shape[j]
            + (&om_r * &r * &shape[1] * &shape[1] - &om_q * &shape[2]) * &shape[j - 1];
        let cst = &quarter * (rr(-1) - rr(-ji)) * &shape[j - 1];
        c2_ok &= !lin.is_zero() && (-cst).checked_div(&lin).ok().as_ref() == Some(&target);
    }

    // gamma_n with a_1 = c / (1 - r), a_2 = c^2 / ((1 - r)(1 - q)) at the forced c^2
    let a1_sq = &target * &shape[1] * &shape[1];
    let a2 = &target * &shape[2];
    let gamma_zero = (1..=max_n as i64).all(|n| {
        let beta_w = om_r.clone() * (QScalar::one() + QScalar::s_pow(4 * n + 2));
        (gamma_shift(n, n - 1) - lead_weight(n, n - 1) * &a2 + beta_w * &a1_sq).is_zero()
    });

    vec![
        Check::new("general shape forces b = 0", b_forced, b_detail),
        Check::new(
            "b = 0 forces c^2 = (1-q)^2 q^(-1/2)/4",
            c2_ok,
            format!("2 <= j < {max_n}"),
        ),
        Check::new("then gamma_n = 0 for all n", gamma_zero, format!("1 <= n <= {max_n}")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_witnessed() {
        for smp in [
            Case2Sample::new((1, 1), (0, 1), (1, 2)),
            Case2Sample::new((1, 3), (1, 7), (2, 3)),
        ] {
            let rep = replay_case2(10, &smp).unwrap();
            assert_eq!(rep.outcome, Outcome::ContradictionWitness, "{smp}");
            let w = rep.witness.unwrap();
            assert_ne!(w.residual, "0");
        }
    }

    #[test]
    fn endgame_identities() {
        for c in endgame(8) {
            assert!(c.holds, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn critical_point_is_degenerate() {
        // s = 1/2: a1^2 = 25/16, and a2 = (a1^2 + (1-q) q^(-1/2) / 4) / 2
        let s = BigRational::new(1.into(), 2.into());
        let a1_sq = case2_critical_a1_squared().eval_exact(&s).unwrap();
        assert_eq!(a1_sq, BigRational::new(25.into(), 16.into()));
        let extra = (QScalar::q().one_minus() * QScalar::s_pow(-2) / QScalar::from_int(4))
            .eval_exact(&s)
            .unwrap();
        let a2 = (&a1_sq + extra) / BigRational::from_integer(2.into());
        let smp = Case2Sample {
            a1: BigRational::new(5.into(), 4.into()),
            a2,
            s,
        };
        let rep = replay_case2(8, &smp).unwrap();
        assert_eq!(rep.outcome, Outcome::Degenerate);
        assert!(rep.gamma.iter().all(|g| g == "0"));
    }

    #[test]
    fn bad_samples_are_rejected() {
        assert!(replay_case2(6, &Case2Sample::new((0, 1), (0, 1), (1, 2))).is_err());
        assert!(replay_case2(6, &Case2Sample::new((1, 1), (0, 1), (3, 2))).is_err());
    }
}
