//! Finite replay of the characterization of q-Hermite as the only orthogonal
//! `D_q`-Appell polynomial set.
//!
//! A candidate `Q_n = sum_k a_{n-k} h_k` obeying
//! `(1 - q^{n+1}) Q_{n+1} = ((1 - q) q^{n/2} x + beta_n) Q_n - gamma_n Q_{n-1}`
//! exists iff every coefficient of `h_k` in that recurrence vanishes, which
//! is the system checked by [`constraint_residual`].

mod case1;
mod case2;
mod unipoly;

pub use case1::{alpha_star, replay_case1};
pub use case2::{case2_critical_a1_squared, case2_system, endgame, replay_case2, Case2Sample};
pub use unipoly::UniPolyA;

use std::fmt::Display;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::QScalar;

/// Embedding of Q(s) constants into a coefficient ring.
pub trait Lift<R>: Sync {
    fn lift(&self, c: &QScalar) -> Result<R>;
}

/// Keeps `q` formal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl Lift<QScalar> for Symbolic {
    fn lift(&self, c: &QScalar) -> Result<QScalar> {
        Ok(c.clone())
    }
}

impl Lift<UniPolyA> for Symbolic {
    fn lift(&self, c: &QScalar) -> Result<UniPolyA> {
        Ok(UniPolyA::constant(c.clone()))
    }
}

/// Evaluates at a rational `s`, so `q = s^4`.
#[derive(Clone, Debug)]
pub struct AtSample {
    pub s: BigRational,
}

impl Lift<BigRational> for AtSample {
    fn lift(&self, c: &QScalar) -> Result<BigRational> {
        c.eval_exact(&self.s)
    }
}

/// Recurrence coefficients of a candidate; `gamma[0]` is never read.
#[derive(Clone, Debug, PartialEq)]
pub struct OpsCandidate<R> {
    pub max_n: usize,
    pub beta: Vec<R>,
    pub gamma: Vec<R>,
}

/// `a_0, a_1, ...` with `a_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AppellExpansion<R> {
    pub a: Vec<R>,
}

impl<R: Ring> AppellExpansion<R> {
    /// `a_i`, zero for negative `i`.
    pub fn get(&self, i: i64) -> Result<R> {
        if i < 0 {
            return Ok(R::zero());
        }
        self.a
            .get(i as usize)
            .cloned()
            .ok_or_else(|| Error::IndexOutOfRange(format!("a_{i} requested, expansion has {} terms", self.a.len())))
    }

    /// `(1, 0, 0, ...)`, the q-Hermite expansion.
    pub fn hermite(len: usize) -> Self {
        let mut a = vec![R::zero(); len.max(1)];
        a[0] = R::one();
        AppellExpansion { a }
    }
}

/// `beta_n = 0`, `gamma_n = (1 - q)^2 q^{n - 1/2} / 4`.
pub fn hermite_candidate(max_n: usize) -> OpsCandidate<QScalar> {
    let om = QScalar::q().one_minus();
    let quarter = &om * &om / QScalar::from_int(4);
    OpsCandidate {
        max_n,
        beta: vec![QScalar::zero(); max_n + 1],
        gamma: (0..=max_n as i64)
            .map(|n| &quarter * QScalar::s_pow(4 * n - 2))
            .collect(),
    }
}

/// `(1 - q^{(n-k+1)/2})(1 + q^{(n+k+1)/2})`, the weight of `a_{n+1-k}`.
pub(crate) fn lead_weight(n: i64, k: i64) -> QScalar {
    QScalar::s_pow(2 * (n - k + 1)).one_minus() * (QScalar::one() + QScalar::s_pow(2 * (n + k + 1)))
}

/// `(1 - q)^2 q^{(n+k)/2} / 4`, subtracted from `gamma_n`.
pub(crate) fn gamma_shift(n: i64, k: i64) -> QScalar {
    let om = QScalar::q().one_minus();
    &om * &om * QScalar::s_pow(2 * (n + k)) / QScalar::from_int(4)
}

fn get_at<'a, R>(v: &'a [R], i: usize, what: &str) -> Result<&'a R> {
    v.get(i)
        .ok_or_else(|| Error::IndexOutOfRange(format!("{what}_{i} requested, have {}", v.len())))
}

/// Coefficient of `h_k` in the recurrence for `Q_{n+1}`, with constants
/// lifted by `lift`:
/// `(1 - q^{(n-k+1)/2})(1 + q^{(n+1+k)/2}) a_{n+1-k} - beta_n a_{n-k}`
/// `+ [gamma_n - (1 - q)^2 q^{(n+k)/2} / 4] a_{n-k-1}`.
pub fn constraint_residual_with<R: Ring, L: Lift<R>>(
    lift: &L,
    n: usize,
    k: usize,
    exp: &AppellExpansion<R>,
    cand: &OpsCandidate<R>,
) -> Result<R> {
    if k > n + 1 {
        return Err(Error::IndexOutOfRange(format!("k = {k} exceeds n + 1 = {}", n + 1)));
    }
    let (ni, ki) = (n as i64, k as i64);
    let beta = get_at(&cand.beta, n, "beta")?;
    let a_lead = exp.get(ni + 1 - ki)?;
    let a_mid = exp.get(ni - ki)?;
    let a_low = exp.get(ni - ki - 1)?;
    let mut r = lift.lift(&lead_weight(ni, ki))?.mul(&a_lead).sub(&beta.mul(&a_mid));
    if !a_low.is_zero() {
        let gamma = get_at(&cand.gamma, n, "gamma")?;
        r = r.add(&gamma.sub(&lift.lift(&gamma_shift(ni, ki))?).mul(&a_low));
    }
    Ok(r)
}

/// [`constraint_residual_with`] with `q` kept formal.
pub fn constraint_residual<R: Ring>(n: usize, k: usize, exp: &AppellExpansion<R>, cand: &OpsCandidate<R>) -> Result<R>
where
    Symbolic: Lift<R>,
{
    constraint_residual_with(&Symbolic, n, k, exp, cand)
}

/// `beta_n = (1 - q^{1/2})(1 + q^{n + 1/2}) a_1`, forced by the `k = n` equation.
pub fn derive_beta(n: usize, a1: &UniPolyA) -> UniPolyA {
    let w = QScalar::s_pow(2).one_minus() * (QScalar::one() + QScalar::s_pow(4 * n as i64 + 2));
    a1.scale(&w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    /// Only the q-Hermite data survive.
    ForcedHermite,
    /// Some equation of the system fails.
    ContradictionWitness,
    /// The system holds but `gamma_n <= 0`, so no positive orthogonality measure exists.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub n: usize,
    pub k: usize,
    pub residual: String,
}

/// One verified or refuted statement inside a replay.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            holds,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplayReport {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub beta: Vec<String>,
    pub gamma: Vec<String>,
    pub notes: String,
    pub checks: Vec<Check>,
    /// False when part of the argument was not exercised.
    pub complete: bool,
    /// Component reports of an aggregate, case I first, then the samples in order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<ReplayReport>,
}

impl ReplayReport {
    fn new(outcome: Outcome) -> Self {
        ReplayReport {
            outcome,
            witness: None,
            beta: Vec::new(),
            gamma: Vec::new(),
            notes: String::new(),
            checks: Vec::new(),
            complete: true,
            parts: Vec::new(),
        }
    }
}

fn strings<R: Display>(v: &[R]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Every `(n, k)` with `n <= max_n`, `k <= n + 1`, in order.
fn cells(max_n: usize) -> Vec<(usize, usize)> {
    (0..=max_n).flat_map(|n| (0..=n + 1).map(move |k| (n, k))).collect()
}

/// First `(n, k)` in order with a nonzero residual.
pub fn first_witness<R: Ring + Display, L: Lift<R>>(
    lift: &L,
    exp: &AppellExpansion<R>,
    cand: &OpsCandidate<R>,
    max_n: usize,
) -> Result<Option<(usize, usize, R)>> {
    let residuals: Vec<Result<R>> = cells(max_n)
        .into_par_iter()
        .map(|(n, k)| constraint_residual_with(lift, n, k, exp, cand))
        .collect();
    for ((n, k), r) in cells(max_n).into_iter().zip(residuals) {
        let r = r?;
        if !r.is_zero() {
            return Ok(Some((n, k, r)));
        }
    }
    Ok(None)
}

/// Evaluates the system for `n <= max_n`; `ForcedHermite` iff every residual vanishes.
pub fn check_system<R: Ring + Display, L: Lift<R>>(
    lift: &L,
    exp: &AppellExpansion<R>,
    cand: &OpsCandidate<R>,
    max_n: usize,
) -> Result<ReplayReport> {
    let found = first_witness(lift, exp, cand, max_n)?;
    let mut report = ReplayReport::new(if found.is_some() {
        Outcome::ContradictionWitness
    } else {
        Outcome::ForcedHermite
    });
    report.beta = strings(&cand.beta[..=max_n.min(cand.beta.len() - 1)]);
    report.gamma = strings(&cand.gamma[1.min(cand.gamma.len())..=max_n.min(cand.gamma.len() - 1)]);
    if let Some((n, k, r)) = found {
        report.witness = Some(Witness {
            n,
            k,
            residual: r.to_string(),
        });
    }
    Ok(report)
}

/// Case I symbolically, then Case II at every sample in parallel. The
/// aggregate is `ForcedHermite` iff Case I is and every sample fails to be
/// an orthogonal set.
pub fn uniqueness_report(max_n: usize, samples: &[Case2Sample]) -> Result<ReplayReport> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!("N = {max_n} is below 4")));
    }
    let case1 = replay_case1(max_n)?;
    let case2: Vec<Result<ReplayReport>> = samples.par_iter().map(|smp| replay_case2(max_n, smp)).collect();
    let mut out = ReplayReport::new(Outcome::ForcedHermite);
    let mut ok = case1.outcome == Outcome::ForcedHermite;
    out.checks
        .push(Check::new("case I", ok, format!("{:?}", case1.outcome)));
    out.witness = case1.witness.clone();
    let mut parts = vec![case1.clone()];
    for (smp, rep) in samples.iter().zip(case2) {
        let rep = rep?;
        parts.push(rep.clone());
        let excluded = rep.outcome != Outcome::ForcedHermite;
        ok &= excluded;
        let detail = match &rep.witness {
            Some(w) => format!(
                "{:?} at (n, k) = ({}, {}), residual {}",
                rep.outcome, w.n, w.k, w.residual
            ),
            None => format!("{:?}", rep.outcome),
        };
        out.checks.push(Check::new(
            &format!("case II a1 = {}, a2 = {}, s = {}", smp.a1, smp.a2, smp.s),
            excluded,
            detail,
        ));
    }
    out.parts = parts;
    out.outcome = if ok {
        Outcome::ForcedHermite
    } else {
        Outcome::ContradictionWitness
    };
    out.complete = case1.complete && !samples.is_empty();
    out.notes = if samples.is_empty() {
        "no case II samples: only case I was replayed".to_string()
    } else {
        format!("case I symbolic, case II at {} samples", samples.len())
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(n: usize) -> (AppellExpansion<QScalar>, OpsCandidate<QScalar>) {
        (AppellExpansion::hermite(n + 2), hermite_candidate(n))
    }

    #[test]
    fn hermite_data_satisfy_the_system() {
        let (e, c) = herm(12);
        for n in 0..=12 {
            for k in 0..=n + 1 {
                assert!(constraint_residual(n, k, &e, &c).unwrap().is_zero());
            }
        }
        let r = check_system(&Symbolic, &e, &c, 12).unwrap();
        assert_eq!(r.outcome, Outcome::ForcedHermite);
        assert!(r.witness.is_none());
    }

    #[test]
    fn k_equal_n_residual_is_linear_in_a1() {
        let alpha = UniPolyA::var();
        for n in 0..6usize {
            let mut a = vec![UniPolyA::zero(); n + 2];
            a[0] = UniPolyA::one();
            a[1] = alpha.clone();
            let cand = OpsCandidate {
                max_n: n,
                beta: vec![UniPolyA::zero(); n + 1],
                gamma: vec![UniPolyA::zero(); n + 1],
            };
            let r = constraint_residual(n, n, &AppellExpansion { a }, &cand).unwrap();
            let w = QScalar::s_pow(2).one_minus() * (QScalar::one() + QScalar::s_pow(4 * n as i64 + 2));
            assert_eq!(r, alpha.scale(&w));
            assert_eq!(r, derive_beta(n, &alpha));
        }
    }

    #[test]
    fn trivial_cell_and_range_errors() {
        let (e, c) = herm(3);
        assert!(constraint_residual(0, 1, &e, &c).unwrap().is_zero());
        assert!(constraint_residual(2, 4, &e, &c).is_err());
        assert!(constraint_residual(9, 0, &e, &c).is_err());
    }

    #[test]
    fn derive_beta_examples() {
        for n in 0..5 {
            assert!(derive_beta(n, &UniPolyA::zero()).is_zero());
        }
        let alpha = UniPolyA::var();
        assert_eq!(derive_beta(0, &alpha), alpha.scale(&QScalar::q().one_minus()));
    }

    #[test]
    fn perturbations_are_witnessed() {
        let (e, mut c) = herm(12);
        c.beta[0] = QScalar::one();
        let w = check_system(&Symbolic, &e, &c, 12).unwrap().witness.unwrap();
        assert_eq!((w.n, w.k), (0, 0));
        assert_eq!(w.residual, (-QScalar::one()).to_string());

        let (e, mut c) = herm(12);
        c.gamma[1] = &c.gamma[1] + QScalar::one();
        let w = check_system(&Symbolic, &e, &c, 12).unwrap().witness.unwrap();
        assert_eq!((w.n, w.k), (1, 0));
        assert_eq!(w.residual, QScalar::one().to_string());
    }

    #[test]
    fn uniqueness_needs_four_levels() {
        assert!(uniqueness_report(3, &[]).is_err());
        let r = uniqueness_report(4, &[]).unwrap();
        assert_eq!(r.outcome, Outcome::ForcedHermite);
        assert!(!r.complete);
    }
}
