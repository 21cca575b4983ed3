//! Named identity suites, each a list of independent exact checks.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::families::{
    a_recurrence_residual, a_series_closed, a_series_recurrence, big_e_series, c_coeff, conversion_matrix,
    genfun_hermite_lhs, h_small_table, heat_apply, hermite_table, hermite_to_psi, psi_product_form, psi_table,
    psi_to_hermite, q_factorial, Series,
};
use crate::opcore::{dq, dq_iter, mul_2x, PolyX};
use crate::scalar::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DqPsi,
    DqH,
    Recurrences,
    Genfun,
    Inverse,
    Heat,
    BigE,
    ACoeffs,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::DqPsi,
        Suite::DqH,
        Suite::Recurrences,
        Suite::Genfun,
        Suite::Inverse,
        Suite::Heat,
        Suite::BigE,
        Suite::ACoeffs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DqPsi => "dq-psi",
            Suite::DqH => "dq-h",
            Suite::Recurrences => "recurrences",
            Suite::Genfun => "genfun",
            Suite::Inverse => "inverse",
            Suite::Heat => "heat",
            Suite::BigE => "big-e",
            Suite::ACoeffs => "a-coeffs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub params: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One case: a name for its parameters and the checks it runs.
type Case = (String, Vec<(&'static str, Residual)>);

/// An exact residual (zero means pass), or an error that stopped the check.
enum Residual {
    Poly(PolyX),
    Scalar(QScalar),
    Error(String),
}

impl Residual {
    fn is_zero(&self) -> bool {
        match self {
            Residual::Poly(p) => p.is_zero(),
            Residual::Scalar(c) => c.is_zero(),
            Residual::Error(_) => false,
        }
    }

    fn render(&self) -> String {
        match self {
            Residual::Poly(p) => p.to_string(),
            Residual::Scalar(c) => c.to_string(),
            Residual::Error(e) => e.clone(),
        }
    }
}

fn poly_diff(a: &PolyX, b: &PolyX) -> Residual {
    Residual::Poly(a.sub(b))
}

fn series_cases(label: &'static str, got: &Series<PolyX>, want: &Series<PolyX>) -> Vec<Case> {
    (0..=got.order().min(want.order()))
        .map(|n| {
            (
                format!("t^{n}"),
                vec![(label, poly_diff(&got.coeff(n), &want.coeff(n)))],
            )
        })
        .collect()
}

/// Runs `suite`: `max_n` bounds the polynomial degree, `t_order` the series order.
pub fn run_suite(suite: Suite, max_n: usize, t_order: usize) -> SuiteResult {
    let start = Instant::now();
    let cases = match suite {
        Suite::DqPsi => dq_psi(max_n),
        Suite::DqH => dq_h(max_n),
        Suite::Recurrences => recurrences(max_n),
        Suite::Genfun => genfun(t_order),
        Suite::Inverse => inverse(max_n),
        Suite::Heat => heat(max_n),
        Suite::BigE => big_e(t_order),
        Suite::ACoeffs => a_coeffs(t_order),
    };
    let failures = cases
        .iter()
        .flat_map(|(params, checks)| {
            checks.iter().filter(|(_, r)| !r.is_zero()).map(move |(id, r)| Failure {
                identity: id.to_string(),
                params: params.clone(),
                residual: r.render(),
            })
        })
        .collect();
    SuiteResult {
        suite: suite.name().to_string(),
        cases: cases.len(),
        failures,
        wall_time: start.elapsed(),
    }
}

fn dq_psi(max_n: usize) -> Vec<Case> {
    let psis = psi_table(max_n);
    (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let ni = n as i64;
            let lower = QScalar::from_int(2) * QScalar::s_pow(2 - 2 * ni) * QScalar::q_pow(ni).one_minus()
                / QScalar::q().one_minus();
            let mut checks = vec![("dq-psi-lowering", poly_diff(&dq(&psis[n]), &psis[n - 1].scale(&lower)))];
            let xw =
                (QScalar::s_pow(2 + 2 * ni) - QScalar::s_pow(-2 - 2 * ni)) / (QScalar::s_pow(2) - QScalar::s_pow(-2));
            checks.push((
                "dq-x-psi",
                poly_diff(&dq(&psis[n].mul_x()), &mul_2x(&psis[n - 1]).scale(&xw)),
            ));
            for k in 0..=n {
                let it = dq_iter(&psis[n], k);
                let ki = k as i64;
                let w = QScalar::from_int(2).pow(ki).expect("nonnegative power")
                    * QScalar::s_pow(ki * (ki + 1) - 2 * ni * ki)
                    * q_factorial(n)
                    / (q_factorial(n - k) * QScalar::q().one_minus().pow(ki).expect("nonnegative power"));
                checks.push(("dq-iter-psi", poly_diff(&it, &psis[n - k].scale(&w))));
            }
            (format!("n={n}"), checks)
        })
        .collect()
}

fn dq_h(max_n: usize) -> Vec<Case> {
    let h = h_small_table(max_n);
    (1..=max_n)
        .into_par_iter()
        .map(|n| {
            (
                format!("n={n}"),
                vec![("dq-h-appell", poly_diff(&dq(&h[n]), &h[n - 1]))],
            )
        })
        .collect()
}

fn recurrences(max_n: usize) -> Vec<Case> {
    let h = h_small_table(max_n + 1);
    let hs = hermite_table(max_n + 1);
    let psis = psi_table(max_n);
    let om = QScalar::q().one_minus();
    let quarter = &om * &om / QScalar::from_int(4);
    (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let ni = n as i64;
            let mut checks = Vec::new();
            let prev_h = if n == 0 { PolyX::zero() } else { hs[n - 1].clone() };
            let herm = mul_2x(&hs[n]).sub(&prev_h.scale(&QScalar::q_pow(ni).one_minus()));
            checks.push(("hermite-three-term", poly_diff(&hs[n + 1], &herm)));
            if n >= 1 {
                let lhs = h[n + 1].scale(&QScalar::q_pow(ni + 1).one_minus());
                let rhs = h[n]
                    .mul_x()
                    .scale(&(&om * QScalar::s_pow(2 * ni)))
                    .sub(&h[n - 1].scale(&(&quarter * QScalar::s_pow(4 * ni - 2))));
                checks.push(("h-three-term", poly_diff(&lhs, &rhs)));
            }
            if n >= 2 && n + 2 <= max_n + 1 {
                let a = QScalar::from_int(4)
                    * QScalar::q_pow(ni + 1).one_minus()
                    * QScalar::q_pow(ni + 2).one_minus()
                    * QScalar::s_pow(-4 * ni - 2)
                    / (&om * &om);
                let b = QScalar::from_int(2) - QScalar::q_pow(ni) - QScalar::q_pow(ni + 1);
                let rhs = h[n + 2]
                    .scale(&a)
                    .add(&h[n].scale(&b))
                    .add(&h[n - 2].scale(&(&quarter * QScalar::s_pow(4 * ni - 6))));
                checks.push((
                    "h-doubled",
                    poly_diff(&h[n].mul_x().mul_x().scale(&QScalar::from_int(4)), &rhs),
                ));
            }
            if n % 2 == 1 {
                checks.push(("psi-odd-product", poly_diff(&psi_product_form(n), &psis[n])));
            }
            (format!("n={n}"), checks)
        })
        .collect()
}

fn genfun(t_order: usize) -> Vec<Case> {
    let e = big_e_series(t_order);
    let prod = e.mul_scalar_series(&a_series_closed(t_order));
    let h = Series::new(t_order, h_small_table(t_order));
    let lam = QScalar::from_int(2) / QScalar::q().one_minus();
    let mut out = series_cases("a-times-e", &prod, &h);
    out.extend(series_cases(
        "rescaled-generating-function",
        &prod.rescale_t(&lam),
        &genfun_hermite_lhs(t_order),
    ));
    out
}

#[allow(clippy::needless_range_loop)]
fn inverse(max_n: usize) -> Vec<Case> {
    let a = conversion_matrix(psi_to_hermite, max_n);
    let b = conversion_matrix(hermite_to_psi, max_n);
    let psis = psi_table(max_n);
    let hs = hermite_table(max_n);
    (0..=max_n)
        .into_par_iter()
        .map(|i| {
            let mut checks = vec![
                ("psi-in-hermite", poly_diff(&psi_to_hermite(i).apply(&hs), &psis[i])),
                ("hermite-in-psi", poly_diff(&hermite_to_psi(i).apply(&psis), &hs[i])),
            ];
            for j in 0..=i {
                let e: QScalar = (j..=i).map(|k| &a[i][k] * &b[k][j]).sum();
                let id = if i == j { QScalar::one() } else { QScalar::zero() };
                checks.push(("matrix-inverse", Residual::Scalar(e - id)));
            }
            (format!("row={i}"), checks)
        })
        .collect()
}

fn heat(max_n: usize) -> Vec<Case> {
    let hs = hermite_table(max_n);
    (0..=max_n)
        .into_par_iter()
        .map(|n| {
            (
                format!("n={n}"),
                vec![("heat-analog", poly_diff(&heat_apply(n), &hs[n]))],
            )
        })
        .collect()
}

fn big_e(t_order: usize) -> Vec<Case> {
    let e = big_e_series(t_order);
    let de = e.map(|_, c| dq(c)).shift_down();
    series_cases("e-eigenrelation", &de, &e.truncate(t_order.saturating_sub(1)))
}

fn a_coeffs(t_order: usize) -> Vec<Case> {
    let closed = a_series_closed(t_order + 2);
    let solved = a_series_recurrence(t_order);
    let psis = psi_table(t_order);
    let h = h_small_table(t_order);
    (0..=t_order)
        .into_par_iter()
        .map(|n| {
            let mut checks = Vec::new();
            match &solved {
                Ok(s) => checks.push((
                    "recurrence-equals-closed",
                    Residual::Scalar(s.coeff(n) - closed.coeff(n)),
                )),
                Err(e) => checks.push(("recurrence-equals-closed", Residual::Error(e.to_string()))),
            }
            if n % 2 == 1 {
                checks.push(("odd-a-vanish", Residual::Scalar(closed.coeff(n))));
            }
            if n + 2 <= t_order {
                for k in 0..=n + 2 {
                    checks.push((
                        "a-constraint",
                        Residual::Scalar(a_recurrence_residual(closed.coeffs(), n, k)),
                    ));
                }
            }
            let expansion = (0..=n).fold(PolyX::zero(), |acc, k| {
                acc.add(&psis[k].scale(&(closed.coeff(n - k) * c_coeff(k))))
            });
            checks.push(("h-in-psi-basis", poly_diff(&expansion, &h[n])));
            (format!("n={n}"), checks)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_bounds() {
        for s in Suite::ALL {
            let r = run_suite(s, 8, 8);
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.cases > 0);
        }
        assert_eq!(run_suite(Suite::DqPsi, 6, 4).cases, 6);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
