//! Truncated power series in t.

use crate::error::{Error, Result};
use crate::opcore::PolyX;
use crate::ring::Ring;
use crate::scalar::QScalar;

use super::{c_coeff, hermite_table, psi_table, q2_factorial, qpoch};

/// `sum_{n <= order} coeffs[n] t^n`, everything past `t^order` dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    order: usize,
    coeffs: Vec<C>,
}

/// Series with polynomial-in-x coefficients.
pub type SeriesT = Series<PolyX>;
/// Series with scalar coefficients.
pub type ScalarSeries = Series<QScalar>;

impl<C: Ring> Series<C> {
    /// Pads with zeros or truncates so that there are exactly `order + 1` terms.
    pub fn new(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![C::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            order,
            (0..=order).map(|n| self.coeffs[n].add(&other.coeffs[n])).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            order,
            (0..=order).map(|n| self.coeffs[n].sub(&other.coeffs[n])).collect(),
        )
    }

    /// Cauchy product, kept to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(C::zero(), |acc, k| {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        acc
                    } else {
                        acc.add(&self.coeffs[k].mul(&other.coeffs[n - k]))
                    }
                })
            })
            .collect();
        Self::new(order, coeffs)
    }

    /// `t -> t^k`; the order stays the same.
    pub fn stretch(&self, k: usize) -> Self {
        assert!(k > 0, "stretch factor must be positive");
        let mut out = vec![C::zero(); self.order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * k > self.order {
                break;
            }
            out[n * k] = c.clone();
        }
        Self::new(self.order, out)
    }

    /// Drops the constant term and divides by t; the order drops by one.
    pub fn shift_down(&self) -> Self {
        let order = self.order.saturating_sub(1);
        Self::new(order, self.coeffs.iter().skip(1).cloned().collect())
    }

    pub fn map<D: Ring>(&self, mut f: impl FnMut(usize, &C) -> D) -> Series<D> {
        Series::new(
            self.order,
            self.coeffs.iter().enumerate().map(|(n, c)| f(n, c)).collect(),
        )
    }
}

impl ScalarSeries {
    /// `t -> lambda t`.
    pub fn rescale_t(&self, lambda: &QScalar) -> Self {
        let mut pow = QScalar::one();
        self.map(|_, c| {
            let out = c * &pow;
            pow = &pow * lambda;
            out
        })
    }

    pub fn to_poly_series(&self) -> SeriesT {
        self.map(|_, c| PolyX::constant(c.clone()))
    }
}

impl SeriesT {
    pub fn rescale_t(&self, lambda: &QScalar) -> Self {
        let mut pow = QScalar::one();
        self.map(|_, c| {
            let out = c.scale(&pow);
            pow = &pow * lambda;
            out
        })
    }

    /// Product with a series whose coefficients do not depend on x.
    pub fn mul_scalar_series(&self, a: &ScalarSeries) -> Self {
        self.mul(&a.to_poly_series())
    }
}

/// `E(x; t) = sum_n c_n Psi_n(x) t^n`.
pub fn big_e_series(order: usize) -> SeriesT {
    let psis = psi_table(order);
    Series::new(
        order,
        psis.iter().enumerate().map(|(n, p)| p.scale(&c_coeff(n))).collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpVariant {
    /// `e_b(u) = sum u^k / (b; b)_k`
    EQ,
    /// `1 / e_b(u) = sum (-1)^k b^{k(k-1)/2} u^k / (b; b)_k`
    Reciprocal,
}

/// Truncation of `e_base(arg_scale * t)` or of its reciprocal.
pub fn qexp_trunc(arg_scale: &QScalar, base: &QScalar, variant: ExpVariant, order: usize) -> ScalarSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut arg_pow = QScalar::one();
    let mut base_tri = QScalar::one();
    let mut base_pow = QScalar::one();
    for k in 0..=order {
        let mut c = &arg_pow / qpoch(base, base, k);
        if variant == ExpVariant::Reciprocal {
            c = c * &base_tri;
            if k % 2 == 1 {
                c = -c;
            }
        }
        coeffs.push(c);
        arg_pow = arg_pow * arg_scale;
        base_tri = base_tri * &base_pow;
        base_pow = base_pow * base;
    }
    Series::new(order, coeffs)
}

/// `a_{2j} = (-1)^j (1 - q)^{2j} q^{j(j - 3/2)} / (2^{2j} (q^2; q^2)_j)`, odd terms zero.
pub fn a_series_closed(order: usize) -> ScalarSeries {
    let base = QScalar::q().one_minus().pow(2).expect("nonnegative power") / QScalar::from_int(4);
    let coeffs = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                return QScalar::zero();
            }
            let j = (n / 2) as i64;
            let sign = if j % 2 == 1 { -QScalar::one() } else { QScalar::one() };
            sign * base.pow(j).expect("nonnegative power") * QScalar::s_pow(4 * j * j - 6 * j)
                / q2_factorial(j as usize)
        })
        .collect();
    Series::new(order, coeffs)
}

fn a_at(a: &[QScalar], idx: i64) -> QScalar {
    if idx < 0 {
        return QScalar::zero();
    }
    a.get(idx as usize).cloned().unwrap_or_else(QScalar::zero)
}

/// Left side minus right side of the constraint obtained by equating the
/// coefficient of `Psi_k` after expanding the doubled h-recurrence in the
/// `c_k Psi_k` basis:
///
/// `4/(1-q)^2 q^{-n-1/2} (1-q^{n-k+2})(1-q^{n+k+1}) a_{n+2-k}`
/// `+ q^{-k-1} (1 + q^{2k+2} - q^{n+k+1} - q^{n+k+2}) a_{n-k}`
/// `+ (1-q)^2/4 q^{n-3/2} a_{n-2-k}`.
///
/// Entries of `a` past its end count as zero, as do negative indices.
pub fn a_recurrence_residual(a: &[QScalar], n: usize, k: usize) -> QScalar {
    let (n, k) = (n as i64, k as i64);
    let om = QScalar::q().one_minus();
    let t1 = QScalar::from_int(4) / (&om * &om)
        * QScalar::s_pow(-4 * n - 2)
        * QScalar::q_pow(n - k + 2).one_minus()
        * QScalar::q_pow(n + k + 1).one_minus()
        * a_at(a, n + 2 - k);
    let t2 = QScalar::q_pow(-k - 1)
        * (QScalar::one() + QScalar::q_pow(2 * k + 2) - QScalar::q_pow(n + k + 1) - QScalar::q_pow(n + k + 2))
        * a_at(a, n - k);
    let t3 = &om * &om / QScalar::from_int(4) * QScalar::s_pow(4 * n - 6) * a_at(a, n - 2 - k);
    t1 + t2 + t3
}

/// Solves the constraint system forward from `a_0 = 1`: `a_1` from
/// `(n, k) = (0, 1)`, then `a_m` from `(n, k) = (m - 2, 0)`. Every other
/// equation with `n + 2 <= order` and `k <= n + 2` is then checked.
pub fn a_series_recurrence(order: usize) -> Result<ScalarSeries> {
    let mut a = vec![QScalar::one()];
    if order >= 1 {
        // coefficient of a_1 at (0, 1), with a_1 itself set to zero
        let lead = solve_coefficient(0, 1, 1);
        let rest = a_recurrence_residual(&a, 0, 1);
        a.push(-(rest.checked_div(&lead)?));
    }
    for m in 2..=order {
        let n = m - 2;
        let lead = solve_coefficient(n, 0, m);
        let rest = a_recurrence_residual(&a, n, 0);
        a.push(-(rest.checked_div(&lead)?));
    }
    for n in 0..=order.saturating_sub(2) {
        if n + 2 > order {
            break;
        }
        for k in 0..=n + 2 {
            let r = a_recurrence_residual(&a, n, k);
            if !r.is_zero() {
                return Err(Error::InconsistentSystem {
                    n,
                    k,
                    residual: r.to_string(),
                });
            }
        }
    }
    Ok(Series::new(order, a))
}

/// Coefficient of `a_idx` in equation `(n, k)`.
fn solve_coefficient(n: usize, k: usize, idx: usize) -> QScalar {
    let mut unit = vec![QScalar::zero(); idx + 1];
    unit[idx] = QScalar::one();
    a_recurrence_residual(&unit, n, k)
}

/// `sum_n q^{n(n-1)/4} H_n(x|q) t^n / (q; q)_n`.
pub fn genfun_hermite_lhs(order: usize) -> SeriesT {
    let hs = hermite_table(order);
    let coeffs = hs
        .iter()
        .enumerate()
        .map(|(n, h)| {
            let n_i = n as i64;
            h.scale(&(QScalar::s_pow(n_i * (n_i - 1)) / super::q_factorial(n)))
        })
        .collect();
    Series::new(order, coeffs)
}
