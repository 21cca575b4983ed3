//! The polynomial families and scalar sequences of the q-Hermite calculus.

mod conversion;
mod series;

pub use conversion::{conversion_matrix, expand_in_basis, heat_apply, hermite_to_psi, psi_to_hermite, ConversionRow};
pub use series::{
    a_recurrence_residual, a_series_closed, a_series_recurrence, big_e_series, genfun_hermite_lhs, qexp_trunc,
    ExpVariant, ScalarSeries, Series, SeriesT,
};

use crate::opcore::{mul_2x, PolyX};
use crate::scalar::QScalar;

/// q-Pochhammer symbol `(a; base)_n = prod_{j<n} (1 - a base^j)`.
pub fn qpoch(a: &QScalar, base: &QScalar, n: usize) -> QScalar {
    let mut acc = QScalar::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc = acc * term.one_minus();
        term = term * base;
    }
    acc
}

/// `(q; q)_n`.
pub fn q_factorial(n: usize) -> QScalar {
    qpoch(&QScalar::q(), &QScalar::q(), n)
}

/// `(q^2; q^2)_n`.
pub fn q2_factorial(n: usize) -> QScalar {
    let q2 = QScalar::q_pow(2);
    qpoch(&q2, &q2, n)
}

/// `4x^2 - (1 - q^m)(1 - q^-m)`: the factor carrying `Psi_{m-1}` to `Psi_{m+1}`.
fn psi_step_factor(m: i64) -> PolyX {
    let shift = QScalar::q_pow(m).one_minus() * QScalar::q_pow(-m).one_minus();
    PolyX::monomial(QScalar::from_int(4), 2).sub(&PolyX::constant(shift))
}

/// `Psi_0 ..= Psi_n` from `Psi_{m+2} = [4x^2 - (1 - q^{m+1})(1 - q^{-m-1})] Psi_m`,
/// `Psi_0 = 1`, `Psi_1 = 2x`.
pub fn psi_table(n: usize) -> Vec<PolyX> {
    let mut out = vec![PolyX::one(), mul_2x(&PolyX::one())];
    for m in 0..n.saturating_sub(1) {
        let next = psi_step_factor(m as i64 + 1).mul(&out[m]);
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

pub fn psi(n: usize) -> PolyX {
    psi_table(n).pop().expect("table has n + 1 entries")
}

/// The product forms printed for `Psi_n`:
/// odd `2x prod_{k<m} [4x^2 - (1 - q^{2m-2k})(1 - q^{2k-2m})]` (n = 2m + 1) and
/// even `prod_{k<m} [4x^2 + (1 - q^{2m-1-2k})(1 - q^{1-2m+2k})]` (n = 2m).
///
/// The odd line agrees with [`psi`]. The even line, with its `+`, does not:
/// expanding the defining product at n = 2 gives `4x^2 - (1 - q)(1 - q^-1)`.
pub fn psi_product_form(n: usize) -> PolyX {
    let m = (n / 2) as i64;
    let four_x2 = PolyX::monomial(QScalar::from_int(4), 2);
    if n % 2 == 1 {
        (0..m).fold(mul_2x(&PolyX::one()), |acc, k| {
            let c = QScalar::q_pow(2 * m - 2 * k).one_minus() * QScalar::q_pow(2 * k - 2 * m).one_minus();
            acc.mul(&four_x2.sub(&PolyX::constant(c)))
        })
    } else {
        (0..m).fold(PolyX::one(), |acc, k| {
            let c = QScalar::q_pow(2 * m - 1 - 2 * k).one_minus() * QScalar::q_pow(1 - 2 * m + 2 * k).one_minus();
            acc.mul(&four_x2.add(&PolyX::constant(c)))
        })
    }
}

/// `H_0 ..= H_n` from `H_{m+1} = 2x H_m - (1 - q^m) H_{m-1}`.
pub fn hermite_table(n: usize) -> Vec<PolyX> {
    let mut out = vec![PolyX::one()];
    let mut prev = PolyX::zero();
    for m in 0..n {
        let next = mul_2x(&out[m]).sub(&prev.scale(&QScalar::q_pow(m as i64).one_minus()));
        prev = out[m].clone();
        out.push(next);
    }
    out
}

pub fn hermite(n: usize) -> PolyX {
    hermite_table(n).pop().expect("table has n + 1 entries")
}

/// `c_k = (1 - q)^k q^{k(k-1)/4} / (2^k (q; q)_k)`.
pub fn c_coeff(k: usize) -> QScalar {
    let k_i = k as i64;
    let num = QScalar::q().one_minus().pow(k_i).expect("nonnegative power") * QScalar::s_pow(k_i * (k_i - 1));
    num / (QScalar::from_int(2).pow(k_i).expect("nonnegative power") * q_factorial(k))
}

/// `h_n = c_n H_n`, the `D_q`-Appell normalization of q-Hermite.
pub fn h_small_table(n: usize) -> Vec<PolyX> {
    hermite_table(n)
        .iter()
        .enumerate()
        .map(|(k, h)| h.scale(&c_coeff(k)))
        .collect()
}

pub fn h_small(n: usize) -> PolyX {
    hermite(n).scale(&c_coeff(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn one() -> QScalar {
        QScalar::one()
    }

    fn x2(c: i64) -> PolyX {
        PolyX::monomial(QScalar::from_int(c), 2)
    }

    #[test]
    fn qpoch_examples() {
        let a = QScalar::from_ratio(3, 7) * QScalar::s_pow(3);
        assert_eq!(qpoch(&a, &q(), 0), one());
        assert_eq!(q_factorial(1), one() - q());
        assert_eq!(q_factorial(2), (one() - q()) * (one() - q().pow(2).unwrap()));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(0), PolyX::one());
        assert_eq!(psi(1), mul_2x(&PolyX::one()));
        let c = (one() - q()).pow(2).unwrap() / q();
        assert_eq!(psi(2), x2(4).add(&PolyX::constant(c)));
        let f = (one() - q().pow(2).unwrap()) * (one() - q().pow(-2).unwrap());
        assert_eq!(psi(3), mul_2x(&PolyX::one()).mul(&x2(4).sub(&PolyX::constant(f))));
        for (n, p) in psi_table(9).iter().enumerate() {
            assert_eq!(p.degree(), Some(n));
            assert_eq!(p.leading(), QScalar::from_int(1 << n));
        }
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite(0), PolyX::one());
        assert_eq!(hermite(1), mul_2x(&PolyX::one()));
        assert_eq!(hermite(2), x2(4).sub(&PolyX::constant(one() - q())));
        assert_eq!(hermite_table(5).len(), 6);
    }

    #[test]
    fn h_small_examples() {
        assert_eq!(h_small(0), PolyX::one());
        assert_eq!(h_small(1), PolyX::x());
        let scale = (one() - q()).pow(2).unwrap() * QScalar::s_pow(2) / (QScalar::from_int(4) * q_factorial(2));
        assert_eq!(h_small(2), hermite(2).scale(&scale));
        assert_eq!(h_small_table(2)[2], h_small(2));
    }

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(0), one());
        assert_eq!(c_coeff(1), QScalar::from_ratio(1, 2));
        let expect = (one() - q()).pow(2).unwrap() * QScalar::s_pow(2) / (QScalar::from_int(4) * q_factorial(2));
        assert_eq!(c_coeff(2), expect);
    }

    #[test]
    fn product_forms_against_recurrence() {
        let table = psi_table(6);
        for n in [1usize, 3, 5] {
            assert_eq!(psi_product_form(n), table[n]);
        }
        assert_eq!(psi_product_form(0), table[0]);
        for n in [2usize, 4, 6] {
            assert_ne!(psi_product_form(n), table[n]);
        }
    }
}
