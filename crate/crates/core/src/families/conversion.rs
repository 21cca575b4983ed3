//! Connection coefficients between the Psi and Hermite bases, and the heat
//! operator analog.

use crate::error::{Error, Result};
use crate::opcore::{dq_iter, PolyX};
use crate::scalar::QScalar;

use super::{psi, q2_factorial, q_factorial};

/// `weights[i] = (k, w)` contributes `w * B_{n - 2k}` for the target basis `B`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ConversionRow {
    pub n: usize,
    pub weights: Vec<(usize, QScalar)>,
}

impl ConversionRow {
    /// `sum_k w_k basis[n - 2k]`.
    pub fn apply(&self, basis: &[PolyX]) -> PolyX {
        self.weights
            .iter()
            .fold(PolyX::zero(), |acc, (k, w)| acc.add(&basis[self.n - 2 * k].scale(w)))
    }
}

/// `Psi_n = sum_k (q;q)_n q^{k(k-n)} / ((q^2;q^2)_k (q;q)_{n-2k}) H_{n-2k}`.
pub fn psi_to_hermite(n: usize) -> ConversionRow {
    let weights = (0..=n / 2)
        .map(|k| {
            let e = (k as i64) * (k as i64 - n as i64);
            let w = q_factorial(n) * QScalar::q_pow(e) / (q2_factorial(k) * q_factorial(n - 2 * k));
            (k, w)
        })
        .collect();
    ConversionRow { n, weights }
}

/// `H_n = sum_k (-1)^k (q;q)_n q^{k(2k-n-1)} / ((q^2;q^2)_k (q;q)_{n-2k}) Psi_{n-2k}`.
pub fn hermite_to_psi(n: usize) -> ConversionRow {
    let weights = (0..=n / 2)
        .map(|k| {
            let e = (k as i64) * (2 * k as i64 - n as i64 - 1);
            let w = q_factorial(n) * QScalar::q_pow(e) / (q2_factorial(k) * q_factorial(n - 2 * k));
            (k, if k % 2 == 1 { -w } else { w })
        })
        .collect();
    ConversionRow { n, weights }
}

/// Lower-triangular matrix with `m[n][n - 2k] = w_k` for rows `0..=n_max`.
pub fn conversion_matrix(row: impl Fn(usize) -> ConversionRow, n_max: usize) -> Vec<Vec<QScalar>> {
    let mut m = vec![vec![QScalar::zero(); n_max + 1]; n_max + 1];
    for n in 0..=n_max {
        for (k, w) in row(n).weights {
            m[n][n - 2 * k] = w;
        }
    }
    m
}

/// Coordinates of `p` in a basis whose `k`-th member has degree exactly `k`.
pub fn expand_in_basis(p: &PolyX, basis: &[PolyX]) -> Result<Vec<QScalar>> {
    let deg = match p.degree() {
        None => return Ok(Vec::new()),
        Some(d) => d,
    };
    if deg >= basis.len() {
        return Err(Error::IndexOutOfRange(format!(
            "degree {deg} needs {} basis members, have {}",
            deg + 1,
            basis.len()
        )));
    }
    let mut rest = p.clone();
    let mut out = vec![QScalar::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let b = &basis[k];
        if b.degree() != Some(k) {
            return Err(Error::InvalidArgument(format!(
                "basis member {k} does not have degree {k}"
            )));
        }
        let c = rest.coeff(k).checked_div(&b.leading())?;
        rest = rest.sub(&b.scale(&c));
        out[k] = c;
    }
    Ok(out)
}

/// `sum_k (-1)^k q^{k(k-1)} / (q^2;q^2)_k ((1-q)^2 q^{-1/2} / 4)^k D_q^{2k} Psi_n`.
pub fn heat_apply(n: usize) -> PolyX {
    let p = psi(n);
    let u = QScalar::q().one_minus().pow(2).expect("nonnegative power") * QScalar::s_pow(-2) / QScalar::from_int(4);
    let mut acc = PolyX::zero();
    let mut term = p;
    for k in 0..=n / 2 {
        let k_i = k as i64;
        let mut c = u.pow(k_i).expect("nonnegative power") * QScalar::q_pow(k_i * (k_i - 1)) / q2_factorial(k);
        if k % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&term.scale(&c));
        term = dq_iter(&term, 2);
    }
    acc
}
