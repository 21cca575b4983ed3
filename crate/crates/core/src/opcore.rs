//! Polynomials in x = cos(theta) and the Askey-Wilson operator `D_q`.
//!
//! `D_q` acts through z = e^(i theta): a polynomial becomes a symmetric
//! Laurent polynomial in z, the shift z -> q^(+-1/2) z scales the coefficient
//! of z^k by s^(+-2k), and the difference is divided exactly by
//! `delta_q x = (q^(1/2) - q^(-1/2)) (z - 1/z) / 2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FloatContext, QScalar};

/// Polynomial in x over Q(s); `coeffs[k]` multiplies x^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<QScalar>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<QScalar>) -> Self {
        while coeffs.last().is_some_and(QScalar::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn constant(c: QScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(QScalar::one())
    }

    pub fn x() -> Self {
        Self::monomial(QScalar::one(), 1)
    }

    pub fn monomial(c: QScalar, k: usize) -> Self {
        let mut coeffs = vec![QScalar::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> QScalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![QScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(QScalar::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    /// Exact value at rational `s` (so q = s^4) and rational `x`.
    pub fn eval_exact(&self, s: &BigRational, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_exact(s)?;
        }
        Ok(acc)
    }

    /// Exact value at rational `q` and `x` when every coefficient lies in Q(q).
    pub fn eval_at_q(&self, q: &BigRational, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval_at_q(q)?;
        }
        Ok(acc)
    }

    /// Value at numeric `q` in (0, 1) and `x`, using `precision`-bit arithmetic.
    pub fn eval_float(&self, q_val: f64, x: f64, precision: usize) -> Result<f64> {
        let ctx = FloatContext::new(q_val, precision)?;
        let xf = ctx.from_f64(x)?;
        let mut acc = ctx.integer(&BigInt::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * &xf + ctx.eval(c)?;
        }
        Ok(crate::scalar::to_f64(&acc))
    }
}

impl crate::ring::Ring for PolyX {
    fn zero() -> Self {
        PolyX::zero()
    }
    fn one() -> Self {
        PolyX::one()
    }
    fn is_zero(&self) -> bool {
        PolyX::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        PolyX::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PolyX::mul(self, other)
    }
    fn neg(&self) -> Self {
        PolyX::neg(self)
    }
}

/// Text form `c0 + c1*x + c2*x^2 + ...`, zero terms omitted.
impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{}", QScalar::zero());
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// f(z) = c[0] + sum_{k>=1} c[k] (z^k + z^-k).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymLaurent {
    pub c: Vec<QScalar>,
}

/// g(z) = sum_{k>=1} d[k-1] (z^k - z^-k).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AntiLaurent {
    pub d: Vec<QScalar>,
}

fn trimmed(mut v: Vec<QScalar>) -> Vec<QScalar> {
    while v.last().is_some_and(QScalar::is_zero) {
        v.pop();
    }
    v
}

fn rational_scalar(n: BigInt, d: BigInt) -> QScalar {
    QScalar::from_rational(&BigRational::new(n, d))
}

/// Rewrites `p` in the z-basis: x^k = 2^-k sum_j C(k, j) z^(k - 2j).
pub fn to_sym(p: &PolyX) -> SymLaurent {
    let n = p.coeffs().len();
    let mut c = vec![QScalar::zero(); n];
    for (k, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let scale = BigInt::one() << k;
        // z^m and z^-m share the weight C(k, (k - m)/2)
        for m in (k % 2..=k).step_by(2) {
            let w = rational_scalar(binomial(BigInt::from(k), BigInt::from((k - m) / 2)), scale.clone());
            c[m] = &c[m] + a * &w;
        }
    }
    SymLaurent { c: trimmed(c) }
}

/// Chebyshev polynomials T_0..T_n with integer coefficients.
fn chebyshev_t(n: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = vec![vec![BigInt::one()], vec![BigInt::zero(), BigInt::one()]];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for (i, v) in t[m - 1].iter().enumerate() {
            next[i + 1] += v * 2;
        }
        for (i, v) in t[m - 2].iter().enumerate() {
            next[i] -= v;
        }
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

/// Back to the monomial basis using z^m + z^-m = 2 T_m(x).
pub fn from_sym(f: &SymLaurent) -> PolyX {
    let n = f.c.len();
    if n == 0 {
        return PolyX::zero();
    }
    let t = chebyshev_t(n - 1);
    let mut out = vec![QScalar::zero(); n];
    for (m, cm) in f.c.iter().enumerate() {
        if cm.is_zero() {
            continue;
        }
        let factor: i64 = if m == 0 { 1 } else { 2 };
        for (i, ti) in t[m].iter().enumerate() {
            if !ti.is_zero() {
                let w = QScalar::from_bigint(ti * factor);
                out[i] = &out[i] + cm * &w;
            }
        }
    }
    PolyX::new(out)
}

/// delta_q f = f(q^(1/2) z) - f(q^(-1/2) z): d_k = (s^(2k) - s^(-2k)) c_k.
pub fn delta_q(f: &SymLaurent) -> AntiLaurent {
    let d =
        f.c.iter()
            .enumerate()
            .skip(1)
            .map(|(k, ck)| {
                let k = k as i64;
                ck * (QScalar::s_pow(2 * k) - QScalar::s_pow(-2 * k))
            })
            .collect();
    AntiLaurent { d: trimmed(d) }
}

/// Exact quotient of an antisymmetric Laurent polynomial by (z - 1/z).
///
/// Works on the full coefficient vector z^-K..z^K and checks that the
/// remainder vanishes.
fn divide_by_z_minus_inv_z(g: &AntiLaurent) -> Result<SymLaurent> {
    let top = g.d.len();
    if top == 0 {
        return Ok(SymLaurent::default());
    }
    let k = top as isize;
    let coeff_at = |i: isize| -> QScalar {
        match i {
            0 => QScalar::zero(),
            i if i > 0 => g.d[(i - 1) as usize].clone(),
            i => -&g.d[(-i - 1) as usize],
        }
    };
    // (z - 1/z) sum Q_j z^j has z^i coefficient Q_(i-1) - Q_(i+1)
    let width = (2 * k + 1) as usize;
    let idx = |j: isize| (j + k) as usize;
    let mut quot = vec![QScalar::zero(); width + 2];
    for i in ((-k + 1)..=k).rev() {
        let above = if i < k {
            quot[idx(i + 1)].clone()
        } else {
            QScalar::zero()
        };
        quot[idx(i - 1)] = coeff_at(i) + above;
    }
    let remainder = coeff_at(-k) + &quot[idx(-k + 1)];
    if !remainder.is_zero() {
        return Err(Error::Internal(format!(
            "delta_q image not divisible by z - 1/z: remainder {remainder}"
        )));
    }
    for j in 1..k {
        if quot[idx(j)] != quot[idx(-j)] {
            return Err(Error::Internal("quotient by z - 1/z is not symmetric".into()));
        }
    }
    Ok(SymLaurent {
        c: trimmed((0..k).map(|j| quot[idx(j)].clone()).collect()),
    })
}

/// `D_q p = delta_q p / delta_q x`.
pub fn dq(p: &PolyX) -> PolyX {
    try_dq(p).expect("D_q of a polynomial divides exactly")
}

pub fn try_dq(p: &PolyX) -> Result<PolyX> {
    let g = delta_q(&to_sym(p));
    // delta_q x = (s^2 - s^-2)/2 * (z - 1/z)
    let inv_half_gap = (QScalar::from_ratio(1, 2) * (QScalar::s_pow(2) - QScalar::s_pow(-2))).inv()?;
    let scaled = AntiLaurent {
        d: g.d.iter().map(|dk| dk * &inv_half_gap).collect(),
    };
    Ok(from_sym(&divide_by_z_minus_inv_z(&scaled)?))
}

/// `D_q` applied `k` times.
pub fn dq_iter(p: &PolyX, k: usize) -> PolyX {
    let mut out = p.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = dq(&out);
    }
    out
}

pub fn mul_2x(p: &PolyX) -> PolyX {
    p.mul_x().scale(&QScalar::from_int(2))
}
