use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// Polynomial in one free parameter `a` over Q(s); `coeffs[k]` multiplies `a^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPolyA {
    coeffs: Vec<QScalar>,
}

impl UniPolyA {
    pub fn new(mut coeffs: Vec<QScalar>) -> Self {
        while coeffs.last().is_some_and(QScalar::is_zero) {
            coeffs.pop();
        }
        UniPolyA { coeffs }
    }

    pub fn zero() -> Self {
        UniPolyA { coeffs: Vec::new() }
    }

    pub fn constant(c: QScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(QScalar::one())
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::new(vec![QScalar::zero(), QScalar::one()])
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

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `m` with `a^m` dividing `self`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        UniPolyA {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
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

    pub fn eval(&self, a: &QScalar) -> QScalar {
        self.coeffs.iter().rev().fold(QScalar::zero(), |acc, c| acc * a + c)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.clone();
        let mut quot = vec![QScalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeffs[rd].checked_div(&lead)?;
            let mut shifted = vec![QScalar::zero(); rd - dd];
            shifted.extend(d.coeffs.iter().map(|x| x * &c));
            rem = rem.sub(&Self::new(shifted));
            quot[rd - dd] = c;
        }
        Ok((Self::new(quot), rem))
    }

    /// Leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lead) => self.scale(&lead.inv().expect("trimmed leading coefficient")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl crate::ring::Ring for UniPolyA {
    fn zero() -> Self {
        UniPolyA::zero()
    }
    fn one() -> Self {
        UniPolyA::one()
    }
    fn is_zero(&self) -> bool {
        UniPolyA::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        UniPolyA::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UniPolyA::mul(self, other)
    }
    fn neg(&self) -> Self {
        UniPolyA::neg(self)
    }
}

/// Text form `c0 + c1*a + c2*a^2`, zero terms omitted.
impl fmt::Display for UniPolyA {
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
                1 => write!(f, "{c}*a")?,
                _ => write!(f, "{c}*a^{k}")?,
            }
        }
        Ok(())
    }
}
