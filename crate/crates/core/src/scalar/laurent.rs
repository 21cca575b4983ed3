use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::zpoly;

/// Laurent polynomial in `s` with integer coefficients.
///
/// `coeffs[i]` is the coefficient of `s^(min_exp + i)`. Both ends are trimmed,
/// so the first and last entries are nonzero, and zero is the empty vector
/// with `min_exp == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    pub fn new(min_exp: i64, mut coeffs: Vec<BigInt>) -> Self {
        zpoly::trim(&mut coeffs);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            min_exp: min_exp + lead as i64,
            coeffs,
        }
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent present; equals `min_exp` for zero.
    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len().max(1) as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.coeffs.len() == 1 && self.min_exp == 0)
    }

    /// Coefficient of `s^exp`.
    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.min_exp;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Iterator over `(exponent, coefficient)` with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let a = pad_front(&self.coeffs, (self.min_exp - lo) as usize);
        let b = pad_front(&other.coeffs, (other.min_exp - lo) as usize);
        Self::new(lo, zpoly::add(&a, &b))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: zpoly::neg(&self.coeffs),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.min_exp + other.min_exp, zpoly::mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.min_exp, zpoly::scale(&self.coeffs, c))
    }

    /// Exact value at a nonzero rational `s`.
    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + BigRational::from_integer(c.clone());
        }
        acc * pow_rational(s, self.min_exp)
    }
}

fn pad_front(c: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    out.extend_from_slice(c);
    out
}

pub(crate) fn pow_rational(s: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { s.recip() } else { s.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_is_canonical() {
        let p = LaurentPoly::from_i64s(-3, &[0, 0, 1, 0, -1, 0]);
        assert_eq!(p.min_exp(), -1);
        assert_eq!(p.coeffs().len(), 3);
        assert_eq!(p.max_exp(), 1);
        assert_eq!(LaurentPoly::from_i64s(5, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let a = LaurentPoly::from_i64s(-2, &[1, 0, 0, 0, -1]); // s^-2 - s^2
        let b = LaurentPoly::from_i64s(2, &[1]);
        assert_eq!(a.add(&b), LaurentPoly::from_i64s(-2, &[1]));
        assert_eq!(a.mul(&b), LaurentPoly::from_i64s(0, &[1, 0, 0, 0, -1]));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(a.eval(&half), BigRational::new(15.into(), 4.into()));
    }
}
