use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::zpoly;
use crate::error::{Error, Result};

/// Element of the rational function field Q(s), with q = s^4.
///
/// Canonical form: the denominator has no `s` factor (its lowest exponent is
/// 0), a positive leading coefficient, and shares no factor with the
/// numerator in Z[s], integer content included. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        QScalar {
            num: LaurentPoly::monomial(c, 0),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        // BigRational keeps a positive, reduced denominator
        QScalar {
            num: LaurentPoly::monomial(r.numer().clone(), 0),
            den: LaurentPoly::monomial(r.denom().clone(), 0),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        QScalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = num.min_exp() - den.min_exp();
        let (_, n, d) = zpoly::gcd_cofactors(num.coeffs(), den.coeffs());
        Ok(Self::normalized(shift, n, d))
    }

    fn normalized(shift: i64, mut n: Vec<BigInt>, mut d: Vec<BigInt>) -> Self {
        if d.last().is_some_and(Signed::is_negative) {
            n = zpoly::neg(&n);
            d = zpoly::neg(&d);
        }
        QScalar {
            num: LaurentPoly::new(shift, n),
            den: LaurentPoly::new(0, d),
        }
    }

    /// The monomial `s^e`, i.e. `q^(e/4)`.
    pub fn s_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigInt::one(), e))
    }

    /// `q^r` for a rational `r` with `4r` an integer.
    pub fn qpow(r: Rational64) -> Result<Self> {
        let four_r = r * Rational64::from_integer(4);
        if !four_r.is_integer() {
            return Err(Error::NotQuarterPower(r.to_string()));
        }
        Ok(Self::s_pow(four_r.to_integer()))
    }

    /// `q^(num/den)` for small literal exponents; panics if `4 num / den` is
    /// not an integer.
    pub fn q_frac(num: i64, den: i64) -> Self {
        Self::qpow(Rational64::new(num, den)).expect("quarter-integer power of q")
    }

    /// `q^n` for integer `n`.
    pub fn q_pow(n: i64) -> Self {
        Self::s_pow(4 * n)
    }

    /// The formal variable q itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_constant() && self.den.is_constant() && self.num == self.den
    }

    /// The rational value when the scalar does not depend on `s`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (e1, e2) = (self.num.min_exp(), other.num.min_exp());
        let lo = e1.min(e2);
        let n1 = pad_front(self.num.coeffs(), (e1 - lo) as usize);
        let n2 = pad_front(other.num.coeffs(), (e2 - lo) as usize);
        let (d1, d2) = (self.den.coeffs(), other.den.coeffs());
        if d1 == d2 {
            let n = zpoly::add(&n1, &n2);
            return Self::reduce_against(lo, n, d1.to_vec(), d1);
        }
        let (g, d1g, d2g) = zpoly::gcd_cofactors(d1, d2);
        let n = zpoly::add(&zpoly::mul(&n1, &d2g), &zpoly::mul(&n2, &d1g));
        let den = zpoly::mul(d1, &d2g);
        Self::reduce_against(lo, n, den, &g)
    }

    /// Canonicalizes `s^shift * n / den` when any common factor of `n` and
    /// `den` must divide `g`.
    fn reduce_against(shift: i64, n: Vec<BigInt>, den: Vec<BigInt>, g: &[BigInt]) -> Self {
        let lead = n.iter().take_while(|c| c.is_zero()).count();
        if lead == n.len() {
            return Self::zero();
        }
        let n: Vec<BigInt> = n[lead..].to_vec();
        let shift = shift + lead as i64;
        if g.len() == 1 && g[0].is_one() {
            return Self::normalized(shift, n, den);
        }
        let (h, n_red, _) = zpoly::gcd_cofactors(&n, g);
        if h.len() == 1 && h[0].is_one() {
            return Self::normalized(shift, n, den);
        }
        let den_red = zpoly::div_exact(&den, &h).expect("gcd factor divides the denominator");
        Self::normalized(shift, n_red, den_red)
    }

    pub fn checked_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.num.min_exp() + other.num.min_exp();
        let (n1, d1) = (self.num.coeffs(), self.den.coeffs());
        let (n2, d2) = (other.num.coeffs(), other.den.coeffs());
        let (_, n1r, d2r) = zpoly::gcd_cofactors(n1, d2);
        let (_, n2r, d1r) = zpoly::gcd_cofactors(n2, d1);
        Self::normalized(shift, zpoly::mul(&n1r, &n2r), zpoly::mul(&d1r, &d2r))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            -self.num.min_exp(),
            self.den.coeffs().to_vec(),
            self.num.coeffs().to_vec(),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.checked_mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.checked_mul(&b);
            }
        }
        Ok(acc)
    }

    /// `1 - self`, the shape of nearly every factor in a q-Pochhammer symbol.
    pub fn one_minus(&self) -> Self {
        Self::one() - self
    }

    /// Exact value at a nonzero rational `s`, so `q = s^4` exactly.
    pub fn eval_exact(&self, s: &BigRational) -> Result<BigRational> {
        if s.is_zero() {
            return Err(Error::InvalidArgument("s must be nonzero".into()));
        }
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
                at: s.to_string(),
            });
        }
        Ok(self.num.eval(s) / d)
    }

    /// Exact value at a nonzero rational `q`; only for scalars in Q(q), where
    /// every power of `s` is a multiple of 4.
    pub fn eval_at_q(&self, q: &BigRational) -> Result<BigRational> {
        if q.is_zero() {
            return Err(Error::InvalidArgument("q must be nonzero".into()));
        }
        let in_q = |p: &LaurentPoly| -> Result<BigRational> {
            let mut acc = BigRational::zero();
            for (e, c) in p.terms() {
                if e % 4 != 0 {
                    return Err(Error::NotQuarterPower(format!("s^{e} is not an integer power of q")));
                }
                acc += BigRational::from_integer(c.clone()) * super::laurent::pow_rational(q, e / 4);
            }
            Ok(acc)
        };
        let d = in_q(&self.den)?;
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: self.den.to_string(),
                at: format!("q = {q}"),
            });
        }
        Ok(in_q(&self.num)? / d)
    }
}

fn pad_front(c: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    out.extend_from_slice(c);
    out
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl crate::ring::Ring for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other)
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                let f: fn(&QScalar, &QScalar) -> QScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.checked_add(b));
forward_binop!(Sub, sub, |a, b| a.checked_add(&-b));
forward_binop!(Mul, mul, |a, b| a.checked_mul(b));
// Panics on a zero divisor; use `checked_div` for a recoverable error.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero QScalar"));

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::one(), |acc, x| acc * x)
    }
}
