//! Floating-point evaluation at a numeric q in (0, 1).
//!
//! Every operation rounds to the working precision `p` (binary digits), so
//! each arithmetic step carries a relative error of at most 2^(1-p).

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use super::qscalar::QScalar;
use crate::error::{Error, Result};

pub type BigFloat = FBig<HalfEven, 2>;

/// Fixed `q` and precision, with `s = q^(1/4)` computed once.
#[derive(Clone, Debug)]
pub struct FloatContext {
    precision: usize,
    s: BigFloat,
}

impl FloatContext {
    pub fn new(q_val: f64, precision: usize) -> Result<Self> {
        if !(q_val > 0.0 && q_val < 1.0) {
            return Err(Error::QOutOfRange(q_val));
        }
        if precision < 2 {
            return Err(Error::InvalidArgument(format!("precision {precision} is below 2 bits")));
        }
        let q = BigFloat::try_from(q_val)
            .map_err(|e| Error::InvalidArgument(format!("q = {q_val}: {e:?}")))?
            .with_precision(precision)
            .value();
        let s = q.sqrt().sqrt();
        Ok(FloatContext { precision, s })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn s(&self) -> &BigFloat {
        &self.s
    }

    pub fn integer(&self, c: &BigInt) -> BigFloat {
        let i = match c.to_i64() {
            Some(v) => IBig::from(v),
            None => IBig::from_str_radix(&c.to_str_radix(16), 16).expect("hex digits parse"),
        };
        BigFloat::from(i).with_precision(self.precision).value()
    }

    pub fn from_f64(&self, x: f64) -> Result<BigFloat> {
        Ok(BigFloat::try_from(x)
            .map_err(|e| Error::InvalidArgument(format!("{x}: {e:?}")))?
            .with_precision(self.precision)
            .value())
    }

    fn s_pow(&self, e: i64) -> BigFloat {
        let one = self.integer(&BigInt::from(1));
        let mut acc = one.clone();
        let mut base = self.s.clone();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        if e < 0 {
            one / acc
        } else {
            acc
        }
    }

    fn laurent(&self, p: &LaurentPoly) -> BigFloat {
        let mut acc = self.integer(&BigInt::zero());
        for c in p.coeffs().iter().rev() {
            acc = &acc * &self.s + self.integer(c);
        }
        acc * self.s_pow(p.min_exp())
    }

    pub fn eval(&self, a: &QScalar) -> Result<BigFloat> {
        let den = self.laurent(a.denom());
        if den == self.integer(&BigInt::zero()) {
            return Err(Error::Pole {
                denominator: a.denom().to_string(),
                at: format!("{}", self.s),
            });
        }
        Ok(self.laurent(a.numer()) / den)
    }
}

pub fn to_f64(x: &BigFloat) -> f64 {
    x.to_f64().value()
}

impl QScalar {
    /// Value at `s = q_val^(1/4)` with `precision`-bit arithmetic, rounded
    /// to the nearest `f64`.
    pub fn eval_float(&self, q_val: f64, precision: usize) -> Result<f64> {
        let ctx = FloatContext::new(q_val, precision)?;
        Ok(to_f64(&ctx.eval(self)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_examples() {
        assert_eq!(QScalar::q().eval_float(0.25, 128).unwrap(), 0.25);
        assert_eq!(QScalar::s_pow(2).eval_float(0.25, 128).unwrap(), 0.5);
        let a = (QScalar::one() - QScalar::q()).pow(2).unwrap() / (QScalar::from_int(4) * QScalar::s_pow(2));
        assert_eq!(a.eval_float(0.25, 128).unwrap(), 0.28125);
    }

    #[test]
    fn q_outside_unit_interval_is_rejected() {
        for bad in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(QScalar::q().eval_float(bad, 64).is_err());
        }
    }

    #[test]
    fn big_coefficients_convert() {
        let big = BigInt::from(3u8).pow(100);
        let a = QScalar::from_bigint(big.clone());
        let expect = big.to_f64().unwrap();
        let got = a.eval_float(0.5, 200).unwrap();
        assert!(((got - expect) / expect).abs() < 1e-15);
    }
}
