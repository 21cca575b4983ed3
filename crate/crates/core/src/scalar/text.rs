//! Text form of scalars: `(<num in s>)/(<den in s>)`, terms in ascending
//! powers of `s`, e.g. `(1 - s^4)/(2)` or `(s^-2 - 2*s^2 + s^6)/(4)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::qscalar::QScalar;
use crate::error::Error;

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_power(f, e)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_power(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        f.write_str("s")
    } else {
        write!(f, "s^{e}")
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numer(), self.denom())
    }
}

impl FromStr for QScalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let t = text.trim();
        if let Some((num, den)) = split_fraction(t) {
            let n = parse_laurent(num)?;
            let d = parse_laurent(den)?;
            return n.checked_div(&d);
        }
        parse_laurent(t)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits `(A)/(B)` at the top-level slash.
fn split_fraction(t: &str) -> Option<(&str, &str)> {
    if !t.starts_with('(') || !t.ends_with(')') {
        return None;
    }
    let mut depth = 0i32;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let rest = t[i + 1..].trim_start();
                    let rest = rest.strip_prefix('/')?.trim();
                    let den = rest.strip_prefix('(')?.strip_suffix(')')?;
                    return Some((&t[1..i], den));
                }
            }
            _ => {}
        }
    }
    None
}

/// Parses a sum of terms `c`, `c*s^e`, `s^e`, `c*s` with rational `c`.
fn parse_laurent(text: &str) -> Result<QScalar, Error> {
    let bad = |why: &str| Error::Parse(format!("{why} in {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let bytes = compact.as_bytes();
    // term boundaries: a sign not preceded by '^'
    let mut starts = vec![0];
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            starts.push(i);
        }
    }
    starts.push(bytes.len());
    let mut total = QScalar::zero();
    for w in starts.windows(2) {
        let mut term = &compact[w[0]..w[1]];
        let mut sign = BigInt::one();
        if let Some(rest) = term.strip_prefix('-') {
            sign = -sign;
            term = rest;
        } else if let Some(rest) = term.strip_prefix('+') {
            term = rest;
        }
        if term.is_empty() {
            return Err(bad("empty term"));
        }
        let (coef, exp) = parse_term(term).ok_or_else(|| bad(&format!("malformed term {term:?}")))?;
        let coef = BigRational::from_integer(sign) * coef;
        total = total + QScalar::from_rational(&coef) * QScalar::s_pow(exp);
    }
    Ok(total)
}

fn parse_term(term: &str) -> Option<(BigRational, i64)> {
    let (coef_part, var_part) = match term.find('s') {
        Some(i) => {
            let c = term[..i].strip_suffix('*').unwrap_or(&term[..i]);
            (c, Some(&term[i + 1..]))
        }
        None => (term, None),
    };
    let coef = if coef_part.is_empty() {
        BigRational::one()
    } else if let Some((n, d)) = coef_part.split_once('/') {
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        BigRational::new(n.parse().ok()?, d)
    } else {
        BigRational::from_integer(coef_part.parse().ok()?)
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
    };
    Some((coef, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_ascending_powers() {
        let a = QScalar::one() - QScalar::q();
        assert_eq!(a.to_string(), "(1 - s^4)/(1)");
        let b = (QScalar::one() - QScalar::q()).pow(2).unwrap() / (QScalar::from_int(4) * QScalar::s_pow(2));
        assert_eq!(b.to_string(), "(s^-2 - 2*s^2 + s^6)/(4)");
        assert_eq!(QScalar::zero().to_string(), "(0)/(1)");
        assert_eq!(QScalar::s_pow(1).to_string(), "(s)/(1)");
    }

    #[test]
    fn parses_loose_forms() {
        let a: QScalar = "(1 - s^4)/(s^2)".parse().unwrap();
        assert_eq!(a, (QScalar::one() - QScalar::q()) / QScalar::s_pow(2));
        let b: QScalar = "1/2*s^-2 + 3".parse().unwrap();
        assert_eq!(b, QScalar::from_ratio(1, 2) * QScalar::s_pow(-2) + QScalar::from_int(3));
        let c: QScalar = "-s".parse().unwrap();
        assert_eq!(c, -QScalar::s_pow(1));
        assert!("(1)/(0)".parse::<QScalar>().is_err());
        assert!("1 + + s".parse::<QScalar>().is_err());
        assert!("2*t".parse::<QScalar>().is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(e in -6i64..6, c in prop::collection::vec(-9i64..=9, 1..5), d in prop::collection::vec(-9i64..=9, 1..4)) {
            let n = LaurentPoly::from_i64s(e, &c);
            let den = LaurentPoly::from_i64s(0, &d);
            if let Ok(x) = QScalar::from_parts(n, den) {
                prop_assert_eq!(x.to_string().parse::<QScalar>().unwrap(), x);
            }
        }
    }
}
