//! Exact arithmetic in Q(s) with the convention q = s^4, so every power
//! q^(k/4) is a Laurent monomial in s.

mod float;
mod laurent;
mod modp;
mod qscalar;
mod text;
mod zpoly;

pub use float::{to_f64, BigFloat, FloatContext};
pub use laurent::LaurentPoly;
pub use qscalar::QScalar;
