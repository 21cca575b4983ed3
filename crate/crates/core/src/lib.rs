//! Exact Askey-Wilson operator calculus around the Rogers q-Hermite
//! polynomials: the scalar field Q(q^(1/4)), polynomials in x = cos(theta)
//! with the divided-difference operator `D_q`, the q-Hermite and `Psi_n`
//! families with their generating functions, and a finite replay of the
//! characterization of q-Hermite as the only orthogonal `D_q`-Appell set.

pub mod characterize;
pub mod error;
pub mod families;
pub mod opcore;
pub mod ring;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use ring::Ring;
pub use scalar::{LaurentPoly, QScalar};
