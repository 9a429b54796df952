//! Exact arithmetic: rationals, coupling polynomials, polynomials in `x`,
//! localized polynomials and fraction-free linear algebra.

pub mod coeff;
pub mod linalg;
pub mod locpoly;
pub mod mono;
pub mod rat;
pub mod xpoly;

pub use coeff::{CoeffPoly, GExp, MAX_SYMBOLS};
pub use locpoly::{LocPoly, LocSpace};
pub use mono::{Mono, MAX_VARS};
pub use rat::Rat;
pub use xpoly::{poly_divide_exact, XPoly};
