//! Exact scalars and the small rings the series engine runs over.

pub mod kpoly;
pub mod laurent;
pub mod rational;
pub mod ring;
pub mod xlaurent;

pub use kpoly::KPoly;
pub use laurent::LaurentPoly;
pub use rational::{binomial, binomial_rational, factorial, int, multinomial, rat, Rational};
pub use ring::Coeff;
pub use xlaurent::XLaurent;
