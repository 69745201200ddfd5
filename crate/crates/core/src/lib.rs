//! Exact computer algebra for the Laurent polynomials `M_l(u)` attached to
//! `H = t + kΛ(H)`, with independent routes that certify their negative
//! powers of `u` are odd.
//!
//! * [`exact`]: rationals, `Q[u, u⁻¹]`, `Q[k]`, and `Q[u, u⁻¹][X, X⁻¹]`.
//! * [`series`]: truncated power series over any of those rings.
//! * [`solver`]: `H(t, k)`, the branch series `Z(u, y)`, and the `M_l` checks.
//! * [`branchpoint`]: the `S`/`G` change of variables around the branch point.
//! * [`lagrange`]: the closed form for `Z(u, y)^r` built from `P_{m,n}(u)`.
//! * [`oracle`]: brute-force tree enumeration as ground truth.

pub mod branchpoint;
pub mod error;
pub mod exact;
pub mod lagrange;
pub mod oracle;
pub mod series;
pub mod solver;
pub mod verdict;

pub use error::{Error, Result};
pub use exact::{Coeff, KPoly, LaurentPoly, Rational, XLaurent};
pub use series::{PowerTable, Series, Var};
pub use verdict::Verdict;
