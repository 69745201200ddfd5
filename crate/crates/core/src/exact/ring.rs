use std::fmt::Debug;

use num_traits::{One, Zero};
use serde_json::Value;

use super::rational::{format_rational, Rational};

/// Coefficient ring of a truncated series.
///
/// Every ring used here is a `Q`-algebra, so `scale` by a rational is always
/// available. `unit_inverse` returns `None` for non-units.
pub trait Coeff: Clone + PartialEq + Debug + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn unit_inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_ref(&a.mul_ref(b));
    }
}

impl Coeff for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}
