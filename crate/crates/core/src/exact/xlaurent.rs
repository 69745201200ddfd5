//! Laurent polynomials in an auxiliary variable `X` with coefficients in
//! `Q[u, u⁻¹]`.

use std::collections::{btree_map::Entry, BTreeMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::rational::Rational;
use super::ring::Coeff;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct XLaurent {
    terms: BTreeMap<i64, LaurentPoly>,
}

impl XLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: LaurentPoly, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, LaurentPoly)>>(iter: I) -> Self {
        let mut x = Self::zero();
        for (e, c) in iter {
            x.add_term(e, &c);
        }
        x
    }

    pub fn add_term(&mut self, exp: i64, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> LaurentPoly {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Sub-sum over negative `X` exponents.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.range(..0).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    /// Keeps exponents in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        Self {
            terms: self.terms.range(lo..=hi).map(|(&e, c)| (e, c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(&e, c)| json!([e, c.to_json()])).collect();
        json!({ "terms": terms })
    }
}

impl fmt::Debug for XLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("XLaurent(")?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*X^{e}")?;
        }
        f.write_str(")")
    }
}

impl<'a> Add<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn add(self, rhs: &XLaurent) -> XLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn sub(self, rhs: &XLaurent) -> XLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a XLaurent> for &'a XLaurent {
    type Output = XLaurent;
    fn mul(self, rhs: &XLaurent) -> XLaurent {
        let mut acc: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                let e = ea.checked_add(eb).expect("X exponent overflow");
                acc.entry(e).or_default().add_product(ca, cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        XLaurent { terms: acc }
    }
}

impl Neg for &XLaurent {
    type Output = XLaurent;
    fn neg(self) -> XLaurent {
        XLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Add for XLaurent {
    type Output = XLaurent;
    fn add(self, rhs: XLaurent) -> XLaurent {
        &self + &rhs
    }
}

impl Mul for XLaurent {
    type Output = XLaurent;
    fn mul(self, rhs: XLaurent) -> XLaurent {
        &self * &rhs
    }
}

impl Zero for XLaurent {
    fn zero() -> Self {
        XLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for XLaurent {
    fn one() -> Self {
        XLaurent::monomial(LaurentPoly::one(), 0)
    }
}

impl Coeff for XLaurent {
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
        XLaurent::monomial(LaurentPoly::constant(r.clone()), 0)
    }
    fn scale(&self, r: &Rational) -> Self {
        XLaurent::from_terms(self.terms.iter().map(|(&e, c)| (e, c.scale(r))))
    }
    /// Units are `c u^i X^j` with a rational `c ≠ 0`.
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        Some(XLaurent::monomial(c.unit_inverse()?, -e))
    }
    fn to_json(&self) -> Value {
        XLaurent::to_json(self)
    }
}
