//! Sparse Laurent polynomials in `u` over the rationals.

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::rational::{format_rational, parse_rational, Rational};
use super::ring::Coeff;
use crate::error::{Error, Result};

/// Finite sum `Σ c_i u^i` with `i ∈ ℤ`. Zero coefficients are never stored,
/// so the zero polynomial has an empty term map and equality is structural.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent exponent overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (add_exp(e, k), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `u ↦ -u`: each `c u^i` becomes `(-1)^i c u^i`.
    pub fn substitute_neg_u(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// Exponents `i < 0` with `i` even and a nonzero coefficient.
    pub fn negative_even_exponents(&self) -> BTreeSet<i64> {
        self.terms.keys().copied().filter(|&e| e < 0 && e % 2 == 0).collect()
    }

    /// `(a(u) + a(-u)) / 2`, the even-exponent part.
    pub fn even_part(&self) -> Self {
        (self + &self.substitute_neg_u()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// `(a(u) - a(-u)) / 2`, the odd-exponent part.
    pub fn odd_part(&self) -> Self {
        (self - &self.substitute_neg_u()).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Evaluates at `u = x`. Panics when `x = 0` and a negative exponent is present.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&e, c)| {
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc + c * p
        })
    }

    /// Exact quotient by `1 - u` for a polynomial with no negative exponents;
    /// `None` when the remainder `p(1)` is nonzero or a negative exponent is present.
    pub fn div_one_minus_u(&self) -> Option<Self> {
        let Some(max) = self.max_exponent() else {
            return Some(Self::zero());
        };
        if self.min_exponent().unwrap() < 0 {
            return None;
        }
        // Synthetic division by (u - 1), highest degree first.
        let mut q = Self::zero();
        let mut carry = Rational::zero();
        for e in (0..=max).rev() {
            carry += self.coeff(e);
            if e == 0 {
                break;
            }
            q.add_term(e - 1, &carry);
        }
        carry.is_zero().then(|| -q)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&e, c)| json!([e, format_rational(c)]))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("Laurent polynomial JSON: {what}"));
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut p = Self::zero();
        for t in terms {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term is not a pair"))?;
            let e = pair[0].as_i64().ok_or_else(|| bad("exponent is not an integer"))?;
            let c = pair[1].as_str().ok_or_else(|| bad("coefficient is not a string"))?;
            p.add_term(e, &parse_rational(c)?);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    /// Human-readable form, ascending exponents: `-2*u^-1 + 6 - 6*u + 2*u^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{e}"),
            };
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (_, true) => f.write_str(&var)?,
                (_, false) => write!(f, "{}*{}", format_rational(&mag), var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.accumulate_product(self, rhs);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl LaurentPoly {
    fn accumulate_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (&ea, ca) in &a.terms {
            for (&eb, cb) in &b.terms {
                let e = add_exp(ea, eb);
                match self.terms.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(ca * cb);
                    }
                    Entry::Occupied(mut o) => *o.get_mut() += ca * cb,
                }
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Coeff for LaurentPoly {
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
        LaurentPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        LaurentPoly::scale(self, r)
    }
    /// Only monomials `c u^i` are units.
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        Some(LaurentPoly::monomial(c.recip(), -e))
    }
    fn to_json(&self) -> Value {
        LaurentPoly::to_json(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.accumulate_product(a, b);
    }
}
