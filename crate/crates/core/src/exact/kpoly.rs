//! Dense polynomials in `k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::rational::{format_rational, Rational};
use super::ring::Coeff;

/// `coeffs[i]` is the coefficient of `k^i`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct KPoly {
    coeffs: Vec<Rational>,
}

impl KPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `k`.
    pub fn k() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Multiplies by `k^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Drops every term of degree above `deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        Self::new(self.coeffs.iter().take(deg + 1).cloned().collect())
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>() })
    }
}

impl fmt::Display for KPoly {
    /// Ascending powers: `2*k - 10*k^2 + 15*k^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "k".into(),
                _ => format!("k^{i}"),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", format_rational(&mag))?,
                (_, true) => f.write_str(&var)?,
                _ => write!(f, "{}*{}", format_rational(&mag), var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPoly({self})")
    }
}

impl<'a> Add<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn add(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn sub(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn mul(self, rhs: &KPoly) -> KPoly {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPoly::new(out)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        KPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for KPoly {
    type Output = KPoly;
    fn add(self, rhs: KPoly) -> KPoly {
        &self + &rhs
    }
}

impl Sub for KPoly {
    type Output = KPoly;
    fn sub(self, rhs: KPoly) -> KPoly {
        &self - &rhs
    }
}

impl Mul for KPoly {
    type Output = KPoly;
    fn mul(self, rhs: KPoly) -> KPoly {
        &self * &rhs
    }
}

impl Zero for KPoly {
    fn zero() -> Self {
        KPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for KPoly {
    fn one() -> Self {
        KPoly::constant(Rational::one())
    }
}

impl Coeff for KPoly {
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
        KPoly::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        KPoly::scale(self, r)
    }
    /// Only nonzero constants are units.
    fn unit_inverse(&self) -> Option<Self> {
        (self.coeffs.len() == 1).then(|| KPoly::constant(self.coeffs[0].recip()))
    }
    fn to_json(&self) -> Value {
        KPoly::to_json(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Rational::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j] += x * y;
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn monomial_shift() {
        let a = KPoly::from_ints(&[0, -1, 3]);
        assert_eq!(&a * &KPoly::k(), KPoly::from_ints(&[0, 0, -1, 3]));
        assert_eq!(a.shift(1), KPoly::from_ints(&[0, 0, -1, 3]));
    }

    #[test]
    fn identity_and_degree() {
        let a = KPoly::from_ints(&[0, 2, -10, 15]);
        assert_eq!(&a + &KPoly::zero(), a);
        assert_eq!(a.degree(), Some(3));
        assert_eq!(KPoly::zero().degree(), None);
        assert!((&a - &a).is_zero());
        assert_eq!(a.to_string(), "2*k - 10*k^2 + 15*k^3");
    }

    #[test]
    fn exp_preset_t4_assembly() {
        // k * [t^4] Λ(H) for Λ = e^z - z - 1, using H ≡ t + k t²/2 + (k + 3k²) t³/6:
        // [t^4](H²/2 + H³/6 + H⁴/24) = (k+3k²)/6 + k²/8 + k/4 + 1/24, times 4! gives
        // 1 + 10k + 15k² before the outer factor k.
        let h2 = KPoly::k().scale(&rat(1, 2));
        let h3 = KPoly::from_ints(&[0, 1, 3]).scale(&rat(1, 6));
        let sq = (&h3.scale(&rat(2, 1)) + &(&h2 * &h2)).scale(&rat(1, 2));
        let cube = h2.scale(&rat(3, 6));
        let fourth = KPoly::constant(rat(1, 24));
        let inner = &(&sq + &cube) + &fourth;
        let coeff = (&KPoly::k() * &inner).scale(&rat(24, 1));
        assert_eq!(coeff, KPoly::from_ints(&[0, 1, 10, 15]));
    }

    fn arb_kpoly() -> impl Strategy<Value = KPoly> {
        prop::collection::vec((-9i64..9, 1i64..6), 0..6)
            .prop_map(|v| KPoly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn product_degree_adds(a in arb_kpoly(), b in arb_kpoly()) {
            let p = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(p.degree(), Some(da + db)),
                _ => prop_assert!(p.is_zero()),
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_kpoly(), b in arb_kpoly(), n in -12i64..12, d in 1i64..7) {
            let x = rat(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            let mut acc = a.clone();
            acc.add_product(&a, &b);
            prop_assert_eq!(acc, &a + &(&a * &b));
        }
    }
}
