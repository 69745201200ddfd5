//! Truncated formal power series over a generic coefficient ring.
//!
//! A `Series` of order `N` stores `c_0..=c_N` and is valid modulo `var^(N+1)`.
//! Binary ring operations return the minimum of the input orders; the order
//! of every other operation is documented on the method.

use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binomial_rational, int, rat, Coeff, Rational};

/// Formal variable tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Y,
    S,
    G,
    Z,
}

impl Var {
    pub fn as_str(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Y => "y",
            Var::S => "S",
            Var::G => "G",
            Var::Z => "z",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Series<R> {
    var: Var,
    coeffs: Vec<R>,
}

impl<R: Coeff> Series<R> {
    /// Pads with zeros or truncates `coeffs` to length `order + 1`.
    pub fn new(var: Var, order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { var, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> R) -> Self {
        Self { var, coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn constant(var: Var, order: usize, c: R) -> Self {
        Self::new(var, order, vec![c])
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, order, R::one())
    }

    /// The series `var` itself.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::new(var, order, vec![R::zero(), R::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// `[var^n]`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> R {
        self.coeffs.get(n).cloned().unwrap_or_else(R::zero)
    }

    pub fn set_coeff(&mut self, n: usize, c: R) {
        self.coeffs[n] = c;
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.var, order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<S: Coeff>(&self, f: impl FnMut(&R) -> S) -> Series<S> {
        Series { var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.var, other.var))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::from_fn(self.var, n, |i| self.coeffs[i].add_ref(&other.coeffs[i])))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::from_fn(self.var, n, |i| self.coeffs[i].sub_ref(&other.coeffs[i])))
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg_ref)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self { var: self.var, coeffs: cauchy(&self.coeffs, &other.coeffs, n) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var, self.order());
        for _ in 0..e {
            acc = Self { var: self.var, coeffs: cauchy(&acc.coeffs, &self.coeffs, self.order()) };
        }
        acc
    }

    /// Multiplies by `var^k`; order unchanged.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(self.var, n, |i| if i < k { R::zero() } else { self.coeffs[i - k].clone() })
    }

    /// Exact division by `var^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidArgument(format!("cannot divide order-{} series by {}^{k}", self.order(), self.var)));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self { var: self.var, coeffs: self.coeffs[k..].to_vec() })
    }

    /// `outer(inner)`. `inner` must have zero constant term.
    ///
    /// With `v` the valuation of `inner`, the result has order
    /// `min(inner.order, (outer.order + 1) v - 1)`, and carries `inner`'s variable.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let Some(v) = inner.valuation() else {
            return Ok(Self::constant(inner.var, inner.order(), outer.coeffs[0].clone()));
        };
        let order = inner.order().min((outer.order() + 1) * v - 1);
        let mut acc = vec![R::zero(); order + 1];
        let mut power = vec![R::zero(); order + 1];
        power[0] = R::one();
        for (p, c) in outer.coeffs.iter().enumerate() {
            if p * v > order {
                break;
            }
            if p > 0 {
                power = cauchy(&power, &inner.coeffs, order);
            }
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&power) {
                a.add_product(c, x);
            }
        }
        Ok(Self { var: inner.var, coeffs: acc })
    }

    /// Compositional inverse, solved order by order: with `b_1 = 1/a_1`,
    /// each `b_n` is fixed by the vanishing of `[var^n] a(b) - [n = 1]`.
    ///
    /// Requires `a_0 = 0` and `a_1` a unit. Same order and variable as `self`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let n = self.order();
        let lead = self.coeff(1);
        let inv = lead.unit_inverse().ok_or_else(|| Error::NotInvertible(format!("{lead:?}")))?;
        let mut table = PowerTable::new();
        if n >= 1 {
            table.push(inv.clone());
        }
        for m in 2..=n {
            let mut s = R::zero();
            for p in 2..=m {
                let a = &self.coeffs[p];
                if !a.is_zero() {
                    s.add_product(a, &table.coeff(p, m));
                }
            }
            table.push(s.neg_ref().mul_ref(&inv));
        }
        let out = Self::new(self.var, n, table.into_coeffs());
        debug_assert!({
            let id = Self::variable(self.var, n);
            Self::compose(self, &out).map(|c| c == id).unwrap_or(false)
                && Self::compose(&out, self).map(|c| c == id).unwrap_or(false)
        });
        Ok(out)
    }

    /// `log(1 + a)` for `a` with zero constant term; same order.
    pub fn log1p(a: &Self) -> Result<Self> {
        if !a.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        // (1 + a) L' = a'
        let n = a.order();
        let mut l: Vec<R> = vec![R::zero(); n + 1];
        for m in 1..=n {
            let mut s = a.coeffs[m].scale(&int(m as i64));
            for i in 1..m {
                let t = l[i].mul_ref(&a.coeffs[m - i]).scale(&int(i as i64));
                s = s.sub_ref(&t);
            }
            l[m] = s.scale(&rat(1, m as i64));
        }
        Ok(Self { var: a.var, coeffs: l })
    }

    /// `exp(a)` for `a` with zero constant term; same order.
    pub fn exp(a: &Self) -> Result<Self> {
        if !a.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        // E' = a' E
        let n = a.order();
        let mut e: Vec<R> = vec![R::zero(); n + 1];
        e[0] = R::one();
        for m in 1..=n {
            let mut s = R::zero();
            for i in 1..=m {
                if !a.coeffs[i].is_zero() {
                    s = s.add_ref(&a.coeffs[i].mul_ref(&e[m - i]).scale(&int(i as i64)));
                }
            }
            e[m] = s.scale(&rat(1, m as i64));
        }
        Ok(Self { var: a.var, coeffs: e })
    }

    /// `(1 + a)^{1/2}` with constant term 1, as the binomial series composed with `a`.
    pub fn sqrt1p(a: &Self) -> Result<Self> {
        let half = rat(1, 2);
        let binom = Self::from_fn(Var::Z, a.order(), |j| R::from_rational(&binomial_rational(&half, j as u64)));
        Self::compose(&binom, a)
    }

    /// `a / b`.
    ///
    /// If `b_0` is a unit the quotient has order `min(a.order, b.order)`.
    /// Otherwise `b = var^v b'` with `b'_0` a unit and `a` must vanish below
    /// `var^v`; the quotient then has order `min(a.order, b.order) - v`.
    pub fn div(a: &Self, b: &Self) -> Result<Self> {
        a.check_var(b)?;
        let v = b.valuation().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let lead = &b.coeffs[v];
        let inv = lead.unit_inverse().ok_or_else(|| Error::NotInvertible(format!("{lead:?}")))?;
        let n = a.order().min(b.order());
        let num = a.truncate(n).shift_down(v)?;
        let den = b.truncate(n).shift_down(v)?;
        let order = num.order();
        let mut q: Vec<R> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut s = num.coeffs[m].clone();
            for i in 1..=m {
                if !den.coeffs[i].is_zero() {
                    s = s.sub_ref(&den.coeffs[i].mul_ref(&q[m - i]));
                }
            }
            q.push(s.mul_ref(&inv));
        }
        Ok(Self { var: a.var, coeffs: q })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": self.var.as_str(),
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(R::to_json).collect::<Vec<_>>(),
        })
    }
}

impl Series<Rational> {
    /// Embeds a rational series into a series over another coefficient ring.
    pub fn lift<R: Coeff>(&self) -> Series<R> {
        Series { var: self.var, coeffs: self.coeffs.iter().map(R::from_rational).collect() }
    }

    /// `e^var` to the given order.
    pub fn exp_var(var: Var, order: usize) -> Self {
        let mut f = Rational::one();
        Self::from_fn(var, order, |n| {
            if n > 0 {
                f /= int(n as i64);
            }
            f.clone()
        })
    }
}

/// Truncated Cauchy product of coefficient slices, skipping zero entries.
fn cauchy<R: Coeff>(a: &[R], b: &[R], order: usize) -> Vec<R> {
    let mut out = vec![R::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j].add_product(x, y);
            }
        }
    }
    out
}

/// Incrementally grown table of `[var^m] F^p` for a series `F` with zero
/// constant term whose coefficients become known one at a time.
///
/// `[var^m] F^p` depends only on `f_1..f_{m-p+1}`, so it can be read as soon
/// as those coefficients have been pushed.
#[derive(Clone, Debug)]
pub struct PowerTable<R> {
    f: Vec<R>,
    rows: Vec<Vec<R>>,
}

impl<R: Coeff> Default for PowerTable<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coeff> PowerTable<R> {
    pub fn new() -> Self {
        Self { f: vec![R::zero()], rows: Vec::new() }
    }

    /// Appends the next coefficient `f_n` where `n = self.known() + 1`.
    pub fn push(&mut self, c: R) {
        self.f.push(c);
    }

    /// Highest index whose coefficient is known.
    pub fn known(&self) -> usize {
        self.f.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.f
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.f
    }

    /// `[var^m] F^p`. Panics if `f_{m-p+1}` is not yet known.
    pub fn coeff(&mut self, p: usize, m: usize) -> R {
        if p == 0 {
            return if m == 0 { R::one() } else { R::zero() };
        }
        if m < p {
            return R::zero();
        }
        assert!(m - p < self.known(), "power table queried beyond known coefficients");
        if p == 1 {
            return self.f[m].clone();
        }
        self.fill(p, m);
        self.rows[p - 2][m].clone()
    }

    fn fill(&mut self, p: usize, m: usize) {
        while self.rows.len() < p - 1 {
            self.rows.push(Vec::new());
        }
        let have = self.rows[p - 2].len();
        if have > m {
            return;
        }
        if p > 2 {
            self.fill(p - 1, m - 1);
        }
        for mm in have..=m {
            let mut s = R::zero();
            if mm >= p {
                for i in 1..=(mm - p + 1) {
                    let lower = if p == 2 { &self.f[mm - i] } else { &self.rows[p - 3][mm - i] };
                    s.add_product(&self.f[i], lower);
                }
            }
            self.rows[p - 2].push(s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, LaurentPoly};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn rs(var: Var, order: usize, c: &[(i64, i64)]) -> Series<Rational> {
        Series::new(var, order, c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn product_truncates() {
        let a = rs(Var::Y, 2, &[(1, 1), (1, 1)]);
        let b = rs(Var::Y, 2, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), rs(Var::Y, 2, &[(1, 1), (0, 1), (-1, 1)]));
        let c = rs(Var::T, 2, &[(0, 1), (1, 1), (1, 1)]);
        assert_eq!(c.mul(&c).unwrap(), rs(Var::T, 2, &[(0, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let a = Series::<Rational>::one(Var::Y, 3);
        let b = Series::<Rational>::one(Var::T, 3);
        assert_eq!(a.mul(&b), Err(Error::VarMismatch(Var::Y, Var::T)));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn composition_examples() {
        let n = 6;
        let y = Series::<Rational>::variable(Var::Y, n);
        let log = Series::log1p(&Series::variable(Var::Z, n)).unwrap();
        let composed = Series::compose(&log, &y).unwrap();
        assert_eq!(composed, Series::from_fn(Var::Y, n, |i| if i == 0 { Rational::zero() } else { rat(if i % 2 == 1 { 1 } else { -1 }, i as i64) }));

        let exp = Series::exp_var(Var::Z, n);
        let half = y.scale(&rat(-1, 2));
        let e = Series::compose(&exp, &half).unwrap();
        assert_eq!(e.coeff(0), int(1));
        assert_eq!(e.coeff(1), rat(-1, 2));
        assert_eq!(e.coeff(2), rat(1, 8));
        assert_eq!(e, Series::exp(&half).unwrap());

        assert_eq!(Series::compose(&log, &Series::one(Var::Y, n)), Err(Error::NonzeroConstant));
    }

    #[test]
    fn composition_order_follows_valuation() {
        let outer = rs(Var::Z, 2, &[(1, 1), (1, 1), (1, 1)]);
        let inner = rs(Var::Y, 10, &[(0, 1), (0, 1), (1, 1)]);
        // terms of outer beyond z^2 would only reach y^6
        assert_eq!(Series::compose(&outer, &inner).unwrap().order(), 5);
    }

    #[test]
    fn reversion_examples() {
        let y = Series::<Rational>::variable(Var::Y, 8);
        assert_eq!(y.revert().unwrap(), y);

        // brute-force order-by-order substitution oracle for y + y^2:
        // b = y + b2 y^2 + ...; solve [y^n](b + b^2) = 0 for n >= 2 by trying
        // b_n = -[y^n](b_prev + b_prev^2).
        let a = rs(Var::Y, 8, &[(0, 1), (1, 1), (1, 1)]);
        let mut b = y.clone();
        for n in 2..=8 {
            let ab = b.add(&b.mul(&b).unwrap()).unwrap();
            let fix = ab.coeff(n);
            b.set_coeff(n, -fix);
        }
        assert_eq!(a.revert().unwrap(), b);
        let expected = [0i64, 1, -1, 2, -5, 14, -42, 132, -429];
        assert_eq!(b, Series::new(Var::Y, 8, expected.iter().map(|&c| int(c)).collect()));

        let bad = rs(Var::Y, 4, &[(0, 1), (0, 1), (1, 1)]);
        assert!(matches!(bad.revert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn reversion_of_s_of_g() {
        // S(G) = G - G^2/3 + ...: ground truth from sqrt(2 - 2 e^{-G}(1+G))
        let s = rs(Var::G, 2, &[(0, 1), (1, 1), (-1, 3)]);
        let g = s.revert().unwrap();
        assert_eq!(g.coeff(1), int(1));
        assert_eq!(g.coeff(2), rat(1, 3));
    }

    #[test]
    fn transcendental_examples() {
        let n = 10;
        let t = Series::<Rational>::variable(Var::T, n);
        let s = Series::sqrt1p(&t.scale(&int(-2))).unwrap();
        // 1 - sqrt(1 - 2t) = sum (2n-3)!! t^n / n!
        for m in 1..=n {
            let dfact: i64 = (1..=(2 * m as i64 - 3)).step_by(2).product();
            let expected = -Rational::from_integer(dfact.into()) / Rational::from_integer(factorial(m as u64));
            assert_eq!(s.coeff(m), expected, "t^{m}");
        }
        let y = Series::<Rational>::variable(Var::Y, n);
        let round = Series::exp(&Series::log1p(&y).unwrap()).unwrap();
        assert_eq!(round, Series::one(Var::Y, n).add(&y).unwrap());
        assert!(Series::exp(&Series::<Rational>::one(Var::Y, 3)).is_err());
    }

    #[test]
    fn division() {
        let n = 8;
        let e = Series::exp_var(Var::Y, n + 3);
        let num = e.sub(&rs(Var::Y, n + 3, &[(1, 1), (1, 1), (1, 2)])).unwrap();
        let den = Series::<Rational>::variable(Var::Y, n + 3).pow(3);
        let t = Series::div(&num, &den).unwrap();
        assert_eq!(t.order(), n);
        for j in 0..=n {
            assert_eq!(t.coeff(j), Rational::new(1.into(), factorial(j as u64 + 3)));
        }
        assert_eq!(Series::div(&num, &Series::one(Var::Y, n + 3)).unwrap(), num);
        let odd = Series::<Rational>::one(Var::Y, 4);
        assert_eq!(Series::div(&odd, &den), Err(Error::NotDivisible));
        let lp = Series::<LaurentPoly>::constant(Var::Y, 3, LaurentPoly::from_terms([(0, int(1)), (1, int(-1))]));
        assert!(matches!(Series::div(&lp, &lp), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn power_table_matches_direct_powers() {
        let f = rs(Var::Y, 7, &[(0, 1), (2, 1), (-1, 3), (1, 5), (0, 1), (7, 2), (-3, 1), (1, 1)]);
        let mut table = PowerTable::new();
        for i in 1..=7 {
            table.push(f.coeff(i));
        }
        for p in 0..=7u32 {
            let direct = f.pow(p);
            for m in 0..=7 {
                assert_eq!(table.coeff(p as usize, m), direct.coeff(m), "p={p} m={m}");
            }
        }
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Series<Rational>> {
        prop::collection::vec((-6i64..6, 1i64..5), order + 1)
            .prop_map(move |v| Series::new(Var::Y, order, v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn arb_lp_series(order: usize) -> impl Strategy<Value = Series<LaurentPoly>> {
        prop::collection::vec(prop::collection::vec((-3i64..3, -4i64..4, 1i64..4), 0..3), order + 1).prop_map(move |v| {
            Series::new(
                Var::Y,
                order,
                v.into_iter()
                    .map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, n, d)| (e, rat(n, d)))))
                    .collect(),
            )
        })
    }

    fn without_constant<R: Coeff>(mut s: Series<R>) -> Series<R> {
        s.set_coeff(0, R::zero());
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn ring_axioms(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn reversion_round_trips(raw in arb_series(10), sign in any::<bool>()) {
            let mut a = without_constant(raw);
            a.set_coeff(1, int(if sign { 1 } else { -1 }));
            let b = a.revert().unwrap();
            let id = Series::variable(Var::Y, 10);
            prop_assert_eq!(Series::compose(&a, &b).unwrap(), id.clone());
            prop_assert_eq!(Series::compose(&b, &a).unwrap(), id);
        }

        #[test]
        fn inverse_pairs_over_rationals(raw in arb_series(12)) {
            let a = without_constant(raw);
            let one = Series::one(Var::Y, 12);
            prop_assert_eq!(Series::exp(&Series::log1p(&a).unwrap()).unwrap(), one.add(&a).unwrap());
            prop_assert_eq!(Series::log1p(&Series::exp(&a).unwrap().sub(&one).unwrap()).unwrap(), a.clone());
            let r = Series::sqrt1p(&a).unwrap();
            prop_assert_eq!(r.mul(&r).unwrap(), one.add(&a).unwrap());
        }

        #[test]
        fn inverse_pairs_over_laurent(raw in arb_lp_series(12)) {
            let a = without_constant(raw);
            let one = Series::one(Var::Y, 12);
            prop_assert_eq!(Series::exp(&Series::log1p(&a).unwrap()).unwrap(), one.add(&a).unwrap());
            let r = Series::sqrt1p(&a).unwrap();
            prop_assert_eq!(r.mul(&r).unwrap(), one.add(&a).unwrap());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_series(8), raw in arb_series(8)) {
            let mut b = raw;
            b.set_coeff(0, int(3));
            let q = Series::div(&a, &b).unwrap();
            prop_assert_eq!(q.mul(&b).unwrap(), a);
        }
    }
}
