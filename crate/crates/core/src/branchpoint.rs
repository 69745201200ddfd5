//! Change of variables around the branch point.
//!
//! With `t = ½(1 - u²)`, the auxiliary series `S(u, y)` is defined by
//! `1 + y + ½(1-u²)y² = e^y (1 - S²/2)` and `S = yu + ⋯`. Writing
//! `1 + ξ = e^y e^{-G}` turns the equation for `ξ` into
//! `e^{-G}(1+G) = 1 - S²/2`, so `G` is a power series in `S` alone and `ξ`
//! inherits the `u`-parity of the powers of `S`.

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::Result;
use crate::exact::{factorial, int, rat, LaurentPoly, Rational};
use crate::series::{Series, Var};
use crate::verdict::Verdict;

/// `T = (e^y - 1 - y - y²/2) / y³`, i.e. `[y^j] T = 1/(j+3)!`.
pub fn compute_t(order: usize) -> Series<Rational> {
    Series::from_fn(Var::Y, order, |j| Rational::new(1.into(), factorial(j as u64 + 3)))
}

fn exp_scaled(order: usize, c: Rational) -> Series<Rational> {
    Series::exp(&Series::<Rational>::variable(Var::Y, order).scale(&c)).expect("zero constant term")
}

/// `S = e^{-y/2} · y · u · √(1 + (2y/u²) T)`.
pub fn compute_s(order: usize) -> Series<LaurentPoly> {
    let two_over_u2 = LaurentPoly::monomial(int(2), -2);
    let arg = compute_t(order).lift::<LaurentPoly>().shift_up(1).mul_coeff(&two_over_u2);
    let root = Series::sqrt1p(&arg).expect("zero constant term");
    let damped = root.mul(&exp_scaled(order, rat(-1, 2)).lift()).expect("same variable");
    damped.shift_up(1).mul_coeff(&LaurentPoly::u())
}

/// `1 + y + ½(1-u²)y²`
fn quadratic_lhs(order: usize) -> Series<LaurentPoly> {
    let half_1mu2 = LaurentPoly::from_terms([(0, rat(1, 2)), (2, rat(-1, 2))]);
    Series::new(Var::Y, order, vec![LaurentPoly::one(), LaurentPoly::one(), half_1mu2])
}

/// `1 + y + ½(1-u²)y² - e^y(1 - S²/2)`.
pub fn sdef_residual(s: &Series<LaurentPoly>) -> Series<LaurentPoly> {
    let n = s.order();
    let one = Series::<LaurentPoly>::one(Var::Y, n);
    let inner = one.sub(&s.mul(s).unwrap().scale(&rat(1, 2))).unwrap();
    let rhs = exp_scaled(n, int(1)).lift().mul(&inner).unwrap();
    quadratic_lhs(n).sub(&rhs).unwrap()
}

/// Checks `S^n` for `0 ≤ n ≤ n_max`: no negative `u` powers when `n` is even,
/// only odd negative powers when `n` is odd.
pub fn s_power_parity(order: usize, n_max: usize) -> Vec<Verdict> {
    let s = compute_s(order);
    let mut power = Series::<LaurentPoly>::one(Var::Y, order);
    (0..=n_max)
        .map(|n| {
            if n > 0 {
                power = power.mul(&s).unwrap();
            }
            let mut v = Verdict::new("s_power_parity", json!({ "n": n, "order": order }));
            for (j, c) in power.coeffs().iter().enumerate() {
                let bad = if n % 2 == 0 {
                    c.min_exponent().filter(|&e| e < 0)
                } else {
                    c.negative_even_exponents().into_iter().next()
                };
                if let Some(e) = bad {
                    v.fail(json!({ "y": j, "exponent": e }));
                }
            }
            v
        })
        .collect()
}

/// `S(G) = √(2 - 2e^{-G}(1+G)) = G - G²/3 + ⋯`, in the variable `G`.
pub fn s_of_g(order: usize) -> Series<Rational> {
    let n = order + 2;
    let g = Series::<Rational>::variable(Var::G, n);
    let e = Series::exp(&g.neg()).unwrap();
    let b = Series::one(Var::G, n)
        .sub(&e.mul(&Series::one(Var::G, n).add(&g).unwrap()).unwrap())
        .unwrap()
        .scale(&int(2));
    // b = G² (1 + O(G))
    let reduced = b.shift_down(2).expect("b vanishes to second order");
    let q = reduced.sub(&Series::one(Var::G, order)).unwrap();
    Series::sqrt1p(&q).unwrap().shift_up(1)
}

/// `G(S)`, the compositional inverse of [`s_of_g`], in the variable `S`.
pub fn g_from_s(order: usize) -> Result<Series<Rational>> {
    Ok(s_of_g(order).revert()?.with_var(Var::S))
}

/// `ξ = e^y e^{-G(S(u,y))} - 1`.
pub fn xi_first_proof(order: usize) -> Result<Series<LaurentPoly>> {
    let s = compute_s(order);
    let g = g_from_s(order)?.lift::<LaurentPoly>();
    let g_of_y = Series::compose(&g, &s)?;
    let e = Series::exp(&g_of_y.neg())?;
    let xi = e.mul(&exp_scaled(order, int(1)).lift())?;
    xi.sub(&Series::one(Var::Y, order))
}

/// `(1+ξ)log(1+ξ) - (1+y)ξ + ½(1-u²)y²`.
pub fn xi_funceq_residual(xi: &Series<LaurentPoly>) -> Result<Series<LaurentPoly>> {
    let n = xi.order();
    let one = Series::<LaurentPoly>::one(Var::Y, n);
    let one_plus = one.add(xi)?;
    let lhs = one_plus.mul(&Series::log1p(xi)?)?;
    let one_plus_y = one.add(&Series::variable(Var::Y, n))?;
    let rhs = one_plus_y.mul(xi)?;
    let quad = Series::new(Var::Y, n, vec![LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::from_terms([(0, rat(1, 2)), (2, rat(-1, 2))])]);
    lhs.sub(&rhs)?.add(&quad)
}

/// `(v - 1)e^v + 1`, as a series in `v`.
fn lambert_outer(order: usize) -> Series<Rational> {
    Series::from_fn(Var::Z, order, |n| {
        if n < 2 {
            Rational::zero()
        } else {
            Rational::new((n as i64 - 1).into(), factorial(n as u64))
        }
    })
}

/// The branch series `w(S)` with `w e^{w+1} = -(1 - 2S²)` and `w(0) = -1`.
///
/// With `w = -1 + v` the identity reads `(v-1)e^v + 1 = 2S²`, whose left side
/// is `v²/2 + O(v³)`. Taking `v₁ = 2`, `v_n` first appears in `[S^{n+1}]`
/// as `v₁ v_n`, which fixes it order by order.
pub fn lambert_branch_series(order: usize) -> Series<Rational> {
    let outer = lambert_outer(order + 1);
    let mut v = Series::<Rational>::zero(Var::S, order + 1);
    if order >= 1 {
        v.set_coeff(1, int(2));
    }
    for n in 2..=order {
        let f = Series::compose(&outer, &v).unwrap();
        let c = f.coeff(n + 1);
        v.set_coeff(n, -c / int(2));
    }
    let mut w = v.truncate(order);
    w.set_coeff(0, int(-1));
    w
}

/// `w e^{w+1} + (1 - 2S²)`.
pub fn lambert_residual(w: &Series<Rational>) -> Series<Rational> {
    let n = w.order();
    let mut v = w.clone();
    v.set_coeff(0, Rational::zero());
    let lhs = w.mul(&Series::exp(&v).unwrap()).unwrap();
    let rhs = Series::new(w.var(), n, vec![Rational::one(), Rational::zero(), int(-2)]);
    lhs.add(&rhs).unwrap()
}

/// First five branch-series coefficients, as printed alongside the expansion
/// of `W(-(1-2S²)e^{-1})`.
pub fn lambert_expected() -> [Rational; 5] {
    [int(-1), int(2), rat(-4, 3), rat(11, 9), rat(-172, 135)]
}

pub fn lambert_branch_check(order: usize) -> Verdict {
    let w = lambert_branch_series(order.max(4));
    let mut v = Verdict::new("lambert_branch", json!({ "order": order }));
    for (i, e) in lambert_expected().iter().enumerate() {
        if &w.coeff(i) != e {
            v.fail(json!({ "S": i, "expected": e.to_string(), "got": w.coeff(i).to_string() }));
        }
    }
    if let Some(j) = lambert_residual(&w).valuation() {
        v.fail(json!({ "residual_at": j }));
    }
    v
}

/// Every stage of the first-proof pipeline at one order.
#[derive(Clone, Debug)]
pub struct SPipeline {
    pub order: usize,
    pub t: Series<Rational>,
    pub s: Series<LaurentPoly>,
    pub g_of_s: Series<Rational>,
    pub xi: Series<LaurentPoly>,
}

impl SPipeline {
    pub fn build(order: usize) -> Result<Self> {
        let s = compute_s(order);
        debug_assert_eq!(s.coeff(1), LaurentPoly::u());
        Ok(Self {
            order,
            t: compute_t(order),
            s,
            g_of_s: g_from_s(order)?,
            xi: xi_first_proof(order)?,
        })
    }

    /// Residuals of the defining identity for `S`, of the functional
    /// equation for `ξ`, and of `S(G(S)) = S`, plus the parity of `S^n`.
    pub fn verdicts(&self, n_max: usize) -> Result<Vec<Verdict>> {
        let n = self.order;
        let mut out = Vec::new();
        let sdef = sdef_residual(&self.s);
        out.push(Verdict::new("sdef_residual", json!({ "order": n })).with_result(sdef.valuation().map(|j| json!({ "y": j }))));
        let fun = xi_funceq_residual(&self.xi)?;
        out.push(Verdict::new("xi_funceq_residual", json!({ "order": n })).with_result(fun.valuation().map(|j| json!({ "y": j }))));
        let s_g = s_of_g(n).with_var(Var::S);
        let round = Series::compose(&s_g, &self.g_of_s)?;
        let back = Series::compose(&self.g_of_s, &s_g)?;
        let id = Series::variable(Var::S, n);
        let rt = if round != id {
            Some(json!({ "direction": "S(G(S))" }))
        } else if back != id {
            Some(json!({ "direction": "G(S(G))" }))
        } else {
            None
        };
        out.push(Verdict::new("sg_round_trip", json!({ "order": n })).with_result(rt));
        out.extend(s_power_parity(n, n_max));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{m_l_polys, residual, solve_z, Branch, LambdaSpec};

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d))))
    }

    #[test]
    fn t_coefficients() {
        let t = compute_t(6);
        assert_eq!(t.coeff(0), rat(1, 6));
        assert_eq!(t.coeff(2), rat(1, 120));
        // e^y - 1 - y - y²/2 - y³T = 0
        let e = Series::exp_var(Var::Y, 9);
        let lhs = e.sub(&Series::new(Var::Y, 9, vec![int(1), int(1), rat(1, 2)])).unwrap();
        let cubic = compute_t(9).shift_up(3);
        assert!(lhs.sub(&cubic).unwrap().is_zero());
    }

    #[test]
    fn s_low_coefficients() {
        let s = compute_s(6);
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(1), LaurentPoly::u());
        assert_eq!(s.coeff(2), lp(&[(-1, 1, 6), (1, -1, 2)]));
        assert!(sdef_residual(&compute_s(12)).is_zero());
    }

    #[test]
    fn s_squared_is_polynomial_in_u() {
        // S² = e^{-y} y² (u² + 2yT)
        let n = 10;
        let s = compute_s(n);
        let inner = Series::new(Var::Y, n, vec![LaurentPoly::monomial(int(1), 2)])
            .add(&compute_t(n).lift().shift_up(1).scale(&int(2)))
            .unwrap();
        let expected = exp_scaled(n, int(-1)).lift().mul(&inner).unwrap().shift_up(2);
        assert_eq!(s.mul(&s).unwrap(), expected);
        assert!(s_power_parity(10, 3).iter().all(|v| v.pass));
    }

    #[test]
    fn s_and_g_series() {
        let sg = s_of_g(6);
        assert_eq!(sg.coeff(1), int(1));
        assert_eq!(sg.coeff(2), rat(-1, 3));
        let g = g_from_s(6).unwrap();
        assert_eq!(g.coeff(1), int(1));
        assert_eq!(g.coeff(2), rat(1, 3));
        let id = Series::compose(&sg.with_var(Var::S), &g).unwrap();
        assert_eq!(id, Series::variable(Var::S, 6));
    }

    #[test]
    fn xi_reproduces_m_table() {
        let xi = xi_first_proof(8).unwrap();
        assert_eq!(xi.coeff(1), lp(&[(0, 1, 1), (1, -1, 1)]));
        assert_eq!(xi.coeff(3), lp(&[(-3, 1, 72), (-1, -1, 8), (0, 2, 9), (1, -1, 8), (3, 1, 72)]));
        let m = m_l_polys(&LambdaSpec::gls(), 8, 8);
        for l in 1..=8 {
            assert_eq!(xi.coeff(l), m[l - 1], "l = {l}");
        }
    }

    #[test]
    fn functional_equation_residuals() {
        let xi = xi_first_proof(10).unwrap();
        assert!(xi_funceq_residual(&xi).unwrap().is_zero());
        let z = solve_z(&LambdaSpec::gls().phi(10), 10, Branch::Plus);
        assert!(xi_funceq_residual(&z).unwrap().is_zero());
        assert!(residual(&xi, &LambdaSpec::gls().phi(10)).unwrap().is_zero());
        let mut bad = xi.clone();
        bad.set_coeff(2, &bad.coeff(2) + &LaurentPoly::u());
        assert!(!xi_funceq_residual(&bad).unwrap().is_zero());
    }

    #[test]
    fn lambert_series() {
        let w = lambert_branch_series(10);
        for (i, e) in lambert_expected().iter().enumerate() {
            assert_eq!(&w.coeff(i), e);
        }
        assert!(lambert_residual(&w).is_zero());
        assert!(lambert_branch_check(10).pass);
    }

    #[test]
    fn lambert_series_is_g_at_minus_two_s() {
        // -(1-2σ²)e^{-1} = -(1+y+ty²)e^{-1-y} means S = 2σ, and W + 1 = -G,
        // with the opposite sign of the square root: w(σ) = -1 - G(-2σ).
        let n = 10;
        let g = g_from_s(n).unwrap();
        let arg = Series::<Rational>::variable(Var::S, n).scale(&int(-2));
        let mut expected = Series::compose(&g, &arg).unwrap().neg();
        expected.set_coeff(0, int(-1));
        assert_eq!(lambert_branch_series(n), expected);
    }

    #[test]
    fn pipeline_verdicts() {
        let p = SPipeline::build(8).unwrap();
        assert!(p.verdicts(6).unwrap().iter().all(|v| v.pass));
    }
}
