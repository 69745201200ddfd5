//! `M_l(u)` and the property checks built on `Z(u, y)`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::h::{solve_lambda, MuTable};
use super::lambda::{LambdaSpec, PhiSpec};
use super::z::{negate_u, solve_z, Branch};
use crate::error::Result;
use crate::exact::{binomial_rational, int, rat, LaurentPoly, Rational, XLaurent};
use crate::series::{Series, Var};
use crate::verdict::Verdict;

/// `M_1..M_L` as Laurent polynomials in `u = √(1 - 4λ₂t)`.
///
/// Writing `k = k̂/(2λ₂)` turns `H = t + kΛ(H)` into `H = t + k̂Λ̂(H)` with
/// `Λ̂ = Λ/(2λ₂)`, whose quadratic coefficient is `½`. Then
/// `[k^{n-l}t^n] H = (2λ₂)^{n-l} [k̂^{n-l}t^n] Ĥ`, and summing over `n` gives
/// `M_l(u) = (2λ₂)^{-l} M̂_l(u)` where `M̂_l = [y^l] Z` is computed with
/// `Φ = 2Λ̂/z² = Λ/(λ₂z²)`.
pub fn m_l_polys(spec: &LambdaSpec, l_max: usize, order: usize) -> Vec<LaurentPoly> {
    let order = order.max(l_max);
    let z = solve_z(&spec.phi(order), order, Branch::Plus);
    let inv = (spec.lambda2() * int(2)).recip();
    let mut scale = Rational::one();
    (1..=l_max)
        .map(|l| {
            scale *= &inv;
            z.coeff(l).scale(&scale)
        })
        .collect()
}

/// Expands a Laurent polynomial in `u = (1 - 4λ₂t)^{1/2}` as a series in `t`,
/// using the binomial series for every (possibly negative) power `u^i`.
pub fn expand_in_t(poly: &LaurentPoly, lambda2: &Rational, order: usize) -> Series<Rational> {
    let x = -(lambda2 * int(4));
    let mut out = vec![Rational::zero(); order + 1];
    for (e, c) in poly.terms() {
        let half = rat(e, 2);
        let mut xp = Rational::one();
        for (n, slot) in out.iter_mut().enumerate() {
            if n > 0 {
                xp *= &x;
            }
            *slot += c * binomial_rational(&half, n as u64) * &xp;
        }
    }
    Series::new(Var::T, order, out)
}

/// For each `l ≤ L`, re-expands `M_l` in `t` and compares with
/// `μ_l(n)/n!` taken directly from `H(t, k)`, for `0 ≤ n ≤ N`.
pub fn consistency_check(spec: &LambdaSpec, l_max: usize, order: usize) -> Result<Vec<Verdict>> {
    let h = solve_lambda(spec, order)?;
    let mu = MuTable::from_solution(&h, l_max);
    let polys = m_l_polys(spec, l_max, order);
    let l2 = spec.lambda2();
    Ok(polys
        .iter()
        .enumerate()
        .map(|(idx, m)| {
            let l = idx + 1;
            let mut v = Verdict::new("consistency", json!({ "lambda": spec.to_string(), "l": l, "order": order }));
            let series = expand_in_t(m, &l2, order);
            for n in 0..=order {
                let expected = mu.mu_over_factorial(l, n);
                if series.coeff(n) != expected {
                    v.fail(json!({ "n": n, "from_M": series.coeff(n).to_string(), "from_H": expected.to_string() }));
                    break;
                }
            }
            v
        })
        .collect())
}

/// First `(l, exponent)` with a nonzero even negative power of `u`.
pub fn parity_witness(polys: &[LaurentPoly]) -> Option<Value> {
    polys.iter().enumerate().find_map(|(idx, p)| {
        p.negative_even_exponents()
            .into_iter()
            .next()
            .map(|e| json!({ "l": idx + 1, "exponent": e, "coeff": p.coeff(e).to_string() }))
    })
}

/// No `M_l`, `l ≤ L`, has an even negative power of `u`.
pub fn parity_check(spec: &LambdaSpec, l_max: usize, order: usize) -> Verdict {
    let polys = m_l_polys(spec, l_max, order);
    Verdict::new("parity", json!({ "lambda": spec.to_string(), "l_max": l_max, "order": order }))
        .with_result(parity_witness(&polys))
}

/// For each `r ≤ R`: `Z(u,y)^r + Z(-u,y)^r` has no negative power of `u`,
/// and `Z(u,y)^r` has no even negative power of `u`.
pub fn power_sum_check(phi: &PhiSpec, r_max: usize, order: usize) -> Vec<Verdict> {
    let plus = solve_z(phi, order, Branch::Plus);
    let minus = negate_u(&plus);
    let mut pp = Series::one(Var::Y, order);
    let mut pm = Series::one(Var::Y, order);
    (1..=r_max)
        .map(|r| {
            pp = pp.mul(&plus).expect("same variable");
            pm = pm.mul(&minus).expect("same variable");
            let sum = pp.add(&pm).expect("same variable");
            let mut v = Verdict::new("power_sum", json!({ "r": r, "order": order }));
            for (n, c) in sum.coeffs().iter().enumerate() {
                if let Some(e) = c.min_exponent().filter(|&e| e < 0) {
                    v.fail(json!({ "y": n, "exponent": e, "in": "Z(u)^r + Z(-u)^r" }));
                }
            }
            for (n, c) in pp.coeffs().iter().enumerate() {
                if let Some(&e) = c.negative_even_exponents().iter().next() {
                    v.fail(json!({ "y": n, "exponent": e, "in": "Z(u)^r" }));
                }
            }
            v
        })
        .collect()
}

/// Outcome of expanding `T = Ψ (1 - Z/X)⁻¹ (1 - Z'/X)⁻¹` in `R((X))[[y]]`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `T` as a series in `y` over `Q[u,u⁻¹][X,X⁻¹]`.
    pub t: Series<XLaurent>,
    /// Trusted `X`-exponent range `lo..=hi`.
    pub window: (i64, i64),
    pub verdict: Verdict,
}

/// `Σ_{n ≤ order} (Z/X)^n` over `y`.
fn geometric_over_x(z: &Series<LaurentPoly>) -> Series<XLaurent> {
    let order = z.order();
    let zx = z.map(|c| XLaurent::monomial(c.clone(), -1));
    let mut term = Series::<XLaurent>::one(Var::Y, order);
    let mut sum = term.clone();
    for _ in 1..=order {
        term = term.mul(&zx).expect("same variable");
        sum = sum.add(&term).expect("same variable");
    }
    sum
}

/// Expands `T` with `Φ` truncated at `X^{d_x}` and `y` at order `n_y`, and
/// checks inside the window `-(n_y+2) ≤ m ≤ d_x - n_y`:
/// no negative `X` powers, `[X⁰y⁰] T = 1`, and `[y⁰] T = Φ(X)`.
pub fn verify_factorization(phi: &PhiSpec, n_y: usize, d_x: usize) -> Factorization {
    let z_plus = solve_z(phi, n_y, Branch::Plus);
    let z_minus = negate_u(&z_plus);

    let phi_x = XLaurent::from_terms((0..=d_x).map(|j| (j as i64, LaurentPoly::constant(phi.phi(j)))));
    let psi = Series::new(
        Var::Y,
        n_y,
        vec![
            phi_x.clone(),
            XLaurent::monomial(LaurentPoly::constant(int(-2)), -1),
            XLaurent::monomial(LaurentPoly::from_terms([(0, int(1)), (2, int(-1))]), -2),
        ],
    );
    let t = psi
        .mul(&geometric_over_x(&z_plus))
        .and_then(|s| s.mul(&geometric_over_x(&z_minus)))
        .expect("same variable");

    let lo = -(n_y as i64 + 2);
    let hi = d_x as i64 - n_y as i64;
    let mut v = Verdict::new("factorization", json!({ "n_y": n_y, "d_x": d_x, "window": [lo, hi] }));
    for (j, c) in t.coeffs().iter().enumerate() {
        let neg = c.window(lo, hi).negative_part();
        if let Some((m, coeff)) = neg.terms().next() {
            v.fail(json!({ "y": j, "X": m, "coeff": coeff.to_json() }));
        };
    }
    if t.coeff(0).coeff(0) != LaurentPoly::one() {
        v.fail(json!({ "y": 0, "X": 0, "coeff": t.coeff(0).coeff(0).to_json() }));
    }
    if t.coeff(0).window(lo, hi) != phi_x.window(lo, hi) {
        v.fail(json!({ "y": 0, "expected": "Phi(X)", "got": t.coeff(0).to_json() }));
    }
    Factorization { t, window: (lo, hi), verdict: v }
}

/// `Z(-√(1-4λ₂t), y)` does not give a power series solution of `H = t + kΛ(H)`:
/// some `[y^m]` has a nonzero `t^n` coefficient with `n < m`, i.e. a negative
/// power of `k`. Returns the first such `(m, n)`.
pub fn negative_branch_witness(spec: &LambdaSpec, order: usize) -> Option<(usize, usize)> {
    let polys = m_l_polys(spec, order, order);
    let l2 = spec.lambda2();
    polys.iter().enumerate().find_map(|(idx, m)| {
        let m_l = idx + 1;
        let s = expand_in_t(&m.substitute_neg_u(), &l2, m_l);
        (0..m_l).find(|&n| !s.coeff(n).is_zero()).map(|n| (m_l, n))
    })
}
