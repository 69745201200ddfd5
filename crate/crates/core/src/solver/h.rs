//! The power-series solution of `H = t + kΛ(H)` with coefficients in `Q[k]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::lambda::LambdaSpec;
use crate::error::{Error, Result};
use crate::exact::{factorial, Coeff, KPoly, Rational};
use crate::series::{PowerTable, Series, Var};

fn check_args(spec: &LambdaSpec, order: usize) -> Result<()> {
    if spec.lambda2().is_zero() {
        return Err(Error::ZeroLambda2);
    }
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    Ok(())
}

/// One pass of `H ← t + kΛ(H)` at the order of `h`.
fn fixed_point_step(lambda: &Series<KPoly>, h: &Series<KPoly>) -> Result<Series<KPoly>> {
    let composed = Series::compose(lambda, h)?;
    let mut next = composed.map(|c| c.shift(1));
    next.set_coeff(1, next.coeff(1).add_ref(&KPoly::constant(Rational::from_integer(1.into()))));
    Ok(next)
}

/// Solves `H = t + kΛ(H)` modulo `t^(order+1)` by fixed-point iteration.
///
/// Since `Λ(z) = O(z²)`, a pass fixes one more coefficient, so each pass runs
/// one order higher than the last; a final full-order pass must reproduce
/// its input.
pub fn solve_lambda(spec: &LambdaSpec, order: usize) -> Result<Series<KPoly>> {
    check_args(spec, order)?;
    let lambda: Series<KPoly> = spec.series(order).lift();
    let mut h = Series::<KPoly>::variable(Var::T, 1);
    while h.order() < order {
        let widened = Series::new(Var::T, h.order() + 1, h.coeffs().to_vec());
        h = fixed_point_step(&lambda, &widened)?;
    }
    let again = fixed_point_step(&lambda, &h)?;
    if again != h {
        return Err(Error::InvalidArgument("fixed-point iteration did not converge".into()));
    }
    Ok(h)
}

/// Same solution by undetermined coefficients: `h_1 = 1` and
/// `h_n = k Σ_{p=2}^{n} λ_p [t^n] H^p`, which only involves `h_1..h_{n-1}`.
pub fn solve_lambda_undetermined(spec: &LambdaSpec, order: usize) -> Result<Series<KPoly>> {
    check_args(spec, order)?;
    let mut table = PowerTable::<KPoly>::new();
    table.push(KPoly::constant(Rational::from_integer(1.into())));
    for n in 2..=order {
        let mut s = KPoly::zero();
        for p in 2..=n {
            let l = spec.lambda(p);
            if !l.is_zero() {
                s = &s + &table.coeff(p, n).scale(&l);
            }
        }
        table.push(s.shift(1));
    }
    Ok(Series::new(Var::T, order, table.into_coeffs()))
}

/// `H(t, 1)`.
pub fn h_at_k1(spec: &LambdaSpec, order: usize) -> Result<Series<Rational>> {
    let one = Rational::from_integer(1.into());
    Ok(solve_lambda(spec, order)?.map(|c| c.eval(&one)))
}

/// `χ(t, 1)` for `Λ = (1+z)log(1+z) - z`.
pub fn chi_at_k1(order: usize) -> Result<Series<Rational>> {
    h_at_k1(&LambdaSpec::gls(), order)
}

/// `μ_l(n) = n! [k^{n-l} t^n] H` for `1 ≤ l ≤ L`, `l ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuTable {
    pub l_max: usize,
    pub order: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl MuTable {
    pub fn from_solution(h: &Series<KPoly>, l_max: usize) -> Self {
        let order = h.order();
        let mut entries = BTreeMap::new();
        for l in 1..=l_max {
            for n in l..=order {
                let c = h.coeff(n).coeff(n - l) * Rational::from_integer(factorial(n as u64));
                entries.insert((l, n), c);
            }
        }
        Self { l_max, order, entries }
    }

    /// `μ_l(n)`; zero when `n < l`.
    pub fn mu(&self, l: usize, n: usize) -> Rational {
        self.entries.get(&(l, n)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `μ_l(n) / n!`, the coefficient of `k^{n-l} t^n`.
    pub fn mu_over_factorial(&self, l: usize, n: usize) -> Rational {
        self.mu(l, n) / Rational::from_integer(factorial(n as u64))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(l, n), mu)| {
                json!({
                    "l": l,
                    "n": n,
                    "mu": mu.to_string(),
                    "mu_over_factorial": self.mu_over_factorial(l, n).to_string(),
                })
            })
            .collect();
        json!({ "l_max": self.l_max, "order": self.order, "entries": rows })
    }
}

pub fn mu_table(spec: &LambdaSpec, l_max: usize, order: usize) -> Result<MuTable> {
    Ok(MuTable::from_solution(&solve_lambda(spec, order)?, l_max))
}

/// `n! [t^n] H` as a polynomial in `k`.
pub fn egf_row(h: &Series<KPoly>, n: usize) -> KPoly {
    h.coeff(n).scale(&Rational::from_integer(factorial(n as u64)))
}

/// `n! [t^n] f` for a rational series.
pub fn egf_coeff(f: &Series<Rational>, n: usize) -> BigInt {
    let c = f.coeff(n) * Rational::from_integer(factorial(n as u64));
    assert!(c.is_integer(), "non-integral exponential coefficient");
    c.to_integer()
}
