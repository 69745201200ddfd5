//! The two power-series solutions of `F²Φ(F) - 2yF + (1-u²)y² = 0` with
//! coefficients in `Q[u, u⁻¹]`.

use num_traits::Zero;

use super::lambda::PhiSpec;
use crate::error::Result;
use crate::exact::{int, Coeff, LaurentPoly, Rational};
use crate::series::{PowerTable, Series, Var};

/// Which root of `(f₁ - 1)² = u²` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `f₁ = 1 - u`, the solution `Z(u, y)`.
    Plus,
    /// `f₁ = 1 + u`, the solution `Z(-u, y)`.
    Minus,
}

impl Branch {
    fn first_coeff(self) -> LaurentPoly {
        let sign = match self {
            Branch::Plus => -1,
            Branch::Minus => 1,
        };
        LaurentPoly::from_terms([(0, int(1)), (1, int(sign))])
    }
}

/// `1 - u²`
fn one_minus_u2() -> LaurentPoly {
    LaurentPoly::from_terms([(0, int(1)), (2, int(-1))])
}

/// Solves for `F = f₁y + f₂y² + ⋯` modulo `y^(order+1)`.
///
/// For `n ≥ 2`, `f_n` enters `[y^{n+1}]` of the equation only through
/// `2(f₁ - 1) f_n`, and `f₁ - 1 = ∓u` is a unit, so each step is an exact
/// division by the monomial `∓2u`.
pub fn solve_z(phi: &PhiSpec, order: usize, branch: Branch) -> Series<LaurentPoly> {
    let f1 = branch.first_coeff();
    let pivot = (&f1 - &LaurentPoly::one()).scale(&int(2));
    let pivot_inv = pivot.unit_inverse().expect("f₁ - 1 is a monomial");
    let phis: Vec<Rational> = (0..order).map(|j| phi.phi(j)).collect();

    let mut table = PowerTable::<LaurentPoly>::new();
    if order >= 1 {
        table.push(f1);
    }
    for n in 2..=order {
        // [y^{n+1}] F² without the two f₁ f_n terms
        let mut rest = LaurentPoly::zero();
        let f = table.coeffs();
        for i in 2..n {
            rest.add_product(&f[i], &f[n + 1 - i]);
        }
        // [y^{n+1}] φ_j F^{j+2} for j ≥ 1 uses f₁..f_{n-j} only
        for (j, phi_j) in phis.iter().enumerate().take(n).skip(1) {
            if phi_j.is_zero() {
                continue;
            }
            rest = &rest + &table.coeff(j + 2, n + 1).scale(phi_j);
        }
        table.push((-&rest).mul_ref(&pivot_inv));
    }
    Series::new(Var::Y, order, table.into_coeffs())
}

/// `F²Φ(F) - 2yF + (1-u²)y²` modulo `y^(F.order+1)`.
pub fn residual(f: &Series<LaurentPoly>, phi: &PhiSpec) -> Result<Series<LaurentPoly>> {
    let n = f.order();
    let phi_of_f = Series::compose(&phi.series(n).lift(), f)?;
    let lhs = f.mul(f)?.mul(&phi_of_f)?;
    let two_y_f = f.shift_up(1).scale(&int(2));
    let quad = Series::new(Var::Y, n, vec![LaurentPoly::zero(), LaurentPoly::zero(), one_minus_u2()]);
    lhs.sub(&two_y_f)?.add(&quad)
}

/// `[y^l] Z` with `φ_i` read off `phi`; convenience for tests and tables.
pub fn z_coeff(phi: &PhiSpec, l: usize) -> LaurentPoly {
    solve_z(phi, l, Branch::Plus).coeff(l)
}

/// Applies `u ↦ -u` to every coefficient.
pub fn negate_u(f: &Series<LaurentPoly>) -> Series<LaurentPoly> {
    f.map(LaurentPoly::substitute_neg_u)
}
