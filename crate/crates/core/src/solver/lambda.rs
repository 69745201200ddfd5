use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::series::{Series, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `(1+z) log(1+z) - z`
    Gls,
    /// `e^z - z - 1`
    Exp,
    /// `z² / (1 - z)`
    Geom,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Gls => "gls",
            Preset::Exp => "exp",
            Preset::Geom => "geom",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "gls" => Some(Preset::Gls),
            "exp" => Some(Preset::Exp),
            "geom" => Some(Preset::Geom),
            _ => None,
        }
    }
}

/// `Λ(z) = λ₂z² + λ₃z³ + ⋯` with `λ₂ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LambdaSpec {
    Preset(Preset),
    /// `λ₂, λ₃, …`; coefficients past the end are zero.
    Explicit(Vec<Rational>),
}

impl LambdaSpec {
    pub fn gls() -> Self {
        LambdaSpec::Preset(Preset::Gls)
    }

    pub fn exp() -> Self {
        LambdaSpec::Preset(Preset::Exp)
    }

    pub fn geom() -> Self {
        LambdaSpec::Preset(Preset::Geom)
    }

    pub fn explicit(coeffs: Vec<Rational>) -> Result<Self> {
        match coeffs.first() {
            Some(l2) if !l2.is_zero() => Ok(LambdaSpec::Explicit(coeffs)),
            _ => Err(Error::ZeroLambda2),
        }
    }

    /// `λ_j`; zero for `j < 2`.
    pub fn lambda(&self, j: usize) -> Rational {
        if j < 2 {
            return Rational::zero();
        }
        match self {
            LambdaSpec::Preset(Preset::Gls) => {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                Rational::new(sign.into(), ((j * (j - 1)) as i64).into())
            }
            LambdaSpec::Preset(Preset::Exp) => Rational::new(1.into(), factorial(j as u64)),
            LambdaSpec::Preset(Preset::Geom) => Rational::one(),
            LambdaSpec::Explicit(c) => c.get(j - 2).cloned().unwrap_or_else(Rational::zero),
        }
    }

    pub fn lambda2(&self) -> Rational {
        self.lambda(2)
    }

    /// `Λ(z)` through `z^order`.
    pub fn series(&self, order: usize) -> Series<Rational> {
        Series::from_fn(Var::Z, order, |j| self.lambda(j))
    }

    /// `Φ(z) = Λ(z) / (λ₂ z²)`, i.e. `2Λ̂(z)/z²` for the rescaled `Λ̂ = Λ/(2λ₂)`
    /// whose quadratic coefficient is `½`. Keeps `φ₁..φ_len`.
    pub fn phi(&self, len: usize) -> PhiSpec {
        let l2 = self.lambda2();
        PhiSpec { coeffs: (1..=len).map(|i| self.lambda(i + 2) / &l2).collect() }
    }
}

impl fmt::Display for LambdaSpec {
    /// Round-trips through the command-line syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Preset(p) => f.write_str(p.name()),
            LambdaSpec::Explicit(c) => {
                let parts: Vec<String> = c.iter().map(|r| r.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// `Φ(z) = 1 + φ₁z + φ₂z² + ⋯`; coefficients past the end are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    coeffs: Vec<Rational>,
}

impl PhiSpec {
    /// From `φ₁, φ₂, …`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    /// `φ_i`, with `φ₀ = 1`.
    pub fn phi(&self, i: usize) -> Rational {
        if i == 0 {
            return Rational::one();
        }
        self.coeffs.get(i - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn series(&self, order: usize) -> Series<Rational> {
        Series::from_fn(Var::Z, order, |i| self.phi(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn preset_coefficients() {
        let g = LambdaSpec::gls();
        assert_eq!((2..=4).map(|j| g.lambda(j)).collect::<Vec<_>>(), vec![rat(1, 2), rat(-1, 6), rat(1, 12)]);
        let e = LambdaSpec::exp();
        assert_eq!(e.lambda(4), rat(1, 24));
        assert_eq!(LambdaSpec::geom().lambda(7), int(1));
        assert_eq!(g.lambda(1), int(0));
    }

    #[test]
    fn phi_normalization() {
        // gls: Φ = 2Λ/z² = 1 - z/3 + z²/6 - ...
        let phi = LambdaSpec::gls().phi(3);
        assert_eq!(phi.phi(0), int(1));
        assert_eq!(phi.phi(1), rat(-1, 3));
        assert_eq!(phi.phi(2), rat(1, 6));
        // geom has λ₂ = 1, so φ_i = λ_{i+2} = 1
        assert_eq!(LambdaSpec::geom().phi(4).phi(4), int(1));
        let ex = LambdaSpec::explicit(vec![int(3), int(6)]).unwrap();
        assert_eq!(ex.phi(2).phi(1), int(2));
        assert_eq!(ex.phi(2).phi(2), int(0));
    }

    #[test]
    fn zero_lambda2_is_rejected() {
        assert_eq!(LambdaSpec::explicit(vec![int(0), int(1)]), Err(Error::ZeroLambda2));
        assert_eq!(LambdaSpec::explicit(vec![]), Err(Error::ZeroLambda2));
    }

    #[test]
    fn display_syntax() {
        assert_eq!(LambdaSpec::exp().to_string(), "exp");
        let ex = LambdaSpec::explicit(vec![rat(1, 2), rat(-1, 6), rat(1, 12)]).unwrap();
        assert_eq!(ex.to_string(), "[1/2, -1/6, 1/12]");
    }
}
