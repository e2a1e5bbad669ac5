//! `M = F ⋊_λ G`, its exponential map and the group square `M ⋉ M`.

use num_rational::BigRational;
use num_traits::Zero;

use super::{FunctionSpaceBasis, LieAlgebraSpec};
use crate::error::{Error, Result};
use crate::poly::PolyVector;
use crate::{RatPoly, RatPolyVector};

type Q = BigRational;

/// A group element `(φ, g)` of `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectElement {
    pub phi: RatPoly,
    pub x: Vec<Q>,
}

/// A Lie algebra element `(φ, X)` of `m = F ⋊ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectVector {
    pub phi: RatPoly,
    pub x: Vec<Q>,
}

fn check_member(alg: &LieAlgebraSpec, f: &FunctionSpaceBasis, phi: &RatPoly, x: &[Q]) -> Result<()> {
    if x.len() != alg.dim() {
        return Err(Error::Dimension { expected: alg.dim(), got: x.len() });
    }
    if phi.nvars() != alg.dim() {
        return Err(Error::Dimension { expected: alg.dim(), got: phi.nvars() });
    }
    if !f.contains(phi) {
        return Err(Error::NotInSpace);
    }
    Ok(())
}

impl SemidirectElement {
    pub fn new(alg: &LieAlgebraSpec, f: &FunctionSpaceBasis, phi: RatPoly, x: Vec<Q>) -> Result<Self> {
        check_member(alg, f, &phi, &x)?;
        Ok(Self { phi, x })
    }

    pub fn identity(dim: usize) -> Self {
        Self { phi: RatPoly::zero(dim), x: vec![Q::zero(); dim] }
    }

    /// `(φ₁, g₁)(φ₂, g₂) = (φ₁ + λ_{g₁}φ₂, g₁∗g₂)`.
    pub fn mul(&self, alg: &LieAlgebraSpec, other: &Self) -> Result<Self> {
        let phi = &self.phi + &alg.lambda_poly(&self.x, &other.phi)?;
        Ok(Self { phi, x: alg.bch_product(&self.x, &other.x)? })
    }

    pub fn inverse(&self, alg: &LieAlgebraSpec) -> Result<Self> {
        let x = alg.group_inverse(&self.x);
        let phi = -&alg.lambda_poly(&x, &self.phi)?;
        Ok(Self { phi, x })
    }
}

impl SemidirectVector {
    pub fn new(alg: &LieAlgebraSpec, f: &FunctionSpaceBasis, phi: RatPoly, x: Vec<Q>) -> Result<Self> {
        check_member(alg, f, &phi, &x)?;
        Ok(Self { phi, x })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { phi: &self.phi + &other.phi, x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { phi: -&self.phi, x: self.x.iter().map(|a| -a.clone()).collect() }
    }
}

/// `∫₀¹ λ_{uX} φ du`, with `φ` and `X` in a shared variable space.
pub fn exp_phase(alg: &LieAlgebraSpec, phi: &RatPoly, x: &RatPolyVector) -> RatPoly {
    let n = phi.nvars();
    let u = RatPoly::var(n + 1, n);
    let ux = x.extend(n + 1).mul_poly(&u);
    alg.left_translate(&ux, &phi.extend(n + 1)).integrate_last().expect("integration variable")
}

/// `exp_M(φ, X) = (∫₀¹ λ_{uX} φ du, X)`.
pub fn exp_semidirect(alg: &LieAlgebraSpec, f: &FunctionSpaceBasis, v: &SemidirectVector) -> Result<SemidirectElement> {
    check_member(alg, f, &v.phi, &v.x)?;
    let d = alg.dim();
    let phi = exp_phase(alg, &v.phi, &PolyVector::constants(d, &v.x));
    Ok(SemidirectElement { phi, x: v.x.clone() })
}

/// An element `(m₁, m₂)` of `M ⋉ M`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSquareElement {
    pub first: SemidirectElement,
    pub second: SemidirectElement,
}

impl GroupSquareElement {
    pub fn identity(dim: usize) -> Self {
        Self { first: SemidirectElement::identity(dim), second: SemidirectElement::identity(dim) }
    }

    /// `(m₁, m₂)(n₁, n₂) = (m₁n₁, n₁⁻¹m₂n₁n₂)`.
    pub fn mul(&self, alg: &LieAlgebraSpec, other: &Self) -> Result<Self> {
        let first = self.first.mul(alg, &other.first)?;
        let second = other
            .first
            .inverse(alg)?
            .mul(alg, &self.second)?
            .mul(alg, &other.first)?
            .mul(alg, &other.second)?;
        Ok(Self { first, second })
    }

    /// `μ(m₁, m₂) = (m₁m₂, m₁)`, valued in the direct product `M × M`.
    pub fn mu(&self, alg: &LieAlgebraSpec) -> Result<(SemidirectElement, SemidirectElement)> {
        Ok((self.first.mul(alg, &self.second)?, self.first.clone()))
    }

    pub fn mu_inverse(alg: &LieAlgebraSpec, a: &SemidirectElement, b: &SemidirectElement) -> Result<Self> {
        Ok(Self { first: b.clone(), second: b.inverse(alg)?.mul(alg, a)? })
    }
}

/// `exp_{M⋉M}(X, Y) = (exp X, exp(−X) exp(X+Y))`.
pub fn exp_square(
    alg: &LieAlgebraSpec,
    f: &FunctionSpaceBasis,
    x: &SemidirectVector,
    y: &SemidirectVector,
) -> Result<GroupSquareElement> {
    let first = exp_semidirect(alg, f, x)?;
    let second = exp_semidirect(alg, f, &x.neg())?.mul(alg, &exp_semidirect(alg, f, &x.add(y))?)?;
    Ok(GroupSquareElement { first, second })
}
