//! Magnetic potentials and fields with polynomial coefficients, the phase
//! `τ_A` and the linear map `θ^A(X, ξ) = (ξ∘log + ⟨A, ι^R X⟩, X)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::nilpotent::LieAlgebraSpec;
use crate::poly::PolyVector;
use crate::{RatPoly, RatPolyVector};

type Q = BigRational;

/// A 1-form `A = Σ A_i dx_i` in exponential coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct MagneticPotential {
    components: Vec<RatPoly>,
}

impl MagneticPotential {
    pub fn new(components: Vec<RatPoly>) -> Result<Self> {
        let d = components.len();
        for c in &components {
            if c.nvars() != d {
                return Err(Error::Dimension { expected: d, got: c.nvars() });
            }
        }
        Ok(Self { components })
    }

    pub fn zero(dim: usize) -> Self {
        Self { components: vec![RatPoly::zero(dim); dim] }
    }

    /// Builds `A` from `(component, exponents, coefficient)` entries; the
    /// component index is zero-based.
    pub fn from_entries(dim: usize, entries: &[(usize, Vec<u32>, Q)]) -> Result<Self> {
        let mut comps = vec![RatPoly::zero(dim); dim];
        for (i, e, c) in entries {
            if *i >= dim {
                return Err(Error::Index { index: *i, len: dim });
            }
            if e.len() != dim {
                return Err(Error::Dimension { expected: dim, got: e.len() });
            }
            comps[*i] = &comps[*i] + &RatPoly::monomial(e.clone(), c.clone());
        }
        Ok(Self { components: comps })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { components: self.components.iter().map(|a| a.scale(c)).collect() }
    }
}

/// `B = dA` as the antisymmetric matrix `B_ij = ∂_i A_j − ∂_j A_i`.
impl std::fmt::Display for MagneticPotential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagneticField {
    components: Vec<Vec<RatPoly>>,
}

impl MagneticField {
    pub fn component(&self, i: usize, j: usize) -> &RatPoly {
        &self.components[i][j]
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|c| c.is_zero())
    }

    /// `∂_i B_jk + ∂_j B_ki + ∂_k B_ij = 0` for all triples.
    pub fn is_closed(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let s = &(&self.components[j][k].partial(i).unwrap() + &self.components[k][i].partial(j).unwrap())
                        + &self.components[i][j].partial(k).unwrap();
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn exterior_derivative(a: &MagneticPotential) -> MagneticField {
    let d = a.dim();
    let mut b = vec![vec![RatPoly::zero(d); d]; d];
    for i in 0..d {
        for j in 0..d {
            if i != j {
                b[i][j] = &a.components[j].partial(i).unwrap() - &a.components[i].partial(j).unwrap();
            }
        }
    }
    let field = MagneticField { components: b };
    debug_assert!(field.is_closed());
    field
}

/// `A + dχ`.
pub fn gauge_shift(a: &MagneticPotential, chi: &RatPoly) -> Result<MagneticPotential> {
    if chi.nvars() != a.dim() {
        return Err(Error::Dimension { expected: a.dim(), got: chi.nvars() });
    }
    let components = a
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| Ok(c + &chi.partial(i)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(MagneticPotential { components })
}

/// `⟨A, ι^R X⟩` with `X` given as polynomials in a shared variable space whose
/// first `dim` variables are the point.
pub fn pair_with_right_field_sym(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &RatPolyVector) -> RatPoly {
    let n = x.nvars();
    let field = alg.right_invariant_field_sym(x);
    let mut out = RatPoly::zero(n);
    for (ai, fi) in a.components.iter().zip(field.components()) {
        if !ai.is_zero() && !fi.is_zero() {
            out = &out + &(&ai.extend(n) * fi);
        }
    }
    out
}

pub fn pair_with_right_field(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &[Q]) -> Result<RatPoly> {
    check_dims(alg, a, x)?;
    Ok(pair_with_right_field_sym(alg, a, &PolyVector::constants(alg.dim(), x)))
}

/// Exponent of `τ_A(X, Y) = exp(i ∫₀¹ ⟨A, ι^R X⟩((−sX)∗Y) ds)`; `Y` is the
/// point variable block of the shared space.
pub fn tau_exponent_sym(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &RatPolyVector) -> RatPoly {
    let d = alg.dim();
    let n = x.nvars();
    let pairing = pair_with_right_field_sym(alg, a, x);
    let s = RatPoly::var(n + 1, n);
    let sx = x.extend(n + 1).mul_poly(&s);
    let moved = alg.bch_symbolic(&-&sx, &PolyVector::vars(n + 1, 0..d));
    let subs = moved.concat(&PolyVector::vars(n + 1, d..n));
    pairing.compose(&subs).expect("tau arity").integrate_last().expect("tau integration")
}

pub fn tau_exponent(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &[Q]) -> Result<RatPoly> {
    check_dims(alg, a, x)?;
    Ok(tau_exponent_sym(alg, a, &PolyVector::constants(alg.dim(), x)))
}

fn check_dims(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &[Q]) -> Result<()> {
    if a.dim() != alg.dim() {
        return Err(Error::Dimension { expected: alg.dim(), got: a.dim() });
    }
    if x.len() != alg.dim() {
        return Err(Error::Dimension { expected: alg.dim(), got: x.len() });
    }
    Ok(())
}

/// `θ^A(X, ξ)` together with the representation parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaImage {
    pub phi: RatPoly,
    pub x: Vec<Q>,
    pub xi: Vec<Q>,
    pub epsilon: f64,
}

pub fn theta_map(alg: &LieAlgebraSpec, a: &MagneticPotential, x: &[Q], xi: &[Q], epsilon: f64) -> Result<ThetaImage> {
    if epsilon == 0.0 || !epsilon.is_finite() {
        return Err(Error::ZeroEpsilon);
    }
    check_dims(alg, a, x)?;
    check_dims(alg, a, xi)?;
    let d = alg.dim();
    let mut phi = pair_with_right_field(alg, a, x)?;
    for (i, c) in xi.iter().enumerate() {
        if !c.is_zero() {
            phi = &phi + &RatPoly::var(d, i).scale(c);
        }
    }
    Ok(ThetaImage { phi, x: x.to_vec(), xi: xi.to_vec(), epsilon })
}

/// The phase of `exp_M θ^A(X, ξ)` as one polynomial in the variables
/// `(x, X, ξ)`, each block of length `dim`.
pub fn exp_theta_phase(alg: &LieAlgebraSpec, a: &MagneticPotential) -> RatPoly {
    let d = alg.dim();
    let n = 3 * d;
    let big_x = PolyVector::vars(n, d..2 * d);
    let mut phi = pair_with_right_field_sym(alg, a, &big_x);
    for i in 0..d {
        phi = &phi + &(&RatPoly::var(n, i) * &RatPoly::var(n, 2 * d + i));
    }
    crate::nilpotent::exp_phase(alg, &phi, &big_x)
}
