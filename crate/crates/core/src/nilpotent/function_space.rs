//! Finite-dimensional λ-invariant polynomial spaces and the semidirect
//! algebra `F ⋊ g`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{jacobi_violation, LieAlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{lower_central_series, PolyEchelon};
use crate::magnetic::MagneticPotential;
use crate::poly::PolyVector;
use crate::RatPoly;

type Q = BigRational;

/// A basis of a finite-dimensional space of polynomials on the group, kept
/// in reduced echelon form so that coordinates are read off pivot monomials.
#[derive(Clone, Debug)]
pub struct FunctionSpaceBasis {
    echelon: PolyEchelon,
    basis: Vec<RatPoly>,
    contains_constants: bool,
}

impl FunctionSpaceBasis {
    pub fn from_spanning(nvars: usize, polys: &[RatPoly]) -> Self {
        let mut echelon = PolyEchelon::new(nvars);
        for p in polys {
            echelon.insert(p);
        }
        let basis = echelon.basis();
        let contains_constants = echelon.coordinates(&RatPoly::one(nvars)).is_some();
        Self { echelon, basis, contains_constants }
    }

    pub fn basis(&self) -> &[RatPoly] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains_constants(&self) -> bool {
        self.contains_constants
    }

    pub fn contains(&self, p: &RatPoly) -> bool {
        self.echelon.coordinates(p).is_some()
    }

    pub fn coordinates(&self, p: &RatPoly) -> Option<Vec<Q>> {
        self.echelon.coordinates(p)
    }

    pub fn max_degree(&self) -> u32 {
        self.basis.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Checks `λ_g b ∈ F` for every basis element `b` and the given `g`.
    pub fn is_invariant_under(&self, alg: &LieAlgebraSpec, g: &[Q]) -> Result<bool> {
        for b in &self.basis {
            if !self.contains(&alg.lambda_poly(g, b)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coefficient polynomials of `λ_g p` for a symbolic `g`: their span is
/// `span{λ_g p : g ∈ G}`.
fn translate_coefficients(alg: &LieAlgebraSpec, p: &RatPoly) -> Vec<RatPoly> {
    let d = alg.dim();
    let g = PolyVector::vars(2 * d, d..2 * d);
    let moved = alg.left_translate(&g, &p.extend(2 * d));
    moved.split_trailing(d).into_values().collect()
}

/// `F_G = span{λ_g(ξ∘log) : ξ ∈ g*, g ∈ G}`.
pub fn build_fg(alg: &LieAlgebraSpec) -> FunctionSpaceBasis {
    let d = alg.dim();
    let mut gens = Vec::new();
    for i in 0..d {
        gens.extend(translate_coefficients(alg, &RatPoly::var(d, i)));
    }
    let fg = FunctionSpaceBasis::from_spanning(d, &gens);
    debug_assert!(fg.max_degree() as usize <= alg.step() * alg.step());
    fg
}

/// The λ-invariant span of `F_G` and the pairings `⟨A, ι^R e_i⟩`.
pub fn admissible_space(alg: &LieAlgebraSpec, a: &MagneticPotential) -> Result<FunctionSpaceBasis> {
    let d = alg.dim();
    let mut gens: Vec<RatPoly> = build_fg(alg).basis().to_vec();
    for i in 0..d {
        let mut e = vec![Q::zero(); d];
        e[i] = Q::one();
        let pairing = crate::magnetic::pair_with_right_field(alg, a, &e)?;
        gens.extend(translate_coefficients(alg, &pairing));
    }
    Ok(FunctionSpaceBasis::from_spanning(d, &gens))
}

/// `λ̇(X)p = d/dt|₀ λ_{tX} p`.
pub fn lambda_dot(alg: &LieAlgebraSpec, x: &[Q], p: &RatPoly) -> Result<RatPoly> {
    let d = alg.dim();
    if x.len() != d || p.nvars() != d {
        return Err(Error::Dimension { expected: d, got: x.len().min(p.nvars()) });
    }
    let t = RatPoly::var(d + 1, d);
    let g = PolyVector::constants(d + 1, x).mul_poly(&t);
    let moved = alg.left_translate(&g, &p.extend(d + 1));
    moved.partial(d)?.substitute_var(d, &Q::zero())
}

/// Structure of `m₀ = F ⋊ g` in the basis (F basis, then e_1..e_d).
#[derive(Clone, Debug, Serialize)]
pub struct SemidirectStructure {
    pub dim: usize,
    pub function_dim: usize,
    /// Nonzero brackets `[b_i, b_j] = c b_k` with `i < j`, as `(i, j, k, "p/q")`.
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub lower_central_series: Vec<usize>,
    pub step: usize,
    pub is_nilpotent: bool,
    pub jacobi_holds: bool,
}

pub fn semidirect_nilpotency_check(alg: &LieAlgebraSpec, f: &FunctionSpaceBasis) -> Result<SemidirectStructure> {
    let d = alg.dim();
    let k = f.len();
    // action[j][i] = coordinates of λ̇(e_j) b_i
    let mut action = vec![vec![Vec::new(); k]; d];
    for (j, row) in action.iter_mut().enumerate() {
        let mut e = vec![Q::zero(); d];
        e[j] = Q::one();
        for (i, b) in f.basis().iter().enumerate() {
            let moved = lambda_dot(alg, &e, b)?;
            row[i] = f.coordinates(&moved).ok_or_else(|| {
                Error::Closure(format!("λ̇(e{}) applied to basis element {} = {} leaves the space", j + 1, i, b))
            })?;
        }
    }
    let dim = k + d;
    let act = |x: &[Q], phi: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); k];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, pi) in phi.iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                let c = xj * pi;
                for (o, a) in out.iter_mut().zip(&action[j][i]) {
                    *o += &c * a;
                }
            }
        }
        out
    };
    let bracket = |a: &[Q], b: &[Q]| -> Vec<Q> {
        let (pa, xa) = a.split_at(k);
        let (pb, xb) = b.split_at(k);
        let mut out: Vec<Q> = act(xa, pb).into_iter().zip(act(xb, pa)).map(|(u, v)| u - v).collect();
        out.extend(alg.bracket(xa, xb));
        out
    };
    let unit = |i: usize| -> Vec<Q> { (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for (kk, c) in bracket(&unit(i), &unit(j)).into_iter().enumerate() {
                if !c.is_zero() {
                    brackets.push((i, j, kk, c.to_string()));
                }
            }
        }
    }
    let jacobi_holds = jacobi_violation(dim, &bracket).is_none();
    let series = lower_central_series(dim, bracket);
    let is_nilpotent = *series.last().unwrap() == 0;
    let step = if is_nilpotent { series.len() - 1 } else { 0 };
    Ok(SemidirectStructure { dim, function_dim: k, brackets, lower_central_series: series, step, is_nilpotent, jacobi_holds })
}
