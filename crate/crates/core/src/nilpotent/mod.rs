//! Nilpotent Lie algebras and their groups in exponential coordinates.
//!
//! Points of the group are points of the algebra; the product is the
//! Baker–Campbell–Hausdorff series, which terminates at the nilpotency step.
//!
//! Symbolic operations work in a shared variable space: the first `dim`
//! variables are the point of the group, any further variables are
//! parameters (a symbolic group element, an integration variable, ...).

mod function_space;
mod semidirect;

pub use function_space::{admissible_space, build_fg, lambda_dot, semidirect_nilpotency_check, FunctionSpaceBasis, SemidirectStructure};
pub use semidirect::{exp_phase, exp_semidirect, exp_square, GroupSquareElement, SemidirectElement, SemidirectVector};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::lower_central_series;
use crate::poly::PolyVector;
use crate::scalar::Coeff;
use crate::{RatPoly, RatPolyVector};

type Q = BigRational;

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    name: String,
    dim: usize,
    /// `structure[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    structure: Vec<Vec<Vec<Q>>>,
    step: usize,
    /// `X∗Y` as a polynomial map in `2·dim` variables `(X, Y)`.
    law: RatPolyVector,
}

#[derive(Serialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Serialize)]
struct AlgebraDump {
    name: String,
    dim: usize,
    step: usize,
    brackets: Vec<BracketEntry>,
}

impl LieAlgebraSpec {
    /// Builds an algebra from the brackets `[e_i, e_j] = Σ c e_k` with `i < j`
    /// (zero-based indices); antisymmetry fills the rest.
    pub fn from_brackets(name: &str, dim: usize, brackets: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let mut structure = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, c) in brackets {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Structure(format!("index out of range in [e{i}, e{j}] -> e{k}")));
            }
            if i == j {
                return Err(Error::Structure(format!("[e{i}, e{i}] must vanish")));
            }
            structure[i][j][k] += c;
            structure[j][i][k] -= c;
        }
        let bracket = |a: &[Q], b: &[Q]| bracket_dense(&structure, a, b);
        if let Some((i, j, k)) = jacobi_violation(dim, &bracket) {
            return Err(Error::Structure(format!("Jacobi identity fails on (e{i}, e{j}, e{k})")));
        }
        let series = lower_central_series(dim, bracket);
        if *series.last().unwrap() != 0 {
            return Err(Error::Structure("algebra is not nilpotent".into()));
        }
        let step = series.len() - 1;
        let mut alg = Self { name: name.to_string(), dim, structure, step, law: PolyVector::zero(0, 0) };
        let x = PolyVector::vars(2 * dim, 0..dim);
        let y = PolyVector::vars(2 * dim, dim..2 * dim);
        alg.law = alg.dynkin(&x, &y);
        Ok(alg)
    }

    pub fn abelian(n: usize) -> Self {
        Self::from_brackets(&format!("abelian:{n}"), n, &[]).expect("abelian algebra")
    }

    /// `[e1, e2] = e3`.
    pub fn heisenberg() -> Self {
        Self::from_brackets("heisenberg", 3, &[(0, 1, 2, Q::one())]).expect("heisenberg algebra")
    }

    /// `[e1, e2] = e3`, `[e1, e3] = e4`.
    pub fn engel() -> Self {
        Self::from_brackets("engel", 4, &[(0, 1, 2, Q::one()), (0, 2, 3, Q::one())]).expect("engel algebra")
    }

    /// Registry lookup: `abelian:n` (n ≤ 3), `heisenberg`, `engel`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "heisenberg" => Ok(Self::heisenberg()),
            "engel" => Ok(Self::engel()),
            _ => match name.strip_prefix("abelian:").map(str::parse::<usize>) {
                Some(Ok(n)) if (1..=3).contains(&n) => Ok(Self::abelian(n)),
                _ => Err(Error::UnknownAlgebra(name.to_string())),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().flatten().flatten().all(|c| c.is_zero())
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.structure[i][j][k]
    }

    pub fn structure_json(&self) -> serde_json::Value {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        brackets.push(BracketEntry { i: i + 1, j: j + 1, k: k + 1, c: c.to_string() });
                    }
                }
            }
        }
        serde_json::to_value(AlgebraDump { name: self.name.clone(), dim: self.dim, step: self.step, brackets })
            .expect("serializable")
    }

    pub fn bracket(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        bracket_dense(&self.structure, a, b)
    }

    pub fn bracket_poly(&self, a: &RatPolyVector, b: &RatPolyVector) -> RatPolyVector {
        let n = a.nvars();
        let mut comps = vec![RatPoly::zero(n); self.dim];
        for i in 0..self.dim {
            if a.component(i).is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if i == j || b.component(j).is_zero() {
                    continue;
                }
                let mut prod: Option<RatPoly> = None;
                for (k, comp) in comps.iter_mut().enumerate() {
                    let c = &self.structure[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    let p = prod.get_or_insert_with(|| a.component(i) * b.component(j));
                    *comp = &*comp + &p.scale(c);
                }
            }
        }
        PolyVector::new(n, comps).expect("consistent arity")
    }

    /// Dynkin's form of the BCH series, truncated after words of length `step`.
    pub fn dynkin(&self, x: &RatPolyVector, y: &RatPolyVector) -> RatPolyVector {
        let n = x.nvars();
        let mut total = PolyVector::zero(n, self.dim);
        let mut seq: Vec<(usize, usize)> = Vec::new();
        self.dynkin_rec(x, y, &mut seq, 0, &mut total);
        debug_assert_eq!(total.nvars(), n);
        total
    }

    fn dynkin_rec(
        &self,
        x: &RatPolyVector,
        y: &RatPolyVector,
        seq: &mut Vec<(usize, usize)>,
        len: usize,
        total: &mut RatPolyVector,
    ) {
        if !seq.is_empty() {
            *total = &*total + &self.dynkin_term(x, y, seq, len);
        }
        for r in 0..=self.step - len {
            for s in 0..=self.step - len - r {
                if r + s == 0 {
                    continue;
                }
                seq.push((r, s));
                self.dynkin_rec(x, y, seq, len + r + s, total);
                seq.pop();
            }
        }
    }

    fn dynkin_term(&self, x: &RatPolyVector, y: &RatPolyVector, seq: &[(usize, usize)], len: usize) -> RatPolyVector {
        let mut word: Vec<bool> = Vec::with_capacity(len);
        let mut denom = Q::from_int(len as i64);
        for &(r, s) in seq {
            word.extend(std::iter::repeat(false).take(r));
            word.extend(std::iter::repeat(true).take(s));
            denom = denom * Q::from_int(factorial(r)) * Q::from_int(factorial(s));
        }
        if len >= 2 && word[len - 1] == word[len - 2] {
            return PolyVector::zero(x.nvars(), self.dim);
        }
        let n = seq.len() as i64;
        let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
        let coeff = sign / (Q::from_int(n) * denom);
        let letter = |b: bool| if b { y } else { x };
        let mut acc = letter(word[len - 1]).clone();
        for &w in word[..len - 1].iter().rev() {
            acc = self.bracket_poly(letter(w), &acc);
            if acc.is_zero() {
                return acc;
            }
        }
        acc.scale(&coeff)
    }

    /// The group law `(X, Y) ↦ X∗Y` as a polynomial map in `2·dim` variables.
    pub fn group_law_map(&self) -> &RatPolyVector {
        &self.law
    }

    /// `x∗y` for polynomial maps in a common variable space.
    pub fn bch_symbolic(&self, x: &RatPolyVector, y: &RatPolyVector) -> RatPolyVector {
        self.law.compose(&x.concat(y)).expect("law arity")
    }

    pub fn bch_product(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut xy = x.to_vec();
        xy.extend_from_slice(y);
        self.law.eval(&xy)
    }

    pub fn group_inverse(&self, x: &[Q]) -> Vec<Q> {
        x.iter().map(|c| -c.clone()).collect()
    }

    fn check_len(&self, x: &[Q]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    fn point_vars(&self, nvars: usize) -> RatPolyVector {
        PolyVector::vars(nvars, 0..self.dim)
    }

    /// `g ↦ d/dt|₀ exp(tX)∗g` for `X` given as polynomials in the shared space.
    pub fn right_invariant_field_sym(&self, x: &RatPolyVector) -> RatPolyVector {
        let n = x.nvars();
        let t = RatPoly::var(n + 1, n);
        let tx = x.extend(n + 1).mul_poly(&t);
        let prod = self.bch_symbolic(&tx, &self.point_vars(n + 1));
        prod.map(|p| p.partial(n)?.substitute_var(n, &Q::zero())).expect("field")
    }

    pub fn right_invariant_field(&self, x: &[Q]) -> Result<RatPolyVector> {
        self.check_len(x)?;
        Ok(self.right_invariant_field_sym(&PolyVector::constants(self.dim, x)))
    }

    /// `p ∘ ((−g)∗·)` acting on the point variables of `p`; `g` lives in the
    /// same variable space as `p`.
    pub fn left_translate(&self, g: &RatPolyVector, p: &RatPoly) -> RatPoly {
        let n = p.nvars();
        let moved = self.bch_symbolic(&-g, &self.point_vars(n));
        let subs = moved.concat(&PolyVector::vars(n, self.dim..n));
        p.compose(&subs).expect("translate arity")
    }

    pub fn lambda_poly(&self, g: &[Q], p: &RatPoly) -> Result<RatPoly> {
        self.check_len(g)?;
        if p.nvars() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: p.nvars() });
        }
        Ok(self.left_translate(&PolyVector::constants(self.dim, g), p))
    }

    /// `Ψ_X(Y) = ∫₀¹ Y∗(sX) ds` with `Y` the point variables.
    pub fn psi_map_sym(&self, x: &RatPolyVector) -> RatPolyVector {
        let n = x.nvars();
        let s = RatPoly::var(n + 1, n);
        let sx = x.extend(n + 1).mul_poly(&s);
        let prod = self.bch_symbolic(&self.point_vars(n + 1), &sx);
        prod.map(|p| p.integrate_last()).expect("psi")
    }

    /// Inverse of [`Self::psi_map_sym`], by back-substitution `Z ← Y − R(Z)`
    /// where `Ψ_X = id + R`. Terminates because `R` raises bracket depth.
    pub fn psi_inverse_sym(&self, x: &RatPolyVector) -> Result<RatPolyVector> {
        let n = x.nvars();
        let psi = self.psi_map_sym(x);
        let ident = self.point_vars(n);
        let rest = &psi - &ident;
        let params = PolyVector::vars(n, self.dim..n);
        let mut z = ident.clone();
        for _ in 0..=self.step + 1 {
            let r = rest.compose(&z.concat(&params))?;
            let next = &ident - &r;
            if next == z {
                break;
            }
            z = next;
        }
        let check = psi.compose(&z.concat(&params))?;
        if check != ident {
            return Err(Error::InverseFailed);
        }
        Ok(z)
    }

    pub fn psi_map(&self, x: &[Q]) -> Result<RatPolyVector> {
        self.check_len(x)?;
        Ok(self.psi_map_sym(&PolyVector::constants(self.dim, x)))
    }

    pub fn psi_inverse(&self, x: &[Q]) -> Result<RatPolyVector> {
        self.check_len(x)?;
        self.psi_inverse_sym(&PolyVector::constants(self.dim, x))
    }

    /// `(Σ₁, Σ₁⁻¹, Σ₂, Σ₂⁻¹)` on `g×g`:
    /// `Σ₁(Y,Z) = (−Y, Y∗(−Z))`, `Σ₂(V,W) = (−Ψ_W(V), W)`, `Σ₂⁻¹(Y,X) = (Ψ_X⁻¹(−Y), X)`.
    pub fn sigma_maps(&self) -> Result<SigmaMaps> {
        let d = self.dim;
        let n = 2 * d;
        let first = PolyVector::vars(n, 0..d);
        let second = PolyVector::vars(n, d..n);
        let sigma1 = (-&first).concat(&self.bch_symbolic(&first, &-&second));
        let sigma1_inv = (-&first).concat(&-&self.bch_symbolic(&first, &second));
        let psi = self.psi_map_sym(&second);
        let sigma2 = (-&psi).concat(&second);
        let psi_inv = self.psi_inverse_sym(&second)?;
        let flip = (-&first).concat(&second);
        let sigma2_inv = psi_inv.compose(&flip)?.concat(&second);
        Ok(SigmaMaps { sigma1, sigma1_inv, sigma2, sigma2_inv })
    }
}

#[derive(Clone, Debug)]
pub struct SigmaMaps {
    pub sigma1: RatPolyVector,
    pub sigma1_inv: RatPolyVector,
    pub sigma2: RatPolyVector,
    pub sigma2_inv: RatPolyVector,
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn bracket_dense(structure: &[Vec<Vec<Q>>], a: &[Q], b: &[Q]) -> Vec<Q> {
    let dim = structure.len();
    let mut out = vec![Q::zero(); dim];
    for i in 0..dim {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if b[j].is_zero() {
                continue;
            }
            let ab = &a[i] * &b[j];
            for k in 0..dim {
                let c = &structure[i][j][k];
                if !c.is_zero() {
                    out[k] += &ab * c;
                }
            }
        }
    }
    out
}

/// First basis triple violating the Jacobi identity, if any.
pub(crate) fn jacobi_violation<F>(dim: usize, bracket: &F) -> Option<(usize, usize, usize)>
where
    F: Fn(&[Q], &[Q]) -> Vec<Q>,
{
    let unit = |i: usize| -> Vec<Q> { (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let (a, b, c) = (unit(i), unit(j), unit(k));
                let t1 = bracket(&a, &bracket(&b, &c));
                let t2 = bracket(&b, &bracket(&c, &a));
                let t3 = bracket(&c, &bracket(&a, &b));
                if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z).is_zero()) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
