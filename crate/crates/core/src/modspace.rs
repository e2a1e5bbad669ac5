//! Mixed-norm `L^{r,s}` functionals on phase-space grids and the modulation
//! norms built from them.
//!
//! A field is a row-major array over a list of axes, each with a measure
//! weight. The inner norm runs over the axes of `Ξ₁`, the outer over `Ξ₂`:
//!
//! `‖u‖ = (Σ_{Ξ₂} (Σ_{Ξ₁} |u|^r w₁)^{s/r} w₂)^{1/s}`
//!
//! with maxima for infinite exponents. On a `Ξ`-grid the weights are `h` per
//! position axis and `1/L` per momentum axis, so each cell carries `N^{-d}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::parse_rational;
use crate::repspace::{GridSpec, PhaseSpaceField, Side};
use crate::scalar::{pairwise_sum, Real};
use crate::weyl::{PairField, QuantizerContext};

/// A Lebesgue exponent in `[1, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Exponent {
    Finite(BigRational),
    Infinite,
}

impl Exponent {
    pub fn finite(p: BigRational) -> Result<Self> {
        if p < BigRational::one() {
            return Err(Error::Exponent(format!("{p} is below 1")));
        }
        Ok(Exponent::Finite(p))
    }

    pub fn int(p: i64) -> Self {
        Self::finite(BigRational::from_integer(p.into())).expect("integer exponent at least 1")
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> BigRational {
        match self {
            Exponent::Finite(p) => p.recip(),
            Exponent::Infinite => BigRational::zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(p) => p.to_f64().unwrap_or(f64::NAN),
            Exponent::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        // 1/p reverses the order and is exact for ∞
        other.reciprocal().cmp(&self.reciprocal())
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Exponent::Infinite);
        }
        let p = parse_rational(t).map_err(|e| Error::Exponent(format!("`{t}`: {e}")))?;
        Self::finite(p)
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Exponent> for String {
    fn from(e: Exponent) -> String {
        e.to_string()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) if p.is_integer() => write!(f, "{}", p.numer()),
            Exponent::Finite(p) => write!(f, "{}/{}", p.numer(), p.denom()),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// The six exponents `(r, s; r₁, s₁; r₂, s₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentQuad {
    pub r: Exponent,
    pub s: Exponent,
    pub r1: Exponent,
    pub s1: Exponent,
    pub r2: Exponent,
    pub s2: Exponent,
}

impl ExponentQuad {
    pub fn new(r: Exponent, s: Exponent, r1: Exponent, s1: Exponent, r2: Exponent, s2: Exponent) -> Self {
        Self { r, s, r1, s1, r2, s2 }
    }

    /// Parses six whitespace- or comma-separated exponents.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<Exponent> = text
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        match <[Exponent; 6]>::try_from(parts) {
            Ok([r, s, r1, s1, r2, s2]) => Ok(Self::new(r, s, r1, s1, r2, s2)),
            Err(v) => Err(Error::Exponent(format!("expected 6 exponents, got {}", v.len()))),
        }
    }
}

impl fmt::Display for ExponentQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{};{},{})", self.r, self.s, self.r1, self.s1, self.r2, self.s2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentMode {
    /// Continuity of the cross-Wigner map.
    WignerThm,
    /// Boundedness of the quantization on `M^{r₁,s₁}`.
    OpBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentVerdict {
    pub valid: bool,
    pub reason: String,
}

impl ExponentVerdict {
    fn ok() -> Self {
        Self { valid: true, reason: "admissible".into() }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Self { valid: false, reason: reason.into() }
    }
}

/// Checks the exponent arithmetic exactly.
pub fn exponent_check(q: &ExponentQuad, mode: ExponentMode) -> ExponentVerdict {
    let inside = |name: &str, e: &Exponent| -> Option<String> {
        (e < &q.r || e > &q.s).then(|| format!("{name} = {e} is outside [r, s] = [{}, {}]", q.r, q.s))
    };
    if q.r > q.s {
        return ExponentVerdict::fail(format!("r = {} exceeds s = {}", q.r, q.s));
    }
    let target;
    let (lhs_r, lhs_s) = match mode {
        ExponentMode::WignerThm => {
            for (name, e) in [("r1", &q.r1), ("s1", &q.s1), ("r2", &q.r2), ("s2", &q.s2)] {
                if let Some(msg) = inside(name, e) {
                    return ExponentVerdict::fail(msg);
                }
            }
            target = q.r.reciprocal() + q.s.reciprocal();
            (q.r1.reciprocal() + q.r2.reciprocal(), q.s1.reciprocal() + q.s2.reciprocal())
        }
        ExponentMode::OpBound => {
            for (name, e) in [("r2", &q.r2), ("s2", &q.s2)] {
                if let Some(msg) = inside(name, e) {
                    return ExponentVerdict::fail(msg);
                }
            }
            target = BigRational::one() - q.r.reciprocal() - q.s.reciprocal();
            (q.r1.reciprocal() - q.r2.reciprocal(), q.s1.reciprocal() - q.s2.reciprocal())
        }
    };
    let op = if mode == ExponentMode::WignerThm { "+" } else { "-" };
    if lhs_r != target {
        return ExponentVerdict::fail(format!("1/r1 {op} 1/r2 = {lhs_r}, expected {target}"));
    }
    if lhs_s != target {
        return ExponentVerdict::fail(format!("1/s1 {op} 1/s2 = {lhs_s}, expected {target}"));
    }
    ExponentVerdict::ok()
}

/// A partition of the axes into the inner block `Ξ₁` and the outer block `Ξ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Decomposition {
    pub fn new(naxes: usize, first: Vec<usize>, second: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; naxes];
        for &a in first.iter().chain(&second) {
            if a >= naxes {
                return Err(Error::Grid(format!("axis {a} out of range for {naxes} axes")));
            }
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::Grid(format!("axis {a} appears twice in the decomposition")));
            }
        }
        if let Some(a) = seen.iter().position(|s| !s) {
            return Err(Error::Grid(format!("axis {a} is missing from the decomposition")));
        }
        Ok(Self { first, second })
    }

    /// `first` as the inner block and every other axis as the outer block.
    pub fn with_inner(naxes: usize, first: Vec<usize>) -> Result<Self> {
        let second = (0..naxes).filter(|a| !first.contains(a)).collect();
        Self::new(naxes, first, second)
    }

    /// `Ξ₁` = position axes, `Ξ₂` = momentum axes of a `d`-dimensional group.
    pub fn standard(d: usize) -> Self {
        Self { first: (0..d).collect(), second: (d..2 * d).collect() }
    }

    pub fn naxes(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }
}

/// Axis weights of a phase-space grid: `h` per position axis and `1/L` per
/// momentum axis on `Ξ`, `h` per `y` axis and `1/L` per `η` axis on `Ξ*`.
pub fn grid_weights<T: Real>(spec: &GridSpec<T>) -> Vec<T> {
    let d = spec.dim();
    let mut w = vec![spec.h(); d];
    w.extend(std::iter::repeat(T::one() / spec.length()).take(d));
    w
}

fn lp_sum<T: Real>(terms: &[T], p: &Exponent, w: T) -> T {
    match p {
        Exponent::Infinite => terms.iter().fold(T::zero(), |m, &v| m.max(v)),
        Exponent::Finite(p) => {
            let pf = T::lit(p.to_f64().unwrap_or(f64::NAN));
            let total = pairwise_sum(terms.len(), &|i| terms[i].powf(pf)) * w;
            total.powf(T::one() / pf)
        }
    }
}

/// The mixed norm of a row-major array of shape `shape` with per-axis
/// weights.
pub fn mixed_norm_raw<T: Real>(
    values: &[Complex<T>],
    shape: &[usize],
    weights: &[T],
    r: &Exponent,
    s: &Exponent,
    dec: &Decomposition,
) -> Result<T> {
    let total: usize = shape.iter().product();
    if values.len() != total {
        return Err(Error::Dimension { expected: total, got: values.len() });
    }
    if weights.len() != shape.len() || dec.naxes() != shape.len() {
        return Err(Error::Dimension { expected: shape.len(), got: dec.naxes() });
    }
    let mut strides = vec![1usize; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * shape[a + 1];
    }
    let offsets = |axes: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &a in axes {
            let (len, step) = (shape[a], strides[a]);
            out = out.iter().flat_map(|&o| (0..len).map(move |i| o + i * step)).collect();
        }
        out
    };
    let inner_off = offsets(dec.first());
    let outer_off = offsets(dec.second());
    let w1 = dec.first().iter().fold(T::one(), |acc, &a| acc * weights[a]);
    let w2 = dec.second().iter().fold(T::one(), |acc, &a| acc * weights[a]);
    let mut row = vec![T::zero(); inner_off.len()];
    let inner: Vec<T> = outer_off
        .iter()
        .map(|&o| {
            for (slot, &i) in row.iter_mut().zip(&inner_off) {
                *slot = values[o + i].norm();
            }
            lp_sum(&row, r, w1)
        })
        .collect();
    Ok(lp_sum(&inner, s, w2))
}

/// `‖u‖_{L^{r,s}}` of a field on `Ξ` or `Ξ*`.
pub fn mixed_norm<T: Real>(
    spec: &GridSpec<T>,
    u: &PhaseSpaceField<T>,
    r: &Exponent,
    s: &Exponent,
    dec: &Decomposition,
) -> Result<T> {
    spec.check_field(u, u.side)?;
    let shape = vec![spec.n(); 2 * spec.dim()];
    mixed_norm_raw(&u.values, &shape, &grid_weights(spec), r, s, dec)
}

/// `‖A_φ f‖_{L^{r,s}}`.
pub fn mod_norm_vector<T: Real>(
    ctx: &QuantizerContext<T>,
    f: &[Complex<T>],
    phi: &[Complex<T>],
    r: &Exponent,
    s: &Exponent,
    dec: &Decomposition,
) -> Result<T> {
    let amb = ctx.ambiguity(f, phi)?;
    mixed_norm(ctx.spec(), &amb, r, s, dec)
}

/// The mixed norm of a field on `Ξ × Ξ`; the axes are those of the first
/// factor followed by those of the second.
pub fn pair_mixed_norm<T: Real>(
    spec: &GridSpec<T>,
    u: &PairField<T>,
    r: &Exponent,
    s: &Exponent,
    dec: &Decomposition,
) -> Result<T> {
    let shape = vec![spec.n(); 4 * spec.dim()];
    let mut weights = grid_weights(spec);
    weights.extend(grid_weights(spec));
    mixed_norm_raw(&u.values, &shape, &weights, r, s, dec)
}

/// `Ξ₁` = first factor of `Ξ × Ξ`, `Ξ₂` = second.
pub fn pair_decomposition(d: usize) -> Decomposition {
    Decomposition { first: (0..2 * d).collect(), second: (2 * d..4 * d).collect() }
}

/// The modulation norm of a symbol with the window `Wig(φ₁, φ₂)`.
pub fn mod_norm_symbol<T: Real>(
    ctx: &QuantizerContext<T>,
    a: &PhaseSpaceField<T>,
    phi1: &[Complex<T>],
    phi2: &[Complex<T>],
    r: &Exponent,
    s: &Exponent,
) -> Result<T> {
    let dec = pair_decomposition(ctx.spec().dim());
    mod_norm_symbol_with(ctx, a, phi1, phi2, r, s, &dec)
}

pub fn mod_norm_symbol_with<T: Real>(
    ctx: &QuantizerContext<T>,
    a: &PhaseSpaceField<T>,
    phi1: &[Complex<T>],
    phi2: &[Complex<T>],
    r: &Exponent,
    s: &Exponent,
    dec: &Decomposition,
) -> Result<T> {
    ctx.spec().check_field(a, Side::XiStar)?;
    let window = ctx.wigner(phi1, phi2)?;
    let sa = ctx.symbol_ambiguity(a, &window)?;
    pair_mixed_norm(ctx.spec(), &sa, r, s, dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::MagneticPotential;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn exponent_parsing_and_order() {
        assert_eq!(e("inf"), Exponent::Infinite);
        assert_eq!(e("2.5"), Exponent::Finite(rat(5, 2)));
        assert_eq!(e("3/2"), Exponent::Finite(rat(3, 2)));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("x".parse::<Exponent>().is_err());
        assert!(e("1") < e("2") && e("2") < e("inf"));
        assert_eq!(e("inf").reciprocal(), BigRational::zero());
        let q = ExponentQuad::parse("1, inf; 2 2 2 2").unwrap();
        assert_eq!(q.to_string(), "(1,inf;2,2;2,2)");
        assert!(ExponentQuad::parse("1 2").is_err());
    }

    #[test]
    fn exponent_check_examples() {
        let q = ExponentQuad::parse("1 inf 2 2 2 2").unwrap();
        assert!(exponent_check(&q, ExponentMode::OpBound).valid);
        assert!(exponent_check(&q, ExponentMode::WignerThm).valid);
        let twos = ExponentQuad::parse("2 2 2 2 2 2").unwrap();
        assert!(exponent_check(&twos, ExponentMode::WignerThm).valid);
        let bad = ExponentQuad::parse("2 1 2 2 2 2").unwrap();
        let v = exponent_check(&bad, ExponentMode::WignerThm);
        assert!(!v.valid && v.reason.contains("exceeds"));
        let off = ExponentQuad::parse("2 2 1 2 2 2").unwrap();
        assert!(!exponent_check(&off, ExponentMode::WignerThm).valid);
        let sums = ExponentQuad::parse("1 inf 1 1 inf inf").unwrap();
        assert!(exponent_check(&sums, ExponentMode::WignerThm).valid);
        let sums_bad = ExponentQuad::parse("1 inf 1 2 inf inf").unwrap();
        assert!(!exponent_check(&sums_bad, ExponentMode::WignerThm).valid);
    }

    #[test]
    fn decomposition_validation() {
        assert!(Decomposition::new(2, vec![0], vec![1]).is_ok());
        assert!(Decomposition::new(2, vec![0], vec![0]).is_err());
        assert!(Decomposition::new(3, vec![0], vec![1]).is_err());
        assert!(Decomposition::new(2, vec![2], vec![1]).is_err());
        assert_eq!(Decomposition::with_inner(4, vec![1, 3]).unwrap().second(), &[0, 2]);
    }

    #[test]
    fn mixed_norm_hand_example() {
        let one = Complex::new(1.0, 0.0);
        let dec = Decomposition::standard(1);
        let v = mixed_norm_raw(&[one; 4], &[2, 2], &[1.0, 1.0], &e("1"), &e("inf"), &dec).unwrap();
        assert_eq!(v, 2.0);
        // inner over the second axis instead
        let vals = [one, one * 2.0, one * 3.0, one * 4.0];
        let swapped = Decomposition::new(2, vec![1], vec![0]).unwrap();
        let a = mixed_norm_raw(&vals, &[2, 2], &[1.0, 1.0], &e("1"), &e("inf"), &dec).unwrap();
        let b = mixed_norm_raw(&vals, &[2, 2], &[1.0, 1.0], &e("1"), &e("inf"), &swapped).unwrap();
        assert_eq!((a, b), (6.0, 7.0));
    }

    #[test]
    fn mod_norm_vector_examples() {
        let spec = GridSpec::new(1, 32, 12.0, 1.0).unwrap();
        let ctx = QuantizerContext::new(spec.clone(), MagneticPotential::zero(1)).unwrap();
        let f = spec.gaussian(&[0.7], 0.9, &[1.1], 0.2);
        let phi = spec.gaussian(&[-0.3], 1.2, &[0.0], 0.0);
        let dec = Decomposition::standard(1);
        let two = e("2");
        let n: f64 = mod_norm_vector(&ctx, &f, &phi, &two, &two, &dec).unwrap();
        let want = spec.norm(&f).unwrap() * spec.norm(&phi).unwrap();
        assert!((n - want).abs() < 1e-6 * want);
        let zero = vec![Complex::new(0.0, 0.0); 32];
        assert_eq!(mod_norm_vector(&ctx, &zero, &phi, &two, &two, &dec).unwrap(), 0.0);
        assert!(mod_norm_vector(&ctx, &f, &zero, &two, &two, &dec).is_err());
        let c = Complex::new(0.0, -2.5);
        let scaled: Vec<_> = phi.iter().map(|v| v * c).collect();
        for (r, s) in [("1", "inf"), ("inf", "1"), ("3/2", "4")] {
            let base: f64 = mod_norm_vector(&ctx, &f, &phi, &e(r), &e(s), &dec).unwrap();
            let sc = mod_norm_vector(&ctx, &f, &scaled, &e(r), &e(s), &dec).unwrap();
            assert!((sc - 2.5 * base).abs() < 1e-12 * sc);
        }
    }

    #[test]
    fn mod_norm_symbol_examples() {
        let spec = GridSpec::new(1, 8, 5.0, 1.0).unwrap();
        let ctx = QuantizerContext::new(spec.clone(), MagneticPotential::zero(1)).unwrap();
        let p1 = spec.normalized(spec.gaussian(&[0.0], 1.0, &[0.0], 0.0)).unwrap();
        let p2 = spec.normalized(spec.gaussian(&[0.3], 0.8, &[0.4], 0.0)).unwrap();
        let f1 = spec.gaussian(&[-0.5], 0.7, &[0.8], 0.1);
        let f2 = spec.gaussian(&[0.4], 1.1, &[-0.3], 0.0);
        let a = ctx.wigner(&f1, &f2).unwrap();
        let two = e("2");
        let n: f64 = mod_norm_symbol(&ctx, &a, &p1, &p2, &two, &two).unwrap();
        let want = a.norm() * ctx.wigner(&p1, &p2).unwrap().norm();
        assert!((n - want).abs() < 1e-5 * want, "{n} vs {want}");
        let zero = spec.zero_field(Side::XiStar);
        assert_eq!(mod_norm_symbol(&ctx, &zero, &p1, &p2, &two, &two).unwrap(), 0.0);
    }
}
