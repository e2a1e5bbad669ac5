//! Sparse multivariate polynomials.
//!
//! Terms are stored as a map from exponent multi-index to coefficient, with
//! zero coefficients removed on every mutation. The coefficient type is
//! generic; [`crate::RatPoly`] is the exact instance.
//!
//! Text format, one term per line:
//!
//! ```text
//! coeff 3/4 : 2 0 1
//! -1 : 0 1 0
//! ```
//!
//! The leading `coeff` keyword is optional, the denominator defaults to 1,
//! and the exponent list must have one entry per variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars}");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Monomial, c: C) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Monomial, c: C) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Polynomial<D> {
        let mut out = Polynomial::<D>::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &[C]) -> Result<C> {
        if x.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, got: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without the arity check; panics on short input.
    pub fn eval_unchecked(&self, x: &[C]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `subs[i]` for the i-th variable.
    pub fn compose(&self, subs: &PolyVector<C>) -> Result<Self> {
        if subs.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, got: subs.len() });
        }
        let m = subs.nvars();
        let mut powers: Vec<Vec<Polynomial<C>>> = subs
            .components()
            .iter()
            .map(|_| vec![Polynomial::one(m)])
            .collect();
        for (i, s) in subs.components().iter().enumerate() {
            let top = self.degree_in(i);
            for k in 1..=top as usize {
                let next = &powers[i][k - 1] * s;
                powers[i].push(next);
            }
        }
        let mut out = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::Index { index: i, len: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.clone() * C::from_int(e[i] as i64));
        }
        Ok(out)
    }

    /// Definite integral over the last variable on `[0, 1]`.
    pub fn integrate_last(&self) -> Result<Self> {
        if self.nvars == 0 {
            return Err(Error::Index { index: 0, len: 0 });
        }
        let n = self.nvars - 1;
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let k = e[n] as i64;
            out.add_term(e[..n].to_vec(), c.clone() / C::from_int(k + 1));
        }
        Ok(out)
    }

    /// Fixes variable `i` to `value`, removing it.
    pub fn substitute_var(&self, i: usize, value: &C) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::Index { index: i, len: self.nvars });
        }
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[i] {
                t = t * value.clone();
            }
            let mut f = e.clone();
            f.remove(i);
            out.add_term(f, t);
        }
        Ok(out)
    }

    /// Appends variables so that existing indices are unchanged.
    pub fn extend(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.resize(nvars, 0);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Drops trailing variables, failing if any of them occurs.
    pub fn truncate_vars(&self, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            if e[nvars..].iter().any(|&k| k > 0) {
                return Err(Error::Dimension { expected: nvars, got: self.nvars });
            }
            out.add_term(e[..nvars].to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Groups terms by the exponents of the last `k` variables; the values are
    /// polynomials in the leading variables.
    pub fn split_trailing(&self, k: usize) -> BTreeMap<Monomial, Polynomial<C>> {
        let lead = self.nvars - k;
        let mut out: BTreeMap<Monomial, Polynomial<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e[lead..].to_vec())
                .or_insert_with(|| Polynomial::zero(lead))
                .add_term(e[..lead].to_vec(), c.clone());
        }
        out
    }
}

impl Polynomial<BigRational> {
    pub fn to_real<R: crate::Real>(&self) -> Polynomial<R> {
        self.map_coeffs(|c| R::lit(c.approx_f64()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            s.push_str(&format!("coeff {}/{} : {}\n", c.numer(), c.denom(), exps.join(" ")));
        }
        s
    }

    pub fn from_text(nvars: usize, text: &str) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: missing ':'", lineno + 1)))?;
            let lhs = lhs.trim();
            let lhs = lhs.strip_prefix("coeff").unwrap_or(lhs).trim();
            let c = parse_rational(lhs)
                .map_err(|m| Error::Parse(format!("line {}: {m}", lineno + 1)))?;
            let exps = rhs
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if exps.len() != nvars {
                return Err(Error::Parse(format!(
                    "line {}: expected {nvars} exponents, got {}",
                    lineno + 1,
                    exps.len()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }
}

/// Parses `p`, `p/q` or a terminating decimal such as `-0.25` exactly.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal `{s}`"));
        }
        let neg = ip.trim_start().starts_with('-');
        let ip_val: BigInt = match ip.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| format!("bad decimal `{s}`"))?,
        };
        let mut den = BigInt::one();
        for _ in 0..fp.len() {
            den *= 10;
        }
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().unwrap() };
        let mag = ip_val.magnitude().clone();
        let total = BigInt::from(mag) * &den + frac;
        let total = if neg { -total } else { total };
        return Ok(BigRational::new(total, den));
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad rational `{s}`"))?;
    Ok(BigRational::from_integer(n))
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $m(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// A polynomial map: one polynomial per output coordinate, all in the same
/// variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector<C> {
    nvars: usize,
    comps: Vec<Polynomial<C>>,
}

impl<C: Coeff> PolyVector<C> {
    pub fn new(nvars: usize, comps: Vec<Polynomial<C>>) -> Result<Self> {
        for p in &comps {
            if p.nvars() != nvars {
                return Err(Error::Dimension { expected: nvars, got: p.nvars() });
            }
        }
        Ok(Self { nvars, comps })
    }

    pub fn zero(nvars: usize, len: usize) -> Self {
        Self { nvars, comps: vec![Polynomial::zero(nvars); len] }
    }

    /// The identity map on `n` variables.
    pub fn identity(n: usize) -> Self {
        Self::vars(n, 0..n)
    }

    /// Coordinate functions for the given variable indices.
    pub fn vars<I: IntoIterator<Item = usize>>(nvars: usize, idx: I) -> Self {
        Self { nvars, comps: idx.into_iter().map(|i| Polynomial::var(nvars, i)).collect() }
    }

    pub fn constants(nvars: usize, values: &[C]) -> Self {
        Self { nvars, comps: values.iter().map(|v| Polynomial::constant(nvars, v.clone())).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[Polynomial<C>] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Polynomial<C> {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<Polynomial<C>> {
        self.comps
    }

    pub fn eval(&self, x: &[C]) -> Result<Vec<C>> {
        self.comps.iter().map(|p| p.eval(x)).collect()
    }

    pub fn compose(&self, subs: &PolyVector<C>) -> Result<Self> {
        let comps = self.comps.iter().map(|p| p.compose(subs)).collect::<Result<Vec<_>>>()?;
        Ok(Self { nvars: subs.nvars(), comps })
    }

    pub fn map<F: Fn(&Polynomial<C>) -> Result<Polynomial<C>>>(&self, f: F) -> Result<Self> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        let nvars = comps.first().map_or(self.nvars, |p| p.nvars());
        Self::new(nvars, comps)
    }

    pub fn extend(&self, nvars: usize) -> Self {
        Self { nvars, comps: self.comps.iter().map(|p| p.extend(nvars)).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { nvars: self.nvars, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplies every component by the polynomial `q`.
    pub fn mul_poly(&self, q: &Polynomial<C>) -> Self {
        Self { nvars: self.nvars, comps: self.comps.iter().map(|p| p * q).collect() }
    }

    pub fn concat(&self, other: &PolyVector<C>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        Self { nvars: self.nvars, comps }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { nvars: self.nvars, comps: self.comps[range].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }
}

impl PolyVector<BigRational> {
    pub fn to_real<R: crate::Real>(&self) -> PolyVector<R> {
        PolyVector { nvars: self.nvars, comps: self.comps.iter().map(|p| p.to_real()).collect() }
    }
}

impl<C: Coeff> Add for &PolyVector<C> {
    type Output = PolyVector<C>;
    fn add(self, rhs: &PolyVector<C>) -> PolyVector<C> {
        assert_eq!(self.len(), rhs.len());
        PolyVector {
            nvars: self.nvars,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<C: Coeff> Sub for &PolyVector<C> {
    type Output = PolyVector<C>;
    fn sub(self, rhs: &PolyVector<C>) -> PolyVector<C> {
        assert_eq!(self.len(), rhs.len());
        PolyVector {
            nvars: self.nvars,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<C: Coeff> Neg for &PolyVector<C> {
    type Output = PolyVector<C>;
    fn neg(self) -> PolyVector<C> {
        PolyVector { nvars: self.nvars, comps: self.comps.iter().map(|p| -p).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::RatPoly;

    fn x(n: usize, i: usize) -> RatPoly {
        RatPoly::var(n, i)
    }

    #[test]
    fn eval_examples() {
        let p = x(1, 0).pow(2);
        assert_eq!(p.eval(&[rat(3, 1)]).unwrap(), rat(9, 1));
        assert_eq!(RatPoly::zero(2).eval(&[rat(5, 1), rat(7, 1)]).unwrap(), rat(0, 1));
        let q = &(&x(2, 0) * &x(2, 1)) + &x(2, 1).scale(&rat(1, 2));
        assert_eq!(q.eval(&[rat(2, 1), rat(4, 1)]).unwrap(), rat(10, 1));
        assert!(q.eval(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn compose_examples() {
        let p = x(1, 0).pow(2);
        let subs = PolyVector::new(1, vec![&x(1, 0) + &RatPoly::one(1)]).unwrap();
        let expect = RatPoly::from_terms(
            1,
            [(vec![2], rat(1, 1)), (vec![1], rat(2, 1)), (vec![0], rat(1, 1))],
        )
        .unwrap();
        assert_eq!(p.compose(&subs).unwrap(), expect);
        let xy = &x(2, 0) * &x(2, 1);
        let swap = PolyVector::vars(2, [1, 0]);
        assert_eq!(xy.compose(&swap).unwrap(), xy);
        assert!(xy.compose(&PolyVector::identity(3)).is_err());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(x(1, 0).integrate_last().unwrap(), RatPoly::constant(0, rat(1, 2)));
        assert_eq!(x(2, 0).integrate_last().unwrap(), x(1, 0));
        let p = &x(2, 0) * &x(2, 1).pow(2);
        assert_eq!(p.integrate_last().unwrap(), x(1, 0).scale(&rat(1, 3)));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(x(1, 0).pow(2).partial(0).unwrap(), x(1, 0).scale(&rat(2, 1)));
        assert!(RatPoly::constant(2, rat(5, 1)).partial(1).unwrap().is_zero());
        let p = &x(2, 0) * &x(2, 1).pow(2);
        assert_eq!(p.partial(1).unwrap(), (&x(2, 0) * &x(2, 1)).scale(&rat(2, 1)));
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn zero_terms_are_removed() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn text_round_trip() {
        let p = &(&x(3, 0) * &x(3, 2)).scale(&rat(3, 4)) - &x(3, 1);
        let t = p.to_text();
        assert_eq!(RatPoly::from_text(3, &t).unwrap(), p);
        let q = RatPoly::from_text(2, "# comment\n-1/2 : 1 0\ncoeff 0.25 : 0 2\n").unwrap();
        assert_eq!(q.coeff(&[1, 0]), rat(-1, 2));
        assert_eq!(q.coeff(&[0, 2]), rat(1, 4));
        assert!(RatPoly::from_text(2, "1 : 1").is_err());
        assert!(RatPoly::from_text(1, "1/0 : 1").is_err());
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert!(parse_rational("pi").is_err());
    }

    #[test]
    fn split_trailing_groups_by_parameters() {
        // x0 * g0 + 2 x0 + g0
        let p = &(&(&x(2, 0) * &x(2, 1)) + &x(2, 0).scale(&rat(2, 1))) + &x(2, 1);
        let parts = p.split_trailing(1);
        assert_eq!(parts[&vec![0]], x(1, 0).scale(&rat(2, 1)));
        assert_eq!(parts[&vec![1]], &x(1, 0) + &RatPoly::one(1));
    }

    #[test]
    fn float_instance_evaluates() {
        let p: Polynomial<f64> = x(2, 0).pow(2).to_real();
        assert_eq!(p.eval(&[1.5, 0.0]).unwrap(), 2.25);
    }
}
