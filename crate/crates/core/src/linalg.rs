//! Exact row reduction over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial};

type Q = BigRational;

/// Reduced row-echelon basis of a subspace of `Q^n`, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct DenseEchelon {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl DenseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &c * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = Q::one() / r[p].clone();
        for c in r.iter_mut() {
            *c *= &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (a, b) in row.iter_mut().zip(&r) {
                    *a -= &c * b;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

pub fn rank(vectors: &[Vec<Q>]) -> usize {
    let mut e = DenseEchelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Reduced echelon basis of a space of polynomials, pivoting on the largest
/// monomial of each row.
#[derive(Clone, Debug)]
pub struct PolyEchelon {
    nvars: usize,
    rows: Vec<BTreeMap<Monomial, Q>>,
    pivots: Vec<Monomial>,
}

impl PolyEchelon {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, p: &Polynomial<Q>) -> BTreeMap<Monomial, Q> {
        let mut v: BTreeMap<Monomial, Q> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        for (row, piv) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(piv).cloned() {
                for (e, b) in row {
                    let entry = v.entry(e.clone()).or_insert_with(Q::zero);
                    *entry -= &c * b;
                    if entry.is_zero() {
                        v.remove(e);
                    }
                }
            }
        }
        v
    }

    /// Coordinates of `p` with respect to [`Self::basis`], if `p` lies in the span.
    pub fn coordinates(&self, p: &Polynomial<Q>) -> Option<Vec<Q>> {
        if !self.reduce(p).is_empty() {
            return None;
        }
        Some(self.pivots.iter().map(|m| p.coeff(m)).collect())
    }

    pub fn insert(&mut self, p: &Polynomial<Q>) -> bool {
        let mut r = self.reduce(p);
        let Some((piv, lead)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) else {
            return false;
        };
        for c in r.values_mut() {
            *c /= &lead;
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&piv).cloned() {
                for (e, b) in &r {
                    let entry = row.entry(e.clone()).or_insert_with(Q::zero);
                    *entry -= &c * b;
                    if entry.is_zero() {
                        row.remove(e);
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(piv);
        true
    }

    pub fn basis(&self) -> Vec<Polynomial<Q>> {
        self.rows
            .iter()
            .map(|r| Polynomial::from_terms(self.nvars, r.iter().map(|(e, c)| (e.clone(), c.clone()))).unwrap())
            .collect()
    }
}

/// Dimensions of the lower central series `C^1 = m, C^{k+1} = [m, C^k]` of an
/// algebra of dimension `dim`, stopping at zero or when it stabilizes.
pub fn lower_central_series<F>(dim: usize, bracket: F) -> Vec<usize>
where
    F: Fn(&[Q], &[Q]) -> Vec<Q>,
{
    let unit = |i: usize| -> Vec<Q> { (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect() };
    let mut current: Vec<Vec<Q>> = (0..dim).map(unit).collect();
    let mut dims = vec![dim];
    loop {
        let mut next = DenseEchelon::new();
        for i in 0..dim {
            let ei = unit(i);
            for v in &current {
                next.insert(&bracket(&ei, v));
            }
        }
        let r = next.rank();
        let last = *dims.last().unwrap();
        dims.push(r);
        if r == 0 || r == last {
            return dims;
        }
        current = next.rows().to_vec();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn dense_rank_and_membership() {
        let v = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 2)],
        ];
        assert_eq!(rank(&v), 2);
        let mut e = DenseEchelon::new();
        for r in &v {
            e.insert(r);
        }
        assert!(e.contains(&[rat(1, 1), rat(3, 1), rat(7, 2)]));
        assert!(!e.contains(&[rat(0, 1), rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn poly_coordinates() {
        let x = Polynomial::<Q>::var(1, 0);
        let one = Polynomial::<Q>::one(1);
        let mut e = PolyEchelon::new(1);
        e.insert(&(&x + &one));
        e.insert(&(&x - &one));
        assert!(!e.insert(&x));
        let basis = e.basis();
        let target = &x.scale(&rat(3, 1)) + &one;
        let c = e.coordinates(&target).unwrap();
        let mut acc = Polynomial::<Q>::zero(1);
        for (b, ci) in basis.iter().zip(&c) {
            acc = &acc + &b.scale(ci);
        }
        assert_eq!(acc, target);
        assert!(e.coordinates(&x.pow(2)).is_none());
    }
}
