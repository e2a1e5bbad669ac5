//! Hilbert–Schmidt operators on grid states.
//!
//! An operator is stored as the matrix acting on sample values,
//! `(Tψ)[i] = Σ_j T[i,j] ψ[j]`. Because the grid inner product carries the
//! weight `h^d` on both sides, this is also the matrix in the orthonormal
//! basis of normalized grid deltas, so the Hilbert–Schmidt inner product is
//! the plain Frobenius one.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{pairwise_sum, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct HsOperator<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> HsOperator<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.data[i * n + i] = Complex::new(T::one(), T::zero());
        }
        out
    }

    pub fn from_rows(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: data.len() });
        }
        Ok(Self { n, data })
    }

    /// `f ⊗ φ̄ : ψ ↦ (ψ|φ) f` for grid weight `w = h^d`.
    pub fn rank_one(f: &[Complex<T>], phi: &[Complex<T>], w: T) -> Result<Self> {
        if f.len() != phi.len() {
            return Err(Error::Dimension { expected: f.len(), got: phi.len() });
        }
        let n = f.len();
        let mut data = Vec::with_capacity(n * n);
        for fi in f {
            for pj in phi {
                data.push(*fi * pj.conj() * w);
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension { expected: self.n, got: other.n });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = vec![Complex::zero(); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let b = &other.data[k * n..(k + 1) * n];
                for (r, &bv) in row.iter_mut().zip(b) {
                    *r = *r + a * bv;
                }
            }
        }
        Ok(Self { n, data: out })
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut data = vec![Complex::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { n, data }
    }

    pub fn apply(&self, psi: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if psi.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: psi.len() });
        }
        let n = self.n;
        Ok((0..n).map(|i| pairwise_sum(n, &|j| self.data[i * n + j] * psi[j])).collect())
    }

    /// `(S|T)_HS = tr(S T†)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check(other)?;
        Ok(pairwise_sum(self.data.len(), &|i| self.data[i] * other.data[i].conj()))
    }

    pub fn hs_norm(&self) -> T {
        pairwise_sum(self.data.len(), &|i| self.data[i].norm_sqr()).sqrt()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn to_f64(&self) -> HsOperator<f64> {
        HsOperator { n: self.n, data: self.data.iter().map(|v| Complex64::new(v.re.approx_f64(), v.im.approx_f64())).collect() }
    }

    fn to_dmatrix(&self) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| {
            let v = self.data[i * n + j];
            Complex64::new(v.re.approx_f64(), v.im.approx_f64())
        })
    }

    /// Singular values in decreasing order, computed in double precision.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.to_dmatrix().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn op_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    pub fn trace_norm(&self) -> f64 {
        self.singular_values().iter().sum()
    }
}

/// Numerical rank of a dense complex matrix (rows × cols, row-major): the
/// number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(rows: usize, cols: usize, data: &[Complex64], rel_tol: f64) -> (usize, Vec<f64>) {
    let m = DMatrix::from_fn(rows, cols, |i, j| data[i * cols + j]);
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let top = s.first().copied().unwrap_or(0.0);
    (s.iter().filter(|&&v| v > rel_tol * top).count(), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_norms() {
        let f = vec![c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)];
        let phi = vec![c(0.0, 2.0), c(1.0, 0.0), c(0.0, 0.0)];
        let w = 0.5;
        let t = HsOperator::rank_one(&f, &phi, w).unwrap();
        let nf = (f.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt();
        let np = (phi.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt();
        assert!((t.hs_norm() - nf * np).abs() < 1e-12);
        assert!((t.op_norm() - nf * np).abs() < 1e-12);
        assert!((t.trace_norm() - nf * np).abs() < 1e-12);
        // (f⊗φ̄)φ = ‖φ‖² f
        let out = t.apply(&phi).unwrap();
        for (o, fi) in out.iter().zip(&f) {
            assert!((o - fi * np * np).norm() < 1e-12);
        }
    }

    #[test]
    fn matmul_adjoint_identity() {
        let t = HsOperator::from_rows(2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)]).unwrap();
        let id = HsOperator::identity(2);
        assert_eq!(t.matmul(&id).unwrap(), t);
        let tt = t.adjoint().matmul(&t).unwrap();
        assert!((tt.get(0, 1) - tt.get(1, 0).conj()).norm() < 1e-14);
        assert!((t.hs_inner(&t).unwrap().re - t.hs_norm().powi(2)).abs() < 1e-12);
        assert!(HsOperator::<f64>::from_rows(2, vec![c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn rank_of_singular_matrix() {
        let data = vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)];
        assert_eq!(numerical_rank(2, 2, &data, 1e-12).0, 1);
    }
}
