//! Discretized carrier space of the representation `π(φ, g)f = e^{iεφ} λ_g f`.
//!
//! The grid backend samples `L²(ℝ^d)` (abelian groups, `d ≤ 2`) at
//! `x_j = (j − N/2)h`, `h = L/N`. Translations by lattice vectors act on
//! indices modulo `N`, while phases are always evaluated at the true
//! in-box coordinates, so every `π(m)` is an exactly unitary matrix.
//!
//! Phase-space grids:
//!
//! | side | axes | steps |
//! |------|------|-------|
//! | `Ξ`  | `X_1..X_d, ξ_1..ξ_d` | `h`, `2π/(|ε|L)` |
//! | `Ξ*` | `y_1..y_d, η_1..η_d` | `|ε|h`, `2π/L` |
//!
//! Every phase-space cell carries the weight `N^{-d}`, which is the
//! normalized measure `|ε|^d dX dξ/(2π)^d` (resp. `dy dη/(2π|ε|)^d`).

pub mod fourier;
pub mod io;
pub mod quadrature;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnetic::ThetaImage;
use crate::nilpotent::{exp_semidirect, FunctionSpaceBasis, LieAlgebraSpec, SemidirectElement, SemidirectVector};
use crate::scalar::{pairwise_sum, Real};
use fourier::{dft_axes, scale, swap_halves, Sign};

pub type GridState<T> = Vec<Complex<T>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    Grid,
    Quadrature,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<T> {
    dim: usize,
    n: usize,
    length: T,
    epsilon: T,
}

impl<T: Real> GridSpec<T> {
    /// `n` points per axis on a box of side `length` centered at 0.
    pub fn new(dim: usize, n: usize, length: T, epsilon: T) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::Grid(format!("grid backend supports d = 1 or 2, got {dim}")));
        }
        if n < 8 || n % 2 != 0 {
            return Err(Error::Grid(format!("points per axis must be even and at least 8, got {n}")));
        }
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::Grid("box length must be positive".into()));
        }
        if epsilon == T::zero() || !epsilon.is_finite() {
            return Err(Error::ZeroEpsilon);
        }
        Ok(Self { dim, n, length, epsilon })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn h(&self) -> T {
        self.length / T::lit(self.n as f64)
    }

    /// Number of grid points `N^d`.
    pub fn size(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Number of phase-space points `N^{2d}`.
    pub fn field_size(&self) -> usize {
        self.size() * self.size()
    }

    /// Weight `h^d` of a grid point.
    pub fn weight(&self) -> T {
        self.h().powi(self.dim as i32)
    }

    /// Weight `N^{-d}` of a phase-space cell.
    pub fn cell_weight(&self) -> T {
        T::one() / T::lit(self.size() as f64)
    }

    pub fn xi_step(&self) -> T {
        T::TAU() / (self.epsilon.abs() * self.length)
    }

    pub fn y_step(&self) -> T {
        self.epsilon.abs() * self.h()
    }

    pub fn eta_step(&self) -> T {
        T::TAU() / self.length
    }

    pub fn centered(&self, i: usize) -> i64 {
        i as i64 - (self.n / 2) as i64
    }

    pub fn coord(&self, i: usize) -> T {
        T::lit(self.centered(i) as f64) * self.h()
    }

    /// Centered multi-index of a flat grid index (axis 0 slowest).
    pub fn multi_index(&self, flat: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        let mut r = flat;
        for a in (0..self.dim).rev() {
            out[a] = self.centered(r % self.n);
            r /= self.n;
        }
        out
    }

    /// Flat index of a centered multi-index, reduced modulo `N` per axis.
    pub fn flat_index(&self, idx: &[i64]) -> usize {
        let n = self.n as i64;
        idx.iter().fold(0usize, |acc, &k| acc * self.n + (k + n / 2).rem_euclid(n) as usize)
    }

    pub fn point(&self, flat: usize) -> Vec<T> {
        self.multi_index(flat).into_iter().map(|k| T::lit(k as f64) * self.h()).collect()
    }

    /// Index of `x_j − k·h` on the cyclic lattice.
    pub fn shifted(&self, flat: usize, k: &[i64]) -> usize {
        let m: Vec<i64> = self.multi_index(flat).iter().zip(k).map(|(a, b)| a - b).collect();
        self.flat_index(&m)
    }

    /// Lattice vector `g/h`, if `g` lies on the lattice.
    pub fn lattice_vector(&self, g: &[BigRational]) -> Result<Vec<i64>> {
        let h = self.h().to_f64().unwrap();
        g.iter()
            .map(|c| {
                let v = c.to_f64().unwrap() / h;
                let r = v.round();
                if (v - r).abs() > 1e-9 {
                    Err(Error::OffLattice)
                } else {
                    Ok(r as i64)
                }
            })
            .collect()
    }

    pub fn sample<F: Fn(&[T]) -> Complex<T>>(&self, f: F) -> GridState<T> {
        (0..self.size()).map(|j| f(&self.point(j))).collect()
    }

    pub fn inner(&self, f: &[Complex<T>], g: &[Complex<T>]) -> Result<Complex<T>> {
        self.check_state(f)?;
        self.check_state(g)?;
        let s: Complex<T> = pairwise_sum(f.len(), &|i| f[i] * g[i].conj());
        Ok(s * self.weight())
    }

    pub fn norm(&self, f: &[Complex<T>]) -> Result<T> {
        Ok(self.inner(f, f)?.re.sqrt())
    }

    pub fn check_state(&self, f: &[Complex<T>]) -> Result<()> {
        if f.len() != self.size() {
            return Err(Error::Dimension { expected: self.size(), got: f.len() });
        }
        Ok(())
    }

    /// `exp(−|x−c|²/(2σ²) + i p·x + i β|x−c|²/2)`, not normalized.
    pub fn gaussian(&self, center: &[T], sigma: T, momentum: &[T], chirp: T) -> GridState<T> {
        self.sample(|x| {
            let mut r2 = T::zero();
            let mut px = T::zero();
            for a in 0..self.dim {
                let dx = x[a] - center[a];
                r2 = r2 + dx * dx;
                px = px + momentum[a] * x[a];
            }
            let two = T::lit(2.0);
            Complex::from_polar((-r2 / (two * sigma * sigma)).exp(), px + chirp * r2 / two)
        })
    }

    pub fn normalized(&self, f: GridState<T>) -> Result<GridState<T>> {
        let n = self.norm(&f)?;
        if n == T::zero() {
            return Err(Error::ZeroWindow);
        }
        Ok(f.into_iter().map(|v| v / n).collect())
    }

    /// The default window: centered Gaussian with `σ = 1`, unit norm on the grid.
    pub fn default_window(&self) -> GridState<T> {
        let zero = vec![T::zero(); self.dim];
        self.normalized(self.gaussian(&zero, T::one(), &zero, T::zero())).expect("nonzero Gaussian")
    }

    fn check_group(&self, alg: &LieAlgebraSpec) -> Result<()> {
        if !alg.is_abelian() || alg.dim() != self.dim {
            return Err(Error::Unsupported(format!(
                "grid backend needs the abelian group of dimension {}, got {}",
                self.dim,
                alg.name()
            )));
        }
        Ok(())
    }

    /// `π(φ, g) f`, with `g` on the lattice.
    pub fn apply_rep(
        &self,
        alg: &LieAlgebraSpec,
        f_space: &FunctionSpaceBasis,
        m: &SemidirectElement,
        f: &[Complex<T>],
    ) -> Result<GridState<T>> {
        self.check_group(alg)?;
        self.check_state(f)?;
        if !f_space.contains(&m.phi) {
            return Err(Error::NotInSpace);
        }
        let k = self.lattice_vector(&m.x)?;
        let phi = m.phi.to_real::<T>();
        Ok((0..self.size())
            .map(|j| {
                let p = phi.eval_unchecked(&self.point(j));
                f[self.shifted(j, &k)] * Complex::from_polar(T::one(), self.epsilon * p)
            })
            .collect())
    }

    /// `π(exp_M θ) f`.
    pub fn apply_rep_exp(
        &self,
        alg: &LieAlgebraSpec,
        f_space: &FunctionSpaceBasis,
        theta: &ThetaImage,
        f: &[Complex<T>],
    ) -> Result<GridState<T>> {
        if (theta.epsilon - self.epsilon.to_f64().unwrap()).abs() > 1e-15 {
            return Err(Error::Unsupported("theta image built for a different epsilon".into()));
        }
        let v = SemidirectVector::new(alg, f_space, theta.phi.clone(), theta.x.clone())?;
        let m = exp_semidirect(alg, f_space, &v)?;
        self.apply_rep(alg, f_space, &m, f)
    }

    pub fn zero_field(&self, side: Side) -> PhaseSpaceField<T> {
        PhaseSpaceField {
            side,
            dim: self.dim,
            n: self.n,
            values: vec![Complex::zero(); self.field_size()],
        }
    }

    /// Samples a field on the given side from physical coordinates
    /// (`(X, ξ)` on `Ξ`, `(y, η)` on `Ξ*`).
    pub fn sample_field<F: Fn(&[T]) -> Complex<T>>(&self, side: Side, f: F) -> PhaseSpaceField<T> {
        let mut field = self.zero_field(side);
        for i in 0..field.values.len() {
            field.values[i] = f(&self.field_point(side, i));
        }
        field
    }

    /// Physical coordinates of a flat phase-space index.
    pub fn field_point(&self, side: Side, flat: usize) -> Vec<T> {
        let s = self.size();
        let (a, b) = (flat / s, flat % s);
        let (first, second) = match side {
            Side::Xi => (self.h(), self.xi_step()),
            Side::XiStar => (self.y_step(), self.eta_step()),
        };
        let mut out: Vec<T> = self.multi_index(a).into_iter().map(|k| T::lit(k as f64) * first).collect();
        out.extend(self.multi_index(b).into_iter().map(|k| T::lit(k as f64) * second));
        out
    }

    /// Unitary transform `Ξ* → Ξ`, `ǎ(X,ξ) = Σ a(y,η) e^{−i(ξ·y − η·X)} N^{-d}`.
    pub fn ft_symbol(&self, u: &PhaseSpaceField<T>) -> Result<PhaseSpaceField<T>> {
        self.check_field(u, Side::XiStar)?;
        let d = self.dim;
        let mut v = u.values.clone();
        let axes: Vec<(usize, Sign)> =
            (0..d).map(|a| (a, Sign::Minus)).chain((0..d).map(|a| (d + a, Sign::Plus))).collect();
        dft_axes(&mut v, &vec![self.n; 2 * d], &axes);
        scale(&mut v, self.cell_weight());
        Ok(PhaseSpaceField { side: Side::Xi, dim: d, n: self.n, values: swap_halves(&v, d, self.n) })
    }

    /// Inverse of [`Self::ft_symbol`].
    pub fn ift_symbol(&self, u: &PhaseSpaceField<T>) -> Result<PhaseSpaceField<T>> {
        self.check_field(u, Side::Xi)?;
        let d = self.dim;
        let mut v = u.values.clone();
        let axes: Vec<(usize, Sign)> =
            (0..d).map(|a| (a, Sign::Minus)).chain((0..d).map(|a| (d + a, Sign::Plus))).collect();
        dft_axes(&mut v, &vec![self.n; 2 * d], &axes);
        scale(&mut v, self.cell_weight());
        Ok(PhaseSpaceField { side: Side::XiStar, dim: d, n: self.n, values: swap_halves(&v, d, self.n) })
    }

    /// `Plus` when `ε > 0`: `ε ξ_m y_j = ±2π mj/N` on the grids.
    pub(crate) fn sign(&self) -> Sign {
        if self.epsilon > T::zero() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn check_field(&self, u: &PhaseSpaceField<T>, side: Side) -> Result<()> {
        if u.side != side {
            return Err(Error::Side { expected: side.name(), got: u.side.name() });
        }
        if u.dim != self.dim || u.n != self.n {
            return Err(Error::Dimension { expected: self.field_size(), got: u.values.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `Ξ = g × g*`: ambiguity functions.
    Xi,
    /// `Ξ*`: symbols and Wigner distributions.
    XiStar,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Xi => "Xi",
            Side::XiStar => "XiStar",
        }
    }
}

/// A complex field on the `2d`-dimensional phase-space grid, row-major with
/// the position (or `y`) block first.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSpaceField<T> {
    pub side: Side,
    pub dim: usize,
    pub n: usize,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> PhaseSpaceField<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn block(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn cell_weight(&self) -> T {
        T::one() / T::lit(self.block() as f64)
    }

    pub fn at(&self, first: usize, second: usize) -> Complex<T> {
        self.values[first * self.block() + second]
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        let s: Complex<T> = pairwise_sum(self.values.len(), &|i| self.values[i] * other.values[i].conj());
        s * self.cell_weight()
    }

    pub fn norm(&self) -> T {
        self.inner(self).re.sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn map<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self { side: self.side, dim: self.dim, n: self.n, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with<F: Fn(Complex<T>, Complex<T>) -> Complex<T>>(&self, other: &Self, f: F) -> Self {
        Self {
            side: self.side,
            dim: self.dim,
            n: self.n,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|v| v * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::build_fg;
    use crate::scalar::rat;
    use crate::RatPoly;

    fn spec() -> GridSpec<f64> {
        GridSpec::new(1, 64, 16.0, 1.0).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::<f64>::new(1, 6, 1.0, 1.0).is_err());
        assert!(GridSpec::<f64>::new(1, 9, 1.0, 1.0).is_err());
        assert!(GridSpec::<f64>::new(3, 8, 1.0, 1.0).is_err());
        assert!(GridSpec::<f64>::new(1, 8, -1.0, 1.0).is_err());
        assert_eq!(GridSpec::<f64>::new(1, 8, 1.0, 0.0), Err(Error::ZeroEpsilon));
    }

    #[test]
    fn inner_product_examples() {
        let s = spec();
        let w = s.default_window();
        assert!((s.inner(&w, &w).unwrap().re - 1.0).abs() < 1e-9);
        let mut a = vec![Complex::zero(); s.size()];
        let mut b = a.clone();
        a[3] = Complex::new(1.0, 0.0);
        b[4] = Complex::new(1.0, 0.0);
        assert_eq!(s.inner(&a, &b).unwrap(), Complex::zero());
        let f = s.gaussian(&[0.5], 1.2, &[0.3], 0.1);
        let g = s.gaussian(&[-0.5], 0.8, &[-0.2], 0.0);
        let fg = s.inner(&f, &g).unwrap();
        let gf = s.inner(&g, &f).unwrap();
        assert!((fg - gf.conj()).norm() < 1e-15);
    }

    #[test]
    fn continuum_gaussian_norm() {
        // ∫ e^{-x²} dx = √π
        let s = spec();
        let g = s.gaussian(&[0.0], 1.0, &[0.0], 0.0);
        assert!((s.norm(&g).unwrap().powi(2) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn apply_rep_examples() {
        let s = spec();
        let alg = LieAlgebraSpec::abelian(1);
        let fs = build_fg(&alg);
        let f = s.gaussian(&[0.25], 0.5, &[0.5], 0.0);
        let id = SemidirectElement::identity(1);
        assert_eq!(s.apply_rep(&alg, &fs, &id, &f).unwrap(), f);
        let shift = SemidirectElement::new(&alg, &fs, RatPoly::zero(1), vec![rat(3, 4)]).unwrap();
        let moved = s.apply_rep(&alg, &fs, &shift, &f).unwrap();
        let expect = s.gaussian(&[1.0], 0.5, &[0.5], 0.0);
        // shifted Gaussian carries the momentum phase e^{-ip g}
        let phase = Complex::from_polar(1.0, -0.5 * 0.75);
        for (a, b) in moved.iter().zip(&expect) {
            assert!((a - b * phase).norm() < 1e-12);
        }
        let m = SemidirectElement::new(&alg, &fs, RatPoly::var(1, 0).scale(&rat(1, 3)), vec![rat(-1, 2)]).unwrap();
        let out = s.apply_rep(&alg, &fs, &m, &f).unwrap();
        assert!((s.norm(&out).unwrap() - s.norm(&f).unwrap()).abs() < 1e-8);
        let off = SemidirectElement::new(&alg, &fs, RatPoly::zero(1), vec![rat(1, 3)]).unwrap();
        assert_eq!(s.apply_rep(&alg, &fs, &off, &f), Err(Error::OffLattice));
    }

    #[test]
    fn apply_rep_exp_matches_weyl_formula() {
        let s = spec();
        let alg = LieAlgebraSpec::abelian(1);
        let fs = build_fg(&alg);
        let a = crate::MagneticPotential::zero(1);
        let f = s.gaussian(&[0.0], 1.0, &[0.0], 0.3);
        let t0 = crate::magnetic::theta_map(&alg, &a, &[rat(0, 1)], &[rat(0, 1)], 1.0).unwrap();
        assert_eq!(s.apply_rep_exp(&alg, &fs, &t0, &f).unwrap(), f);
        let (big_x, xi) = (1.25, 0.7);
        let t = crate::magnetic::theta_map(&alg, &a, &[rat(5, 4)], &[rat(7, 10)], 1.0).unwrap();
        let out = s.apply_rep_exp(&alg, &fs, &t, &f).unwrap();
        for j in 0..s.size() {
            let x = s.coord(j);
            let expect = Complex::from_polar(1.0, xi * (x - big_x / 2.0)) * f[s.shifted(j, &[5])];
            assert!((out[j] - expect).norm() < 1e-12);
        }
        assert!((s.norm(&out).unwrap() - s.norm(&f).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn rep_is_a_homomorphism_on_lattice_elements() {
        let s = spec();
        let alg = LieAlgebraSpec::abelian(1);
        let fs = build_fg(&alg);
        let f = s.gaussian(&[0.0], 1.0, &[0.0], 0.0);
        let m1 = SemidirectElement::new(&alg, &fs, RatPoly::var(1, 0).scale(&rat(2, 3)), vec![rat(1, 2)]).unwrap();
        let m2 = SemidirectElement::new(&alg, &fs, &RatPoly::var(1, 0) + &RatPoly::one(1), vec![rat(-3, 4)]).unwrap();
        let lhs = s.apply_rep(&alg, &fs, &m1, &s.apply_rep(&alg, &fs, &m2, &f).unwrap()).unwrap();
        let rhs = s.apply_rep(&alg, &fs, &m1.mul(&alg, &m2).unwrap(), &f).unwrap();
        let err: f64 = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn fourier_examples() {
        let s = spec();
        let g = s.sample_field(Side::XiStar, |z| Complex::new((-(z[0] * z[0] + z[1] * z[1]) / 2.0).exp(), 0.0));
        let gt = s.ft_symbol(&g).unwrap();
        assert_eq!(gt.side, Side::Xi);
        let expect = s.sample_field(Side::Xi, |z| Complex::new((-(z[0] * z[0] + z[1] * z[1]) / 2.0).exp(), 0.0));
        assert!(gt.sub(&expect).max_abs() < 1e-9);
        assert!((gt.norm() - g.norm()).abs() < 1e-12);
        let back = s.ift_symbol(&gt).unwrap();
        assert!(back.sub(&g).max_abs() < 1e-12);
        assert!(s.ift_symbol(&g).is_err());
    }

    #[test]
    fn fourier_kernel_orientation() {
        // a = e^{i(ξ0·y − η0·X0)}-type plane wave on Ξ* concentrates ǎ at one Ξ point
        let s = GridSpec::<f64>::new(1, 8, 4.0, 1.0).unwrap();
        let (kx, mx) = (2i64, -1i64);
        let (x0, xi0) = (kx as f64 * s.h(), mx as f64 * s.xi_step());
        let a = s.sample_field(Side::XiStar, |z| Complex::from_polar(1.0, xi0 * z[0] - z[1] * x0));
        let at = s.ft_symbol(&a).unwrap();
        let peak = s.flat_index(&[kx]) * s.size() + s.flat_index(&[mx]);
        for (i, v) in at.values.iter().enumerate() {
            let expect = if i == peak { s.size() as f64 } else { 0.0 };
            assert!((v - Complex::new(expect, 0.0)).norm() < 1e-12, "{i}");
        }
    }
}
