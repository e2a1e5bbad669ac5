//! Localized Weyl calculus on the grid backend.
//!
//! For `Z = (X_k, ξ_m)` on the `Ξ`-grid the operator `Π(Z) = π(exp_M θ^A(Z))`
//! is a shift with a phase:
//!
//! `(Π(Z)ψ)[i] = e^{iε(ξ_m·(x_i − X_k/2) + α(x_i, X_k))} ψ[i ⊖ k]`,
//!
//! where `α(x, X) = ∫₀¹ ⟨A, X⟩(x − uX) du` is the magnetic part of the phase
//! of `exp_M θ^A(X, ξ)`. Because `εξ_m x_i = ±2π m·i/N`, every sum over the
//! `ξ`-family is a DFT, and the quantization map is block diagonal in `k`.

pub mod formula;
pub mod heisenberg;
pub mod operator;

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::magnetic::{exp_theta_phase, MagneticPotential};
use crate::nilpotent::{FunctionSpaceBasis, LieAlgebraSpec, SemidirectElement};
use crate::poly::Polynomial;
use crate::repspace::fourier::{dft_axes, Sign};
use crate::repspace::{GridSpec, PhaseSpaceField, Side};
use crate::scalar::{pairwise_sum, Real};
use crate::RatPoly;

pub use operator::{numerical_rank, HsOperator};

/// Above this Gram deviation `dequantize` leaves the adjoint fast path.
pub const ADJOINT_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct QuantizerContext<T> {
    spec: GridSpec<T>,
    alg: LieAlgebraSpec,
    potential: MagneticPotential,
    /// `α` in the variables `(x, X)`.
    alpha: Polynomial<T>,
    /// `e^{iεα(x_i, X_k)}`, row `k`, column `i`.
    d_table: Vec<Complex<T>>,
    deviation: f64,
    lsq_fallback: bool,
}

impl<T: Real> QuantizerContext<T> {
    pub fn new(spec: GridSpec<T>, potential: MagneticPotential) -> Result<Self> {
        let d = spec.dim();
        if potential.dim() != d {
            return Err(Error::Dimension { expected: d, got: potential.dim() });
        }
        let alg = LieAlgebraSpec::abelian(d);
        let phase = exp_theta_phase(&alg, &potential);
        let alpha = split_phase(&phase, d)?;
        let mut ctx = Self {
            alpha: alpha.to_real::<T>(),
            spec,
            alg,
            potential,
            d_table: Vec::new(),
            deviation: f64::NAN,
            lsq_fallback: true,
        };
        let s = ctx.spec.size();
        let mut table = Vec::with_capacity(s * s);
        for kf in 0..s {
            table.extend(ctx.magnetic_row(&ctx.spec.multi_index(kf)));
        }
        ctx.d_table = table;
        ctx.deviation = ctx.measure_deviation();
        Ok(ctx)
    }

    pub fn with_lsq_fallback(mut self, enabled: bool) -> Self {
        self.lsq_fallback = enabled;
        self
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn algebra(&self) -> &LieAlgebraSpec {
        &self.alg
    }

    pub fn potential(&self) -> &MagneticPotential {
        &self.potential
    }

    /// Magnetic phase `α(x, X)`.
    pub fn alpha(&self) -> &Polynomial<T> {
        &self.alpha
    }

    /// `max_k ‖G_k − I‖_max` for the Gram blocks of the quantization map in
    /// the Fourier basis of symbols.
    pub fn deviation(&self) -> f64 {
        self.deviation
    }

    fn eps_sign(&self) -> i64 {
        if self.spec.epsilon() > T::zero() {
            1
        } else {
            -1
        }
    }

    fn sign(&self) -> Sign {
        self.spec.sign()
    }

    /// `e^{iε ξ_m·(x_i − X_k/2)}` from centered integer indices.
    fn plane_phase(&self, m: &[i64], i: &[i64], k: &[i64]) -> Complex<T> {
        let n = self.spec.n() as i64;
        let mut t = 0i64;
        for a in 0..m.len() {
            t += 2 * m[a] * i[a] - m[a] * k[a];
        }
        let t = (self.eps_sign() * t).rem_euclid(2 * n);
        Complex::from_polar(T::one(), T::PI() * T::lit(t as f64) / T::lit(n as f64))
    }

    /// `e^{−iε ξ_m·X_k/2}`.
    fn half_phase(&self, m: &[i64], k: &[i64]) -> Complex<T> {
        let zero = vec![0; m.len()];
        self.plane_phase(m, &zero, k)
    }

    fn magnetic_row(&self, k: &[i64]) -> Vec<Complex<T>> {
        let s = self.spec.size();
        let h = self.spec.h();
        let big_x: Vec<T> = k.iter().map(|&c| T::lit(c as f64) * h).collect();
        (0..s)
            .map(|i| {
                let mut v = self.spec.point(i);
                v.extend_from_slice(&big_x);
                Complex::from_polar(T::one(), self.spec.epsilon() * self.alpha.eval_unchecked(&v))
            })
            .collect()
    }

    fn in_window(&self, k: &[i64]) -> bool {
        let half = (self.spec.n() / 2) as i64;
        k.iter().all(|&c| -half <= c && c < half)
    }

    /// `e^{iεα(·, X_k)}` on the grid, for any lattice vector `k`.
    pub fn magnetic_phases(&self, k: &[i64]) -> Vec<Complex<T>> {
        if self.in_window(k) {
            let s = self.spec.size();
            let kf = self.spec.flat_index(k);
            self.d_table[kf * s..(kf + 1) * s].to_vec()
        } else {
            self.magnetic_row(k)
        }
    }

    /// `c(m) = Σ_i g[i] e^{−iεξ_m·(x_i − X_k/2)}`.
    fn analysis(&self, mut g: Vec<Complex<T>>, k: &[i64]) -> Vec<Complex<T>> {
        let d = self.spec.dim();
        let axes: Vec<(usize, Sign)> = (0..d).map(|a| (a, self.sign().flip())).collect();
        dft_axes(&mut g, &vec![self.spec.n(); d], &axes);
        for (mf, v) in g.iter_mut().enumerate() {
            *v = *v * self.half_phase(&self.spec.multi_index(mf), k).conj();
        }
        g
    }

    /// `s[i] = Σ_m c(m) e^{iεξ_m·(x_i − X_k/2)}`.
    fn synthesis(&self, mut c: Vec<Complex<T>>, k: &[i64]) -> Vec<Complex<T>> {
        let d = self.spec.dim();
        for (mf, v) in c.iter_mut().enumerate() {
            *v = *v * self.half_phase(&self.spec.multi_index(mf), k);
        }
        let axes: Vec<(usize, Sign)> = (0..d).map(|a| (a, self.sign())).collect();
        dft_axes(&mut c, &vec![self.spec.n(); d], &axes);
        c
    }

    fn measure_deviation(&self) -> f64 {
        let s = self.spec.size();
        let d = self.spec.dim();
        let inv = T::one() / T::lit(s as f64);
        let mut worst = 0.0f64;
        for kf in 0..s {
            let mut w: Vec<Complex<T>> =
                self.d_table[kf * s..(kf + 1) * s].iter().map(|v| Complex::new(v.norm_sqr(), T::zero())).collect();
            let axes: Vec<(usize, Sign)> = (0..d).map(|a| (a, self.sign())).collect();
            dft_axes(&mut w, &vec![self.spec.n(); d], &axes);
            let zero = self.spec.flat_index(&vec![0; d]);
            for (j, v) in w.iter().enumerate() {
                let g = *v * inv;
                let dev = if j == zero { (g - Complex::new(T::one(), T::zero())).norm() } else { g.norm() };
                worst = worst.max(dev.approx_f64());
            }
        }
        worst
    }

    fn check_window(&self, phi: &[Complex<T>]) -> Result<()> {
        self.spec.check_state(phi)?;
        if self.spec.norm(phi)? == T::zero() {
            return Err(Error::ZeroWindow);
        }
        Ok(())
    }

    fn check_unit(&self, phi: &[Complex<T>]) -> Result<()> {
        self.check_window(phi)?;
        let n = self.spec.norm(phi)?.approx_f64();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::Unnormalized(n));
        }
        Ok(())
    }

    /// The diagonal `i ↦ Π(Z)[i, i⊖k]` for any lattice point `Z = (X_k, ξ_m)`.
    pub fn pi_diagonal(&self, k: &[i64], m: &[i64]) -> Vec<Complex<T>> {
        let dk = self.magnetic_phases(k);
        (0..self.spec.size()).map(|i| dk[i] * self.plane_phase(m, &self.spec.multi_index(i), k)).collect()
    }

    pub fn pi_apply(&self, k: &[i64], m: &[i64], psi: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.spec.check_state(psi)?;
        let diag = self.pi_diagonal(k, m);
        Ok((0..psi.len()).map(|i| diag[i] * psi[self.spec.shifted(i, k)]).collect())
    }

    pub fn pi_matrix(&self, k: &[i64], m: &[i64]) -> HsOperator<T> {
        let s = self.spec.size();
        let diag = self.pi_diagonal(k, m);
        let mut out = HsOperator::zeros(s);
        for (i, v) in diag.into_iter().enumerate() {
            out.set(i, self.spec.shifted(i, k), v);
        }
        out
    }

    /// `(f | Π(Z)φ)` at every point of the `Ξ`-grid.
    pub fn ambiguity(&self, f: &[Complex<T>], phi: &[Complex<T>]) -> Result<PhaseSpaceField<T>> {
        self.spec.check_state(f)?;
        self.check_window(phi)?;
        let s = self.spec.size();
        let w = self.spec.weight();
        let mut field = self.spec.zero_field(Side::Xi);
        for kf in 0..s {
            let k = self.spec.multi_index(kf);
            let dk = &self.d_table[kf * s..(kf + 1) * s];
            let g: Vec<Complex<T>> = (0..s).map(|i| f[i] * (phi[self.spec.shifted(i, &k)] * dk[i]).conj() * w).collect();
            field.values[kf * s..(kf + 1) * s].copy_from_slice(&self.analysis(g, &k));
        }
        Ok(field)
    }

    /// `(f | Π(Z)φ)` at a single lattice point, by direct summation.
    pub fn ambiguity_at(&self, f: &[Complex<T>], phi: &[Complex<T>], k: &[i64], m: &[i64]) -> Result<Complex<T>> {
        self.spec.check_state(f)?;
        self.check_window(phi)?;
        let moved = self.pi_apply(k, m, phi)?;
        self.spec.inner(f, &moved)
    }

    /// Cross-Wigner distribution: the symbol whose transform is the ambiguity.
    pub fn wigner(&self, f: &[Complex<T>], phi: &[Complex<T>]) -> Result<PhaseSpaceField<T>> {
        self.spec.ift_symbol(&self.ambiguity(f, phi)?)
    }

    /// `Op(a) = Σ_Z ǎ(Z) Π(Z) ΔΞ`.
    pub fn quantize(&self, a: &PhaseSpaceField<T>) -> Result<HsOperator<T>> {
        let check = self.spec.ft_symbol(a)?;
        let s = self.spec.size();
        let mut out = HsOperator::zeros(s);
        for kf in 0..s {
            let k = self.spec.multi_index(kf);
            let col = self.quantized_diagonal(&check, kf, &k);
            for (i, v) in col.into_iter().enumerate() {
                out.set(i, self.spec.shifted(i, &k), v);
            }
        }
        Ok(out)
    }

    fn quantized_diagonal(&self, check: &PhaseSpaceField<T>, kf: usize, k: &[i64]) -> Vec<Complex<T>> {
        let s = self.spec.size();
        let inv = T::one() / T::lit(s as f64);
        let syn = self.synthesis(check.values[kf * s..(kf + 1) * s].to_vec(), k);
        let dk = &self.d_table[kf * s..(kf + 1) * s];
        syn.iter().zip(dk).map(|(v, dv)| *v * *dv * inv).collect()
    }

    /// `Op(a)ψ` without materializing the operator.
    pub fn quantize_apply(&self, a: &PhaseSpaceField<T>, psi: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.spec.check_state(psi)?;
        let check = self.spec.ft_symbol(a)?;
        let s = self.spec.size();
        let mut out = vec![Complex::zero(); s];
        for kf in 0..s {
            let k = self.spec.multi_index(kf);
            let col = self.quantized_diagonal(&check, kf, &k);
            for (i, v) in col.into_iter().enumerate() {
                out[i] = out[i] + v * psi[self.spec.shifted(i, &k)];
            }
        }
        Ok(out)
    }

    /// Inverse of [`Self::quantize`]: the scaled adjoint when the measured
    /// deviation is below [`ADJOINT_THRESHOLD`], otherwise a per-block
    /// least-squares solve.
    pub fn dequantize(&self, t: &HsOperator<T>) -> Result<PhaseSpaceField<T>> {
        let s = self.spec.size();
        if t.n() != s {
            return Err(Error::Dimension { expected: s, got: t.n() });
        }
        let use_lsq = !(self.deviation <= ADJOINT_THRESHOLD);
        if use_lsq && !self.lsq_fallback {
            return Err(Error::Deviation(self.deviation));
        }
        self.dequantize_with(t, use_lsq)
    }

    pub(crate) fn dequantize_with(&self, t: &HsOperator<T>, use_lsq: bool) -> Result<PhaseSpaceField<T>> {
        let s = self.spec.size();
        let mut check = self.spec.zero_field(Side::Xi);
        for kf in 0..s {
            let k = self.spec.multi_index(kf);
            let dk = &self.d_table[kf * s..(kf + 1) * s];
            let g: Vec<Complex<T>> = (0..s).map(|i| t.get(i, self.spec.shifted(i, &k)) * dk[i].conj()).collect();
            let mut c = self.analysis(g, &k);
            if use_lsq {
                c = self.solve_block(kf, &k, &c)?;
            }
            check.values[kf * s..(kf + 1) * s].copy_from_slice(&c);
        }
        self.spec.ift_symbol(&check)
    }

    fn solve_block(&self, kf: usize, k: &[i64], rhs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let s = self.spec.size();
        let dk = &self.d_table[kf * s..(kf + 1) * s];
        let basis = |m: usize, i: usize| -> Complex64 {
            let p = dk[i] * self.plane_phase(&self.spec.multi_index(m), &self.spec.multi_index(i), k);
            Complex64::new(p.re.approx_f64(), p.im.approx_f64())
        };
        let inv = 1.0 / s as f64;
        let gram = DMatrix::from_fn(s, s, |m, mp| {
            (0..s).map(|i| basis(m, i).conj() * basis(mp, i)).sum::<Complex64>() * inv
        });
        let b = nalgebra::DVector::from_iterator(s, rhs.iter().map(|v| Complex64::new(v.re.approx_f64(), v.im.approx_f64())));
        let x = gram.lu().solve(&b).ok_or(Error::Deviation(self.deviation))?;
        Ok(x.iter().map(|v| Complex::new(T::lit(v.re), T::lit(v.im))).collect())
    }

    /// The quantization map as a dense matrix from the orthonormal symbol
    /// basis `N^{d/2} δ_ζ` to operators in Frobenius coordinates.
    pub fn quantization_matrix(&self) -> Result<DenseQuantization> {
        let s = self.spec.size();
        if s * s > 1024 {
            return Err(Error::Unsupported(format!("dense quantization map needs N^(2d) <= 1024, got {}", s * s)));
        }
        let cols = s * s;
        let mut data = vec![Complex64::zero(); cols * cols];
        let amp = T::lit((s as f64).sqrt());
        for z in 0..cols {
            let mut a = self.spec.zero_field(Side::XiStar);
            a.values[z] = Complex::new(amp, T::zero());
            let op = self.quantize(&a)?;
            for (r, v) in op.data().iter().enumerate() {
                data[r * cols + z] = Complex64::new(v.re.approx_f64(), v.im.approx_f64());
            }
        }
        Ok(DenseQuantization { size: cols, data })
    }

    /// `a # b`, the symbol of `Op(a)Op(b)`.
    pub fn moyal(&self, a: &PhaseSpaceField<T>, b: &PhaseSpaceField<T>) -> Result<PhaseSpaceField<T>> {
        self.dequantize(&self.quantize(a)?.matmul(&self.quantize(b)?)?)
    }

    /// `e_Z(y, η) = e^{i(ξ·y − η·X)}`, whose quantization is `Π(Z)`.
    pub fn plane_wave_symbol(&self, k: &[i64], m: &[i64]) -> PhaseSpaceField<T> {
        let n = self.spec.n() as i64;
        let d = self.spec.dim();
        let s = self.spec.size();
        let mut out = self.spec.zero_field(Side::XiStar);
        for (z, v) in out.values.iter_mut().enumerate() {
            let y = self.spec.multi_index(z / s);
            let eta = self.spec.multi_index(z % s);
            let mut t = 0i64;
            for a in 0..d {
                t += m[a] * y[a] - eta[a] * k[a];
            }
            let t = t.rem_euclid(n);
            *v = Complex::from_polar(T::one(), T::TAU() * T::lit(t as f64) / T::lit(n as f64));
        }
        out
    }

    /// Matrix of `π(φ, g)` for a lattice element.
    pub fn rep_matrix(&self, f_space: &FunctionSpaceBasis, m: &SemidirectElement) -> Result<HsOperator<T>> {
        if !f_space.contains(&m.phi) {
            return Err(Error::NotInSpace);
        }
        let k = self.spec.lattice_vector(&m.x)?;
        let phi = m.phi.to_real::<T>();
        let s = self.spec.size();
        let mut out = HsOperator::zeros(s);
        for j in 0..s {
            let p = phi.eval_unchecked(&self.spec.point(j));
            out.set(j, self.spec.shifted(j, &k), Complex::from_polar(T::one(), self.spec.epsilon() * p));
        }
        Ok(out)
    }

    /// `π^⋉(m₁, m₂)T = π(m₁m₂) T π(m₁)⁻¹`.
    pub fn pi_ltimes(
        &self,
        f_space: &FunctionSpaceBasis,
        m1: &SemidirectElement,
        m2: &SemidirectElement,
        t: &HsOperator<T>,
    ) -> Result<HsOperator<T>> {
        let prod = m1.mul(&self.alg, m2)?;
        let left = self.rep_matrix(f_space, &prod)?;
        let right = self.rep_matrix(f_space, m1)?.adjoint();
        left.matmul(t)?.matmul(&right)
    }

    /// `(Op(F) | Π(Z₁+Z₂) Op(Φ) Π(Z₁)⁻¹)_HS` on `Ξ × Ξ`; `Z₁ + Z₂` is taken
    /// at its true coordinates, outside the grid window when necessary.
    pub fn symbol_ambiguity(&self, f_sym: &PhaseSpaceField<T>, phi_sym: &PhaseSpaceField<T>) -> Result<PairField<T>> {
        let op_f = self.quantize(f_sym)?;
        let op_phi = self.quantize(phi_sym)?;
        if op_phi.hs_norm() == T::zero() {
            return Err(Error::ZeroWindow);
        }
        let s = self.spec.size();
        let z_count = s * s;
        let mut values = vec![Complex::zero(); z_count * z_count];
        for z1 in 0..z_count {
            let k1 = self.spec.multi_index(z1 / s);
            let m1 = self.spec.multi_index(z1 % s);
            let p1 = self.pi_diagonal(&k1, &m1);
            let col: Vec<usize> = (0..s).map(|j| self.spec.shifted(j, &k1)).collect();
            for k2f in 0..s {
                let k2 = self.spec.multi_index(k2f);
                let kw: Vec<i64> = k1.iter().zip(&k2).map(|(a, b)| a + b).collect();
                let row: Vec<usize> = (0..s).map(|i| self.spec.shifted(i, &kw)).collect();
                let b: Vec<Complex<T>> = (0..s)
                    .map(|i| pairwise_sum(s, &|j| op_f.get(i, j) * op_phi.get(row[i], col[j]).conj() * p1[j]))
                    .collect();
                let dw = self.magnetic_phases(&kw);
                for m2f in 0..s {
                    let m2 = self.spec.multi_index(m2f);
                    let mw: Vec<i64> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
                    let v: Complex<T> = pairwise_sum(s, &|i| {
                        (dw[i] * self.plane_phase(&mw, &self.spec.multi_index(i), &kw)).conj() * b[i]
                    });
                    values[z1 * z_count + k2f * s + m2f] = v;
                }
            }
        }
        Ok(PairField { dim: self.spec.dim(), n: self.spec.n(), values })
    }

    /// `Σ_Z F(Z) Π(Z)φ₀ ΔΞ` for a unit window `φ₀`.
    pub fn reconstruct(&self, field: &PhaseSpaceField<T>, phi0: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_unit(phi0)?;
        self.synthesize(field, phi0)
    }

    /// `Σ_Z F(Z) Π(Z)φ ΔΞ` for any window; `synthesize(A_{φ₀}f, φ) = (φ|φ₀)f`.
    pub fn synthesize(&self, field: &PhaseSpaceField<T>, phi0: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.spec.check_field(field, Side::Xi)?;
        self.spec.check_state(phi0)?;
        let s = self.spec.size();
        let inv = T::one() / T::lit(s as f64);
        let mut out = vec![Complex::zero(); s];
        for kf in 0..s {
            let k = self.spec.multi_index(kf);
            let syn = self.synthesis(field.values[kf * s..(kf + 1) * s].to_vec(), &k);
            let dk = &self.d_table[kf * s..(kf + 1) * s];
            for j in 0..s {
                out[j] = out[j] + syn[j] * dk[j] * phi0[self.spec.shifted(j, &k)] * inv;
            }
        }
        Ok(out)
    }

    /// `(PF)(Z) = Σ_W K(W, Z) F(W) ΔΞ`, applied as analysis after synthesis.
    pub fn project(&self, field: &PhaseSpaceField<T>, phi0: &[Complex<T>]) -> Result<PhaseSpaceField<T>> {
        let f = self.reconstruct(field, phi0)?;
        self.ambiguity(&f, phi0)
    }

    /// `K(Z₁, Z₂) = (Π(Z₁)φ₀ | Π(Z₂)φ₀)` on the whole `Ξ`-grid.
    pub fn kernel(&self, phi0: &[Complex<T>]) -> Result<KernelMatrix<T>> {
        self.check_unit(phi0)?;
        let s = self.spec.size();
        let z_count = s * s;
        if z_count > 4096 {
            return Err(Error::Unsupported(format!("kernel matrix needs N^(2d) <= 4096, got {z_count}")));
        }
        let vecs: Vec<Vec<Complex<T>>> = (0..z_count)
            .map(|z| self.pi_apply(&self.spec.multi_index(z / s), &self.spec.multi_index(z % s), phi0))
            .collect::<Result<_>>()?;
        let w = self.spec.weight();
        let mut values = vec![Complex::zero(); z_count * z_count];
        for a in 0..z_count {
            for b in 0..z_count {
                values[a * z_count + b] = pairwise_sum(s, &|i| vecs[a][i] * vecs[b][i].conj()) * w;
            }
        }
        Ok(KernelMatrix { size: z_count, cell_weight: self.spec.cell_weight(), values })
    }
}

/// Splits the phase of `exp_M θ^A(X, ξ)` in variables `(x, X, ξ)` into the
/// `ξ`-linear part, which must be `ξ·(x − X/2)`, and the magnetic remainder.
fn split_phase(phase: &RatPoly, d: usize) -> Result<RatPoly> {
    let parts = phase.split_trailing(d);
    let mut alpha = RatPoly::zero(2 * d);
    for (e, p) in parts {
        let total: u32 = e.iter().sum();
        if total == 0 {
            alpha = p;
            continue;
        }
        let a = e.iter().position(|&v| v == 1);
        let expect = match (total, a) {
            (1, Some(a)) => &RatPoly::var(2 * d, a) - &RatPoly::var(2 * d, d + a).scale(&crate::scalar::rat(1, 2)),
            _ => return Err(Error::Unsupported("phase is not affine in the momentum".into())),
        };
        if p != expect {
            return Err(Error::Unsupported("momentum part of the phase is not ξ·(x − X/2)".into()));
        }
    }
    Ok(alpha)
}

/// The quantization map materialized as a square matrix.
#[derive(Clone, Debug)]
pub struct DenseQuantization {
    pub size: usize,
    pub data: Vec<Complex64>,
}

impl DenseQuantization {
    /// `‖Q†Q − I‖_max`.
    pub fn gram_deviation(&self) -> f64 {
        let n = self.size;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let g: Complex64 = pairwise_sum(n, &|r| self.data[r * n + a].conj() * self.data[r * n + b]);
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Numerical rank with singular values below `rel_tol · σ_max` dropped.
    pub fn rank(&self, rel_tol: f64) -> (usize, Vec<f64>) {
        numerical_rank(self.size, self.size, &self.data, rel_tol)
    }
}

/// A field on `Ξ × Ξ`, indexed `z₁ · N^{2d} + z₂` with each `z` laid out as
/// on the `Ξ`-grid.
#[derive(Clone, Debug, PartialEq)]
pub struct PairField<T> {
    pub dim: usize,
    pub n: usize,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> PairField<T> {
    pub fn factor_len(&self) -> usize {
        self.n.pow(2 * self.dim as u32)
    }

    pub fn at(&self, z1: usize, z2: usize) -> Complex<T> {
        self.values[z1 * self.factor_len() + z2]
    }

    /// Weight `N^{-d}` per factor.
    pub fn cell_weight(&self) -> T {
        T::one() / T::lit(self.n.pow(self.dim as u32) as f64)
    }

    pub fn norm(&self) -> T {
        let w = self.cell_weight();
        (pairwise_sum(self.values.len(), &|i| self.values[i].norm_sqr()) * w * w).sqrt()
    }
}

/// Reproducing kernel on the `Ξ`-grid.
#[derive(Clone, Debug)]
pub struct KernelMatrix<T> {
    pub size: usize,
    pub cell_weight: T,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> KernelMatrix<T> {
    pub fn at(&self, z1: usize, z2: usize) -> Complex<T> {
        self.values[z1 * self.size + z2]
    }

    /// `P[Z, W] = K(W, Z) ΔΞ`.
    pub fn projector(&self) -> Vec<Complex<T>> {
        let n = self.size;
        let mut p = vec![Complex::zero(); n * n];
        for z in 0..n {
            for w in 0..n {
                p[z * n + w] = self.values[w * n + z] * self.cell_weight;
            }
        }
        p
    }

    pub fn apply(&self, field: &PhaseSpaceField<T>) -> PhaseSpaceField<T> {
        let n = self.size;
        let mut out = field.clone();
        out.values = (0..n)
            .map(|z| pairwise_sum(n, &|w| self.values[w * n + z] * field.values[w]) * self.cell_weight)
            .collect();
        out
    }
}

#[cfg(test)]
mod tests;
