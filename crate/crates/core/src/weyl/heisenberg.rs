//! Ambiguity functions on the quadrature backend, for nonabelian groups.
//!
//! The formula route evaluates, for each `X` node,
//! `A(X, ξ) = ∫ e^{iε⟨ξ,Y⟩} e^{−iετ_A(X,x)} f(x) conj φ((−X)∗x) dY`,
//! `x = −Ψ_X⁻¹(Y)`, on a tensor Gauss–Legendre rule in `Y`; the kernel
//! factorizes over axes, so the transform to the `ξ` nodes is done one axis
//! at a time. The direct route evaluates `(f | π(exp_M θ^A(X,ξ))φ)` on the
//! `x` rule from the full phase polynomial.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::magnetic::{exp_theta_phase, tau_exponent_sym, MagneticPotential};
use crate::nilpotent::LieAlgebraSpec;
use crate::poly::{PolyVector, Polynomial};
use crate::repspace::quadrature::{QuadratureSpec, StateExpr, TensorRule};
use crate::scalar::pairwise_sum;

#[derive(Clone, Debug)]
pub struct QuadratureAmbiguity {
    alg: LieAlgebraSpec,
    quad: QuadratureSpec,
    xi_rule: TensorRule,
    /// phase of `exp_M θ^A` in `(x, X, ξ)`
    phase: Polynomial<f64>,
    /// `Ψ_X⁻¹` in `(Y, X)`
    psi_inv: PolyVector<f64>,
    /// `τ_A` exponent in `(x, X)`
    tau: Polynomial<f64>,
    /// group law in `(a, b)`
    law: PolyVector<f64>,
}

/// Orthogonality measurement: `(A_{φ₁}f₁ | A_{φ₂}f₂)` against `(f₁|f₂)(φ₂|φ₁)`.
#[derive(Clone, Copy, Debug)]
pub struct OrthogonalityMeasurement {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl OrthogonalityMeasurement {
    pub fn relative_error(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.rhs.norm()
    }
}

impl QuadratureAmbiguity {
    /// `quad` carries the `X`/`Y` rule; `ξ` uses the same node count and box.
    pub fn new(alg: &LieAlgebraSpec, a: &MagneticPotential, quad: QuadratureSpec) -> Result<Self> {
        let d = alg.dim();
        if quad.dim() != d || a.dim() != d {
            return Err(Error::Dimension { expected: d, got: quad.dim() });
        }
        let big_x = PolyVector::vars(2 * d, d..2 * d);
        Ok(Self {
            alg: alg.clone(),
            xi_rule: TensorRule::new(d, quad.nodes(), quad.half_width()),
            phase: exp_theta_phase(alg, a).to_real(),
            psi_inv: alg.psi_inverse_sym(&big_x)?.to_real(),
            tau: tau_exponent_sym(alg, a, &big_x).to_real(),
            law: alg.group_law_map().to_real(),
            quad,
        })
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn xi_rule(&self) -> &TensorRule {
        &self.xi_rule
    }

    fn translate_back(&self, big_x: &[f64], x: &[f64]) -> Vec<f64> {
        let mut arg: Vec<f64> = big_x.iter().map(|v| -v).collect();
        arg.extend_from_slice(x);
        self.law.components().iter().map(|p| p.eval_unchecked(&arg)).collect()
    }

    /// `(f | π(exp_M θ^A(X, ξ))φ)` on the `x` rule.
    pub fn direct_at(&self, f: &StateExpr, phi: &StateExpr, big_x: &[f64], xi: &[f64]) -> Complex64 {
        let rule = self.quad.rule();
        let eps = self.quad.epsilon();
        pairwise_sum(rule.len(), &|i| {
            let (x, w) = rule.point(i);
            let mut arg = x.clone();
            arg.extend_from_slice(big_x);
            arg.extend_from_slice(xi);
            let p = self.phase.eval_unchecked(&arg);
            let moved = phi.eval(&self.translate_back(big_x, &x)) * Complex64::from_polar(1.0, eps * p);
            f.eval(&x) * moved.conj() * w
        })
    }

    /// `ξ ↦ A(X, ξ)` on the `ξ` rule for one `X`, by the formula route.
    pub fn formula_row(&self, f: &StateExpr, phi: &StateExpr, big_x: &[f64]) -> Vec<Complex64> {
        let d = self.alg.dim();
        let rule = self.quad.rule();
        let eps = self.quad.epsilon();
        let g: Vec<Complex64> = (0..rule.len())
            .map(|i| {
                let (y, w) = rule.point(i);
                let mut arg = y.clone();
                arg.extend_from_slice(big_x);
                let x: Vec<f64> = self.psi_inv.components().iter().map(|p| -p.eval_unchecked(&arg)).collect();
                let mut targ = x.clone();
                targ.extend_from_slice(big_x);
                let t = self.tau.eval_unchecked(&targ);
                f.eval(&x) * phi.eval(&self.translate_back(big_x, &x)).conj() * Complex64::from_polar(1.0, -eps * t) * w
            })
            .collect();
        separable_transform(g, d, &rule.axis_nodes, &self.xi_rule.axis_nodes, eps)
    }

    /// `A(X, ξ)` at one point, by the formula route without the separable
    /// transform.
    pub fn formula_at(&self, f: &StateExpr, phi: &StateExpr, big_x: &[f64], xi: &[f64]) -> Complex64 {
        let rule = self.quad.rule();
        let eps = self.quad.epsilon();
        pairwise_sum(rule.len(), &|i| {
            let (y, w) = rule.point(i);
            let mut arg = y.clone();
            arg.extend_from_slice(big_x);
            let x: Vec<f64> = self.psi_inv.components().iter().map(|p| -p.eval_unchecked(&arg)).collect();
            let mut targ = x.clone();
            targ.extend_from_slice(big_x);
            let t = self.tau.eval_unchecked(&targ);
            let dot: f64 = xi.iter().zip(&y).map(|(a, b)| a * b).sum();
            f.eval(&x) * phi.eval(&self.translate_back(big_x, &x)).conj() * Complex64::from_polar(1.0, eps * (dot - t)) * w
        })
    }

    /// `∫_Ξ A_{φ₁}f₁ conj(A_{φ₂}f₂) (|ε|/2π)^d dX dξ` over the node box.
    pub fn orthogonality(&self, f1: &StateExpr, phi1: &StateExpr, f2: &StateExpr, phi2: &StateExpr) -> OrthogonalityMeasurement {
        let d = self.alg.dim();
        let rule = self.quad.rule();
        let xi_w: Vec<f64> = (0..self.xi_rule.len()).map(|i| self.xi_rule.point(i).1).collect();
        let measure = (self.quad.epsilon().abs() / std::f64::consts::TAU).powi(d as i32);
        let rows: Vec<Complex64> = (0..rule.len())
            .map(|i| {
                let (x, w) = rule.point(i);
                let a1 = self.formula_row(f1, phi1, &x);
                let a2 = self.formula_row(f2, phi2, &x);
                pairwise_sum(a1.len(), &|j| a1[j] * a2[j].conj() * xi_w[j]) * w
            })
            .collect();
        let lhs = pairwise_sum(rows.len(), &|i| rows[i]) * measure;
        let rhs = self.quad.inner(f1, f2) * self.quad.inner(phi2, phi1);
        OrthogonalityMeasurement { lhs, rhs }
    }
}

/// `out[p] = Σ_q in[q] Π_a e^{iε ξ_{p_a} y_{q_a}}` over tensor grids.
fn separable_transform(mut data: Vec<Complex64>, d: usize, y: &[f64], xi: &[f64], eps: f64) -> Vec<Complex64> {
    let ny = y.len();
    let nx = xi.len();
    let kernel: Vec<Complex64> =
        (0..nx * ny).map(|i| Complex64::from_polar(1.0, eps * xi[i / ny] * y[i % ny])).collect();
    let mut shape = vec![ny; d];
    for axis in 0..d {
        let outer: usize = shape[..axis].iter().product();
        let inner: usize = shape[axis + 1..].iter().product();
        let mut out = vec![Complex64::new(0.0, 0.0); outer * nx * inner];
        for o in 0..outer {
            for p in 0..nx {
                for q in 0..ny {
                    let k = kernel[p * ny + q];
                    let src = (o * ny + q) * inner;
                    let dst = (o * nx + p) * inner;
                    for r in 0..inner {
                        out[dst + r] += data[src + r] * k;
                    }
                }
            }
        }
        shape[axis] = nx;
        data = out;
    }
    data
}
