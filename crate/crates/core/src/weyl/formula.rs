//! The ambiguity function through the substitution `Y = Ψ_X(−x)`:
//!
//! `A(X, ξ) = Σ_x e^{iε⟨ξ, Y(x)⟩} e^{−iετ_A(X, x)} f(x) conj φ((−X)∗x) h^d`
//!
//! with `x = −Ψ_X⁻¹(Y)`. Unlike [`super::QuantizerContext::ambiguity`] this
//! route never forms the phase of `exp_M θ^A`; it uses `Ψ`, its inverse, the
//! group law and `τ_A`, and sums the `ξ`-family directly.

use num_complex::Complex;

use super::QuantizerContext;
use crate::error::{Error, Result};
use crate::magnetic::tau_exponent_sym;
use crate::poly::PolyVector;
use crate::repspace::{PhaseSpaceField, Side};
use crate::scalar::{pairwise_sum, Real};

pub fn ambiguity_magnetic_formula<T: Real>(
    ctx: &QuantizerContext<T>,
    f: &[Complex<T>],
    phi: &[Complex<T>],
) -> Result<PhaseSpaceField<T>> {
    let spec = ctx.spec();
    spec.check_state(f)?;
    spec.check_state(phi)?;
    if spec.norm(phi)? == T::zero() {
        return Err(Error::ZeroWindow);
    }
    let alg = ctx.algebra();
    let d = alg.dim();
    // variables (Y, X)
    let big_x = PolyVector::vars(2 * d, d..2 * d);
    let psi = alg.psi_map_sym(&big_x).to_real::<T>();
    let psi_inv = alg.psi_inverse_sym(&big_x)?.to_real::<T>();
    let tau = tau_exponent_sym(alg, ctx.potential(), &big_x).to_real::<T>();
    let law = alg.group_law_map().to_real::<T>();
    let s = spec.size();
    let h = spec.h();
    let eps = spec.epsilon();
    let w = spec.weight();
    let xi_step = spec.xi_step();
    let mut field = spec.zero_field(Side::Xi);
    for kf in 0..s {
        let xk: Vec<T> = spec.multi_index(kf).iter().map(|&c| T::lit(c as f64) * h).collect();
        let mut ys = Vec::with_capacity(s);
        let mut g = Vec::with_capacity(s);
        for j in 0..s {
            let x = spec.point(j);
            let mut arg: Vec<T> = x.iter().map(|&v| -v).collect();
            arg.extend_from_slice(&xk);
            let y: Vec<T> = psi.components().iter().map(|p| p.eval_unchecked(&arg)).collect();
            let mut arg_y = y.clone();
            arg_y.extend_from_slice(&xk);
            let back: Vec<T> = psi_inv.components().iter().map(|p| -p.eval_unchecked(&arg_y)).collect();
            let src = lattice_index(spec, &back)?;
            if src != j {
                return Err(Error::OffLattice);
            }
            let mut moved_arg: Vec<T> = xk.iter().map(|&v| -v).collect();
            moved_arg.extend_from_slice(&back);
            let moved: Vec<T> = law.components().iter().map(|p| p.eval_unchecked(&moved_arg)).collect();
            let shifted = lattice_index(spec, &moved)?;
            let mut tau_arg = back.clone();
            tau_arg.extend_from_slice(&xk);
            let t = tau.eval_unchecked(&tau_arg);
            g.push(f[src] * phi[shifted].conj() * Complex::from_polar(T::one(), -eps * t) * w);
            ys.push(y);
        }
        for mf in 0..s {
            let xi: Vec<T> = spec.multi_index(mf).iter().map(|&c| T::lit(c as f64) * xi_step).collect();
            let v: Complex<T> = pairwise_sum(s, &|j| {
                let dot = xi.iter().zip(&ys[j]).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
                g[j] * Complex::from_polar(T::one(), eps * dot)
            });
            field.values[kf * s + mf] = v;
        }
    }
    Ok(field)
}

/// Cyclic grid index of a point that must lie on the lattice `hℤ^d`.
fn lattice_index<T: Real>(spec: &crate::repspace::GridSpec<T>, p: &[T]) -> Result<usize> {
    let h = spec.h();
    let mut idx = Vec::with_capacity(p.len());
    for &v in p {
        let r = (v / h).round();
        if ((v / h) - r).abs() > T::lit(1e-6) {
            return Err(Error::OffLattice);
        }
        idx.push(r.approx_f64() as i64);
    }
    Ok(spec.flat_index(&idx))
}
