//! Centered discrete Fourier transforms along selected axes of a row-major
//! tensor, and the symbol transforms between `Ξ*` and `Ξ`.
//!
//! On an axis of length `N` the index `i` stands for the centered integer
//! `i − N/2`. The transform with sign `s` maps `u` to
//! `û[m] = Σ_k u[k] e^{s·2πi·mk/N}` over centered `m, k`.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// Unnormalized centered DFT along each listed axis, in place.
pub fn dft_axes<T: Real>(values: &mut [Complex<T>], shape: &[usize], axes: &[(usize, Sign)]) {
    let mut planner = FftPlanner::<T>::new();
    for &(axis, sign) in axes {
        let n = shape[axis];
        let stride: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let fft = match sign {
            Sign::Minus => planner.plan_fft_forward(n),
            Sign::Plus => planner.plan_fft_inverse(n),
        };
        let half = n / 2;
        let mut line = vec![Complex::new(T::zero(), T::zero()); n];
        for o in 0..outer {
            for s in 0..stride {
                let base = o * n * stride + s;
                // centered index i ↔ FFT slot (i − N/2) mod N, i.e. (i + N/2) mod N
                for i in 0..n {
                    line[(i + half) % n] = values[base + i * stride];
                }
                fft.process(&mut line);
                for i in 0..n {
                    values[base + i * stride] = line[(i + half) % n];
                }
            }
        }
    }
}

/// Swaps the first and second half of the axes of a tensor with `2d` axes of
/// equal length `n`.
pub fn swap_halves<T: Copy>(values: &[T], d: usize, n: usize) -> Vec<T> {
    let block = n.pow(d as u32);
    let mut out = Vec::with_capacity(values.len());
    for b in 0..block {
        for a in 0..block {
            out.push(values[a * block + b]);
        }
    }
    out
}

pub(crate) fn scale<T: Real>(values: &mut [Complex<T>], c: T) {
    for v in values.iter_mut() {
        *v = *v * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centered_dft_matches_direct_sum() {
        let n = 8;
        let u: Vec<Complex<f64>> = (0..n).map(|i| Complex::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let mut v = u.clone();
        dft_axes(&mut v, &[n], &[(0, Sign::Minus)]);
        for m in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                let (mc, kc) = (m as f64 - 4.0, k as f64 - 4.0);
                acc += u[k] * Complex::from_polar(1.0, -2.0 * std::f64::consts::PI * mc * kc / n as f64);
            }
            assert!((acc - v[m]).norm() < 1e-12);
        }
    }

    #[test]
    fn swap_halves_is_an_involution() {
        let v: Vec<usize> = (0..16).collect();
        let s = swap_halves(&v, 1, 4);
        assert_eq!(s[1], 4);
        assert_eq!(swap_halves(&s, 1, 4), v);
    }
}
