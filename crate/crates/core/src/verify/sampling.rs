//! Seeded random states and symbols for the check harness.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::repspace::{GridSpec, PhaseSpaceField, Side};
use crate::weyl::QuantizerContext;

/// Gaussian width balancing the position and momentum extents of the grid.
pub fn balanced_width(spec: &GridSpec<f64>) -> f64 {
    spec.length() / (std::f64::consts::TAU * spec.n() as f64).sqrt()
}

/// A Gaussian with random center, width, momentum and chirp well inside the
/// box.
pub fn random_state(spec: &GridSpec<f64>, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let d = spec.dim();
    let l = spec.length();
    let s0 = balanced_width(spec);
    let p_max = std::f64::consts::PI * spec.n() as f64 / l / 8.0;
    let center: Vec<f64> = (0..d).map(|_| rng.gen_range(-l / 16.0..l / 16.0)).collect();
    let momentum: Vec<f64> = (0..d).map(|_| rng.gen_range(-p_max..p_max)).collect();
    let sigma = s0 * rng.gen_range(0.7..1.1);
    let chirp = rng.gen_range(-0.2..0.2) / (s0 * s0);
    spec.gaussian(&center, sigma, &momentum, chirp)
}

pub fn random_unit_state(spec: &GridSpec<f64>, rng: &mut ChaCha8Rng) -> Result<Vec<Complex64>> {
    spec.normalized(random_state(spec, rng))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A combination of two or three cross-Wigner distributions of random states.
pub fn random_wigner_symbol(ctx: &QuantizerContext<f64>, rng: &mut ChaCha8Rng) -> Result<PhaseSpaceField<f64>> {
    let spec = ctx.spec();
    let terms = rng.gen_range(2..=3);
    let mut out = spec.zero_field(Side::XiStar);
    for _ in 0..terms {
        let f = random_state(spec, rng);
        let g = random_state(spec, rng);
        let c = random_coeff(rng);
        out = out.add(&ctx.wigner(&f, &g)?.scale(c));
    }
    Ok(out)
}

/// A symbol whose transform is complex noise under a Gaussian envelope
/// centered at the origin of `Ξ`.
pub fn random_envelope_symbol(spec: &GridSpec<f64>, rng: &mut ChaCha8Rng) -> Result<PhaseSpaceField<f64>> {
    let d = spec.dim();
    let sx = spec.length() / 8.0;
    let sxi = spec.xi_step() * spec.n() as f64 / 8.0;
    let mut check = spec.zero_field(Side::Xi);
    for z in 0..check.len() {
        let p = spec.field_point(Side::Xi, z);
        let r2: f64 = (0..d).map(|a| (p[a] / sx).powi(2) + (p[d + a] / sxi).powi(2)).sum();
        check.values[z] = random_coeff(rng) * (-r2 / 2.0).exp();
    }
    spec.ift_symbol(&check)
}

/// Wigner combinations and envelope noise, alternating with a coin flip.
pub fn random_symbol(ctx: &QuantizerContext<f64>, rng: &mut ChaCha8Rng) -> Result<PhaseSpaceField<f64>> {
    if rng.gen_bool(0.5) {
        random_wigner_symbol(ctx, rng)
    } else {
        random_envelope_symbol(ctx.spec(), rng)
    }
}
