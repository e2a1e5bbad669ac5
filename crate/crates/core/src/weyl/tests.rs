use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::formula::ambiguity_magnetic_formula;
use super::*;
use crate::magnetic::{gauge_shift, theta_map};
use crate::nilpotent::build_fg;
use crate::scalar::rat;

fn ctx(d: usize, n: usize, l: f64, a: MagneticPotential) -> QuantizerContext<f64> {
    QuantizerContext::new(GridSpec::new(d, n, l, 1.0).unwrap(), a).unwrap()
}

fn abelian1(n: usize, l: f64) -> QuantizerContext<f64> {
    ctx(1, n, l, MagneticPotential::zero(1))
}

fn linear_potential(alpha: i64) -> MagneticPotential {
    MagneticPotential::new(vec![RatPoly::var(1, 0).scale(&rat(alpha, 1))]).unwrap()
}

fn packet(c: &QuantizerContext<f64>, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let d = c.spec().dim();
    let center: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let p: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let sigma = rng.gen_range(0.7..1.3);
    let chirp = rng.gen_range(-0.3..0.3);
    c.spec().gaussian(&center, sigma, &p, chirp)
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    (a - b).norm() / scale
}

fn field_err(a: &PhaseSpaceField<f64>, b: &PhaseSpaceField<f64>) -> f64 {
    a.sub(b).max_abs()
}

#[test]
fn ambiguity_matches_direct_sums() {
    let c = ctx(1, 16, 8.0, linear_potential(1));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = packet(&c, &mut rng);
    let phi = packet(&c, &mut rng);
    let amb = c.ambiguity(&f, &phi).unwrap();
    let s = c.spec().size();
    for z in [0, 5, 77, 130, 255] {
        let k = c.spec().multi_index(z / s);
        let m = c.spec().multi_index(z % s);
        let direct = c.ambiguity_at(&f, &phi, &k, &m).unwrap();
        assert!((amb.values[z] - direct).norm() < 1e-12);
    }
    let zero = amb.values[c.spec().flat_index(&[0]) * s + c.spec().flat_index(&[0])];
    assert!((zero - c.spec().inner(&f, &phi).unwrap()).norm() < 1e-14);
    assert_eq!(c.ambiguity(&f, &vec![Complex64::new(0.0, 0.0); s]), Err(Error::ZeroWindow));
}

#[test]
fn pi_matches_symbolic_exponential() {
    // Π(Z) against π(exp_M θ^A(Z)) built through the semidirect exponential
    for a in [MagneticPotential::zero(1), linear_potential(2)] {
        let c = ctx(1, 16, 8.0, a.clone());
        let alg = LieAlgebraSpec::abelian(1);
        let fs = crate::nilpotent::admissible_space(&alg, &a).unwrap();
        let f = c.spec().gaussian(&[0.3], 1.0, &[0.2], 0.1);
        for (k, m) in [(3i64, 2i64), (-4, 5), (0, -3), (7, 7)] {
            // h = 1/2; ξ_m is irrational, so the plane part is applied in closed form
            let big_x = rat(k, 2);
            let xi_val = m as f64 * c.spec().xi_step();
            let t = theta_map(&alg, &a, &[big_x.clone()], &[rat(0, 1)], 1.0).unwrap();
            let shifted = c.spec().apply_rep_exp(&alg, &fs, &t, &f).unwrap();
            let ours = c.pi_apply(&[k], &[m], &f).unwrap();
            for j in 0..f.len() {
                let x = c.spec().coord(j);
                let plane = Complex64::from_polar(1.0, xi_val * (x - k as f64 * 0.25));
                assert!((ours[j] - plane * shifted[j]).norm() < 1e-12, "k={k} m={m} j={j}");
            }
        }
    }
}

#[test]
fn orthogonality_and_hermitian_symmetry() {
    let c = abelian1(64, 16.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (f1, p1, f2, p2) = (packet(&c, &mut rng), packet(&c, &mut rng), packet(&c, &mut rng), packet(&c, &mut rng));
    let a1 = c.ambiguity(&f1, &p1).unwrap();
    let a2 = c.ambiguity(&f2, &p2).unwrap();
    let sp = c.spec();
    let lhs = a1.inner(&a2);
    let rhs = sp.inner(&f1, &f2).unwrap() * sp.inner(&p2, &p1).unwrap();
    let scale = [&f1, &f2, &p1, &p2].iter().map(|v| sp.norm(v).unwrap()).product::<f64>();
    assert!(rel(lhs, rhs, scale) < 1e-10);
    assert!((a1.norm() - sp.norm(&f1).unwrap() * sp.norm(&p1).unwrap()).abs() < 1e-8);
    let auto = c.ambiguity(&p1, &p1).unwrap();
    let s = sp.size();
    for z in 0..auto.len() {
        let k = sp.multi_index(z / s);
        let m = sp.multi_index(z % s);
        if k[0] == -32 || m[0] == -32 {
            continue;
        }
        let neg = sp.flat_index(&[-k[0]]) * s + sp.flat_index(&[-m[0]]);
        assert!((auto.values[neg] - auto.values[z].conj()).norm() < 1e-12);
    }
}

#[test]
fn gaussian_auto_ambiguity_closed_form() {
    // |(φ|Π(X,ξ)φ)| = e^{−(X²+ξ²)/4} for the unit Gaussian of width 1
    let c = abelian1(64, 16.0);
    let phi = c.spec().default_window();
    let amb = c.ambiguity(&phi, &phi).unwrap();
    let s = c.spec().size();
    for (k, m) in [(0, 0), (1, 0), (0, 1), (3, -2), (-4, 4), (6, 1), (-2, -5), (8, 0), (0, 6), (5, 5)] {
        let z = c.spec().flat_index(&[k]) * s + c.spec().flat_index(&[m]);
        let x = k as f64 * c.spec().h();
        let xi = m as f64 * c.spec().xi_step();
        let expect = (-(x * x + xi * xi) / 4.0).exp();
        assert!((amb.values[z].norm() - expect).abs() < 1e-6, "({k},{m})");
    }
}

#[test]
fn magnetic_formula_route_agrees() {
    let potentials = vec![
        MagneticPotential::zero(1),
        MagneticPotential::new(vec![RatPoly::constant(1, rat(3, 2))]).unwrap(),
        linear_potential(2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in potentials {
        let c = ctx(1, 32, 8.0, a);
        let f = packet(&c, &mut rng);
        let phi = packet(&c, &mut rng);
        let direct = c.ambiguity(&f, &phi).unwrap();
        let formula = ambiguity_magnetic_formula(&c, &f, &phi).unwrap();
        assert!(field_err(&direct, &formula) / direct.max_abs() < 1e-10);
    }
    // X = 0 collapses to the Fourier transform of |φ|²
    let c = abelian1(32, 8.0);
    let phi = c.spec().default_window();
    let formula = ambiguity_magnetic_formula(&c, &phi, &phi).unwrap();
    let s = c.spec().size();
    let k0 = c.spec().flat_index(&[0]);
    for mf in 0..s {
        let xi = c.spec().multi_index(mf)[0] as f64 * c.spec().xi_step();
        let ft: Complex64 = (0..s)
            .map(|j| phi[j].norm_sqr() * Complex64::from_polar(1.0, -xi * c.spec().coord(j)) * c.spec().h())
            .sum();
        assert!((formula.values[k0 * s + mf] - ft).norm() < 1e-12);
    }
}

#[test]
fn magnetic_formula_route_in_two_dimensions() {
    let a = MagneticPotential::new(vec![RatPoly::zero(2), RatPoly::var(2, 0)]).unwrap();
    let c = ctx(2, 8, 6.0, a);
    let f = c.spec().gaussian(&[0.3, -0.2], 1.0, &[0.5, 0.1], 0.0);
    let phi = c.spec().default_window();
    let direct = c.ambiguity(&f, &phi).unwrap();
    let formula = ambiguity_magnetic_formula(&c, &f, &phi).unwrap();
    assert!(field_err(&direct, &formula) / direct.max_abs() < 1e-10);
}

#[test]
fn wigner_properties() {
    let c = abelian1(64, 16.0);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = packet(&c, &mut rng);
    let phi = c.spec().default_window();
    let w = c.wigner(&phi, &phi).unwrap();
    assert!(w.values.iter().all(|v| v.im.abs() < 1e-10));
    let wf = c.wigner(&f, &phi).unwrap();
    assert!((wf.norm() - c.spec().norm(&f).unwrap()).abs() / c.spec().norm(&f).unwrap() < 1e-10);
    let back = c.spec().ft_symbol(&wf).unwrap();
    assert!(field_err(&back, &c.ambiguity(&f, &phi).unwrap()) < 1e-12);
}

#[test]
fn quantization_examples() {
    let c = ctx(1, 16, 8.0, linear_potential(1));
    let sp = c.spec();
    let one = sp.sample_field(Side::XiStar, |_| Complex64::new(1.0, 0.0));
    let id = c.quantize(&one).unwrap();
    assert!(id.sub(&HsOperator::identity(sp.size())).unwrap().max_abs() < 1e-12);
    for (k, m) in [(2, 3), (-5, 1), (0, -8), (7, 6)] {
        let e = c.plane_wave_symbol(&[k], &[m]);
        let op = c.quantize(&e).unwrap();
        assert!(op.sub(&c.pi_matrix(&[k], &[m])).unwrap().max_abs() < 1e-12);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = packet(&c, &mut rng);
    let phi = packet(&c, &mut rng);
    let op = c.quantize(&c.wigner(&f, &phi).unwrap()).unwrap();
    let r1 = HsOperator::rank_one(&f, &phi, sp.weight()).unwrap();
    assert!(op.sub(&r1).unwrap().hs_norm() / r1.hs_norm() < 1e-12);
    // matrix-free application
    let a = c.wigner(&phi, &f).unwrap();
    let psi = packet(&c, &mut rng);
    let dense = c.quantize(&a).unwrap().apply(&psi).unwrap();
    let free = c.quantize_apply(&a, &psi).unwrap();
    for (u, v) in dense.iter().zip(&free) {
        assert!((u - v).norm() < 1e-12);
    }
}

#[test]
fn dequantization_examples() {
    let c = ctx(1, 16, 8.0, linear_potential(1));
    let sp = c.spec();
    assert!(c.deviation() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let f = packet(&c, &mut rng);
    let phi = packet(&c, &mut rng);
    let r1 = HsOperator::rank_one(&f, &phi, sp.weight()).unwrap();
    let w = c.dequantize(&r1).unwrap();
    assert!(field_err(&w, &c.wigner(&f, &phi).unwrap()) < 1e-12);
    let one = c.dequantize(&HsOperator::identity(sp.size())).unwrap();
    assert!(one.values.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    let mut a = sp.zero_field(Side::XiStar);
    for v in a.values.iter_mut() {
        *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let q = c.quantize(&a).unwrap();
    let back = c.dequantize(&q).unwrap();
    assert!(back.sub(&a).norm() / a.norm() < 1e-12);
    let lsq = c.dequantize_with(&q, true).unwrap();
    assert!(lsq.sub(&a).norm() / a.norm() < 1e-10);
}

#[test]
fn dense_quantization_map_is_unitary() {
    let c = ctx(1, 8, 6.0, linear_potential(1));
    let q = c.quantization_matrix().unwrap();
    assert_eq!(q.size, 64);
    assert!(q.gram_deviation() < 1e-12);
    assert_eq!(q.rank(1e-10).0, 64);
    assert!(abelian1(64, 16.0).quantization_matrix().is_err());
}

#[test]
fn moyal_examples() {
    let c = abelian1(16, 8.0);
    let sp = c.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = c.wigner(&packet(&c, &mut rng), &packet(&c, &mut rng)).unwrap();
    let b = c.wigner(&packet(&c, &mut rng), &packet(&c, &mut rng)).unwrap();
    let one = sp.sample_field(Side::XiStar, |_| Complex64::new(1.0, 0.0));
    assert!(c.moyal(&one, &a).unwrap().sub(&a).max_abs() < 1e-12);
    let ab = c.moyal(&a, &b).unwrap();
    let lhs = c.quantize(&ab).unwrap();
    let rhs = c.quantize(&a).unwrap().matmul(&c.quantize(&b).unwrap()).unwrap();
    assert!(lhs.sub(&rhs).unwrap().hs_norm() / rhs.hs_norm() < 1e-12);
    // exponentials: |e_{Z1} # e_{Z2}| = |e_{Z1+Z2}| and the factor matches the matrices
    let (k1, m1, k2, m2) = ([2i64], [1i64], [-3i64], [4i64]);
    let prod = c.moyal(&c.plane_wave_symbol(&k1, &m1), &c.plane_wave_symbol(&k2, &m2)).unwrap();
    assert!(prod.values.iter().all(|v| (v.norm() - 1.0).abs() < 1e-10));
    let e12 = c.plane_wave_symbol(&[-1], &[5]);
    let factor = prod.values[0] / e12.values[0];
    assert!(prod.sub(&e12.scale(factor)).max_abs() < 1e-10);
    let mat = c.pi_matrix(&k1, &m1).matmul(&c.pi_matrix(&k2, &m2)).unwrap();
    assert!(mat.sub(&c.pi_matrix(&[-1], &[5]).scale(factor)).unwrap().max_abs() < 1e-10);
}

#[test]
fn pi_ltimes_examples() {
    // wide box: the phases of F_G are not periodic, so wrapped tails must be negligible
    let c = abelian1(32, 16.0);
    let alg = LieAlgebraSpec::abelian(1);
    let fs = build_fg(&alg);
    let sp = c.spec();
    let t = HsOperator::rank_one(&sp.gaussian(&[0.2], 0.6, &[0.5], 0.1), &sp.gaussian(&[-0.3], 0.5, &[0.0], 0.0), sp.weight())
        .unwrap();
    let id = SemidirectElement::identity(1);
    assert!(c.pi_ltimes(&fs, &id, &id, &t).unwrap().sub(&t).unwrap().max_abs() < 1e-15);
    let el = |phi: (i64, i64), x: (i64, i64)| {
        let p = &RatPoly::var(1, 0).scale(&rat(phi.0, 1)) + &RatPoly::constant(1, rat(phi.1, 3));
        SemidirectElement::new(&alg, &fs, p, vec![rat(x.0, x.1)]).unwrap()
    };
    let m1 = el((1, 2), (3, 2));
    let out = c.pi_ltimes(&fs, &m1, &id, &t).unwrap();
    assert!((out.hs_norm() - t.hs_norm()).abs() < 1e-10);
    let (a1, a2, b1, b2) = (el((2, -1), (1, 1)), el((-1, 1), (-1, 2)), el((0, 4), (2, 1)), el((1, 0), (1, 2)));
    // (a1,a2)(b1,b2) = (a1 b1, b1⁻¹ a2 b1 b2)
    let p1 = a1.mul(&alg, &b1).unwrap();
    let p2 = b1.inverse(&alg).unwrap().mul(&alg, &a2).unwrap().mul(&alg, &b1).unwrap().mul(&alg, &b2).unwrap();
    let lhs = c.pi_ltimes(&fs, &p1, &p2, &t).unwrap();
    let rhs = c.pi_ltimes(&fs, &a1, &a2, &c.pi_ltimes(&fs, &b1, &b2, &t).unwrap()).unwrap();
    assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-10);
    let off = el((0, 0), (1, 3));
    assert_eq!(c.pi_ltimes(&fs, &off, &id, &t), Err(Error::OffLattice));
}

#[test]
fn symbol_ambiguity_examples() {
    let c = abelian1(8, 5.0);
    let sp = c.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (f1, f2, p1, p2) = (packet(&c, &mut rng), packet(&c, &mut rng), packet(&c, &mut rng), packet(&c, &mut rng));
    let big_f = c.wigner(&f1, &f2).unwrap();
    let big_phi = c.wigner(&p1, &p2).unwrap();
    let sa = c.symbol_ambiguity(&big_f, &big_phi).unwrap();
    let s = sp.size();
    let origin = sp.flat_index(&[0]) * s + sp.flat_index(&[0]);
    assert!((sa.at(origin, origin) - big_f.inner(&big_phi)).norm() < 1e-12);
    assert!((sa.norm() - big_f.norm() * big_phi.norm()).abs() / (big_f.norm() * big_phi.norm()) < 1e-10);
    for z1 in [0, 9, 33, 63] {
        for z2 in [0, 17, 40, 62] {
            let (k1, m1) = (sp.multi_index(z1 / s)[0], sp.multi_index(z1 % s)[0]);
            let (k2, m2) = (sp.multi_index(z2 / s)[0], sp.multi_index(z2 % s)[0]);
            let a1 = c.ambiguity_at(&f1, &p1, &[k1 + k2], &[m1 + m2]).unwrap();
            let a2 = c.ambiguity_at(&f2, &p2, &[k1], &[m1]).unwrap();
            assert!((sa.at(z1, z2) - a1 * a2.conj()).norm() < 1e-12);
        }
    }
}

#[test]
fn kernel_and_reconstruction() {
    let c = ctx(1, 8, 5.0, linear_potential(1));
    let sp = c.spec();
    let phi0 = sp.default_window();
    let k = c.kernel(&phi0).unwrap();
    for z in 0..k.size {
        assert!((k.at(z, z) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
    let p = k.projector();
    let n = k.size;
    for a in (0..n).step_by(7) {
        for b in (0..n).step_by(5) {
            let pp: Complex64 = (0..n).map(|j| p[a * n + j] * p[j * n + b]).sum();
            assert!((pp - p[a * n + b]).norm() < 1e-12);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f = packet(&c, &mut rng);
    let amb = c.ambiguity(&f, &phi0).unwrap();
    assert!(field_err(&k.apply(&amb), &amb) < 1e-12);
    assert!(field_err(&c.project(&amb, &phi0).unwrap(), &amb) < 1e-12);
    let back = c.reconstruct(&amb, &phi0).unwrap();
    for (u, v) in back.iter().zip(&f) {
        assert!((u - v).norm() < 1e-12);
    }
    let phi = packet(&c, &mut rng);
    let mixed = c.synthesize(&c.ambiguity(&f, &phi0).unwrap(), &phi).unwrap();
    let ip = sp.inner(&phi, &phi0).unwrap();
    for (u, v) in mixed.iter().zip(&f) {
        assert!((u - v * ip).norm() < 1e-12);
    }
    let zero = c.reconstruct(&sp.zero_field(Side::Xi), &phi0).unwrap();
    assert!(zero.iter().all(|v| v.norm() == 0.0));
    let unnorm: Vec<Complex64> = phi0.iter().map(|v| v * 2.0).collect();
    assert!(matches!(c.reconstruct(&amb, &unnorm), Err(Error::Unnormalized(_))));
}

#[test]
fn gauge_covariance_in_the_interior() {
    // A' = A + dχ: Op'(a) = e^{iεχ} Op(a) e^{−iεχ} away from the wrap
    let a = MagneticPotential::new(vec![RatPoly::zero(1)]).unwrap();
    let chi = RatPoly::var(1, 0).pow(2).scale(&rat(1, 4));
    let a2 = gauge_shift(&a, &chi).unwrap();
    let c1 = ctx(1, 32, 12.0, a);
    let c2 = ctx(1, 32, 12.0, a2);
    let sp = c1.spec();
    let sym = c1.wigner(&sp.default_window(), &sp.gaussian(&[0.5], 0.8, &[0.3], 0.0)).unwrap();
    let o1 = c1.quantize(&sym).unwrap();
    let o2 = c2.quantize(&sym).unwrap();
    let chi_r = chi.to_real::<f64>();
    let mut worst: f64 = 0.0;
    for i in 0..sp.size() {
        for j in 0..sp.size() {
            let (xi, xj) = (sp.coord(i), sp.coord(j));
            let g = Complex64::from_polar(1.0, chi_r.eval_unchecked(&[xi]) - chi_r.eval_unchecked(&[xj]));
            worst = worst.max((o2.get(i, j) - g * o1.get(i, j)).norm());
        }
    }
    assert!(worst / o1.max_abs() < 1e-3, "{worst}");
}
