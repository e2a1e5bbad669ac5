//! The registry entries. Each returns one report per measured quantity.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::sampling::{random_state, random_symbol, random_unit_state};
use super::{CheckReport, VerifyConfig};
use crate::error::{Error, Result};
use crate::magnetic::{gauge_shift, MagneticPotential};
use crate::modspace::{
    exponent_check, mixed_norm, pair_decomposition, pair_mixed_norm, Decomposition, ExponentMode, ExponentQuad,
};
use crate::nilpotent::{build_fg, semidirect_nilpotency_check, LieAlgebraSpec};
use crate::poly::PolyVector;
use crate::repspace::quadrature::{QuadratureSpec, StateExpr};
use crate::repspace::{GridSpec, PhaseSpaceField};
use crate::scalar::rat;
use crate::weyl::formula::ambiguity_magnetic_formula;
use crate::weyl::heisenberg::QuadratureAmbiguity;
use crate::weyl::{HsOperator, QuantizerContext};
use crate::RatPoly;

fn grid_context(spec: &GridSpec<f64>, potential: &MagneticPotential) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("dim".into(), json!(spec.dim()));
    m.insert("n".into(), json!(spec.n()));
    m.insert("length".into(), json!(spec.length()));
    m.insert("epsilon".into(), json!(spec.epsilon()));
    m.insert("potential".into(), json!(potential.to_string()));
    m
}

fn context_1d(cfg: &VerifyConfig, n: usize, length: f64) -> Result<QuantizerContext<f64>> {
    QuantizerContext::new(GridSpec::new(1, n, length, cfg.epsilon)?, cfg.potential.clone())
}

fn rel_state_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(u, v)| (u - v).norm_sqr()).sum();
    let den: f64 = b.iter().map(|v| v.norm_sqr()).sum();
    (num / den).sqrt()
}

pub fn orthogonality(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_large, cfg.length_large)?;
    let spec = ctx.spec();
    let mut worst = 0.0f64;
    for _ in 0..cfg.orthogonality_trials {
        let [f1, f2, p1, p2] = std::array::from_fn(|_| random_state(spec, rng));
        let lhs = ctx.ambiguity(&f1, &p1)?.inner(&ctx.ambiguity(&f2, &p2)?);
        let rhs = spec.inner(&f1, &f2)? * spec.inner(&p2, &p1)?;
        let scale = spec.norm(&f1)? * spec.norm(&f2)? * spec.norm(&p1)? * spec.norm(&p2)?;
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    let mut c = grid_context(spec, &cfg.potential);
    c.insert("trials".into(), json!(cfg.orthogonality_trials));
    Ok(vec![CheckReport::asserted("orthogonality", "relative_defect", worst, cfg.threshold(1e-6), c)])
}

pub fn unitarity(cfg: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_small, cfg.length_small)?;
    let q = ctx.quantization_matrix()?;
    let gram = q.gram_deviation();
    let (rank, sv) = q.rank(1e-10);
    let mut c = grid_context(ctx.spec(), &cfg.potential);
    c.insert("size".into(), json!(q.size));
    c.insert("rank".into(), json!(rank));
    c.insert("sigma_min".into(), json!(sv.last().copied().unwrap_or(0.0)));
    c.insert("sigma_max".into(), json!(sv.first().copied().unwrap_or(0.0)));
    Ok(vec![
        CheckReport::asserted("unitarity", "gram_deviation", gram, cfg.threshold(1e-6), c.clone()),
        CheckReport::asserted("unitarity", "rank_deficit", (q.size - rank) as f64, cfg.threshold(0.0), c),
    ])
}

pub fn rank_one(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_medium, cfg.length_medium)?;
    let spec = ctx.spec();
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let f = random_state(spec, rng);
        let phi = random_state(spec, rng);
        let op = ctx.quantize(&ctx.wigner(&f, &phi)?)?;
        let target = HsOperator::rank_one(&f, &phi, spec.weight())?;
        worst = worst.max(op.sub(&target)?.hs_norm() / target.hs_norm());
    }
    let c = grid_context(spec, &cfg.potential);
    Ok(vec![CheckReport::asserted("rank_one", "relative_hs_error", worst, cfg.threshold(1e-6), c)])
}

pub fn reconstruction(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_medium, cfg.length_medium)?;
    let spec = ctx.spec();
    let mut unit = 0.0f64;
    let mut mixed = 0.0f64;
    for _ in 0..5 {
        let f = random_state(spec, rng);
        let phi0 = random_unit_state(spec, rng)?;
        let phi = random_state(spec, rng);
        let amb = ctx.ambiguity(&f, &phi0)?;
        unit = unit.max(rel_state_err(&ctx.reconstruct(&amb, &phi0)?, &f));
        let ip = spec.inner(&phi, &phi0)?;
        let scaled: Vec<Complex64> = f.iter().map(|v| v * ip).collect();
        mixed = mixed.max(rel_state_err(&ctx.synthesize(&amb, &phi)?, &scaled));
    }
    let c = grid_context(spec, &cfg.potential);
    Ok(vec![
        CheckReport::asserted("reconstruction", "unit_window_error", unit, cfg.threshold(1e-6), c.clone()),
        CheckReport::asserted("reconstruction", "mixed_window_error", mixed, cfg.threshold(1e-6), c),
    ])
}

pub fn kernel(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_small, cfg.length_small)?;
    let spec = ctx.spec();
    let phi0 = random_unit_state(spec, rng)?;
    let k = ctx.kernel(&phi0)?;
    let p = HsOperator::from_rows(k.size, k.projector())?;
    let idem = p.matmul(&p)?.sub(&p)?.max_abs();
    let mut repro = 0.0f64;
    for _ in 0..3 {
        let amb = ctx.ambiguity(&random_state(spec, rng), &phi0)?;
        repro = repro.max(k.apply(&amb).sub(&amb).max_abs() / amb.max_abs());
    }
    let c = grid_context(spec, &cfg.potential);
    Ok(vec![
        CheckReport::asserted("kernel", "idempotence_defect", idem, cfg.threshold(1e-6), c.clone()),
        CheckReport::asserted("kernel", "reproduction_error", repro, cfg.threshold(1e-6), c),
    ])
}

pub fn factorization(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_small, cfg.length_small)?;
    let spec = ctx.spec();
    let s = spec.size();
    let z_count = s * s;
    let mut worst = 0.0f64;
    for _ in 0..2 {
        let [f1, f2, p1, p2] = std::array::from_fn(|_| random_unit_state(spec, rng));
        let (f1, f2, p1, p2) = (f1?, f2?, p1?, p2?);
        let sa = ctx.symbol_ambiguity(&ctx.wigner(&f1, &f2)?, &ctx.wigner(&p1, &p2)?)?;
        let a2 = ctx.ambiguity(&f2, &p2)?;
        let mut cache: HashMap<Vec<i64>, Complex64> = HashMap::new();
        let split = |z: usize| (spec.multi_index(z / s), spec.multi_index(z % s));
        for z1 in 0..z_count {
            let (k1, m1) = split(z1);
            for z2 in 0..z_count {
                let (k2, m2) = split(z2);
                let mut w: Vec<i64> = k1.iter().zip(&k2).map(|(a, b)| a + b).collect();
                w.extend(m1.iter().zip(&m2).map(|(a, b)| a + b));
                let a1 = match cache.get(&w) {
                    Some(v) => *v,
                    None => {
                        let d = spec.dim();
                        let v = ctx.ambiguity_at(&f1, &p1, &w[..d], &w[d..])?;
                        cache.insert(w, v);
                        v
                    }
                };
                worst = worst.max((sa.at(z1, z2) - a1 * a2.values[z1].conj()).norm());
            }
        }
    }
    let c = grid_context(spec, &cfg.potential);
    Ok(vec![CheckReport::asserted("factorization", "pointwise_error", worst, cfg.threshold(1e-6), c)])
}

fn quad(text: &str, mode: ExponentMode) -> Result<ExponentQuad> {
    let q = ExponentQuad::parse(text)?;
    let v = exponent_check(&q, mode);
    if !v.valid {
        return Err(Error::Exponent(format!("{q}: {}", v.reason)));
    }
    Ok(q)
}

pub fn wigner_bound(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_small, cfg.length_small)?;
    let spec = ctx.spec();
    let quads = [quad("1 inf 2 2 2 2", ExponentMode::WignerThm)?, quad("2 2 2 2 2 2", ExponentMode::WignerThm)?];
    let phi1 = spec.default_window();
    let phi2 = random_unit_state(spec, rng)?;
    let window = ctx.wigner(&phi1, &phi2)?;
    let vdec = Decomposition::standard(spec.dim());
    let pdec = pair_decomposition(spec.dim());
    let mut max_ratio = [0.0f64; 2];
    let mut equality = 0.0f64;
    for _ in 0..cfg.wigner_trials {
        let f1 = random_state(spec, rng);
        let f2 = random_state(spec, rng);
        let a1 = ctx.ambiguity(&f1, &phi1)?;
        let a2 = ctx.ambiguity(&f2, &phi2)?;
        let sa = ctx.symbol_ambiguity(&ctx.wigner(&f1, &f2)?, &window)?;
        for (slot, q) in quads.iter().enumerate() {
            let lhs = pair_mixed_norm(spec, &sa, &q.r, &q.s, &pdec)?;
            let rhs = mixed_norm(spec, &a1, &q.r1, &q.s1, &vdec)? * mixed_norm(spec, &a2, &q.r2, &q.s2, &vdec)?;
            let ratio = lhs / rhs;
            max_ratio[slot] = max_ratio[slot].max(ratio);
            if slot == 1 {
                equality = equality.max((ratio - 1.0).abs());
            }
        }
    }
    let mut out = Vec::new();
    for (q, ratio) in quads.iter().zip(max_ratio) {
        let mut c = grid_context(spec, &cfg.potential);
        c.insert("exponents".into(), json!(q.to_string()));
        c.insert("trials".into(), json!(cfg.wigner_trials));
        out.push(CheckReport::asserted("wigner_bound", &format!("max_ratio {q}"), ratio, cfg.threshold(1.001), c));
    }
    let mut c = grid_context(spec, &cfg.potential);
    c.insert("exponents".into(), json!(quads[1].to_string()));
    out.push(CheckReport::asserted("wigner_bound", "equality_defect (2,2;2,2;2,2)", equality, cfg.threshold(1e-3), c));
    Ok(out)
}

pub fn op_bounds(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let ctx = context_1d(cfg, cfg.n_small, cfg.length_small)?;
    let spec = ctx.spec();
    let phi1 = spec.default_window();
    let phi2 = random_unit_state(spec, rng)?;
    let window = ctx.wigner(&phi1, &phi2)?;
    let pdec = pair_decomposition(spec.dim());
    let vdec = Decomposition::standard(spec.dim());
    let inf: crate::modspace::Exponent = "inf".parse()?;
    let one: crate::modspace::Exponent = "1".parse()?;
    let family = [
        quad("1 inf 1 1 1 1", ExponentMode::OpBound)?,
        quad("1 inf inf inf inf inf", ExponentMode::OpBound)?,
        quad("1 inf 1 inf 1 inf", ExponentMode::OpBound)?,
    ];
    let mut op_ratio = 0.0f64;
    let mut tr_ratio = 0.0f64;
    let mut family_const = [0.0f64; 3];
    for trial in 0..cfg.op_trials {
        let a = random_symbol(&ctx, rng)?;
        let op = ctx.quantize(&a)?;
        let sv = op.singular_values();
        let sa = ctx.symbol_ambiguity(&a, &window)?;
        let m_inf_1 = pair_mixed_norm(spec, &sa, &inf, &one, &pdec)?;
        let m_1_1 = pair_mixed_norm(spec, &sa, &one, &one, &pdec)?;
        op_ratio = op_ratio.max(sv[0] / m_inf_1);
        tr_ratio = tr_ratio.max(sv.iter().sum::<f64>() / m_1_1);
        if trial < 10 {
            for _ in 0..3 {
                let f = random_state(spec, rng);
                let af = ctx.ambiguity(&f, &phi1)?;
                let aof = ctx.ambiguity(&op.apply(&f)?, &phi1)?;
                for (slot, q) in family.iter().enumerate() {
                    let m_a = pair_mixed_norm(spec, &sa, &q.r, &q.s, &pdec)?;
                    let num = mixed_norm(spec, &aof, &q.r2, &q.s2, &vdec)?;
                    let den = m_a * mixed_norm(spec, &af, &q.r1, &q.s1, &vdec)?;
                    family_const[slot] = family_const[slot].max(num / den);
                }
            }
        }
    }
    let mut c = grid_context(spec, &cfg.potential);
    c.insert("trials".into(), json!(cfg.op_trials));
    let mut out = vec![
        CheckReport::asserted("op_bounds", "operator_norm_ratio M(inf,1)", op_ratio, cfg.threshold(1.001), c.clone()),
        CheckReport::asserted("op_bounds", "trace_norm_ratio M(1,1)", tr_ratio, cfg.threshold(1.001), c.clone()),
    ];
    for (q, k) in family.iter().zip(family_const) {
        let mut c = c.clone();
        c.insert("exponents".into(), json!(q.to_string()));
        c.insert("samples".into(), json!(30));
        out.push(CheckReport::report_only("op_bounds", &format!("measured_constant {q}"), k, c));
    }
    Ok(out)
}

pub fn magnetic_formula(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let x = RatPoly::var(1, 0);
    let cases = vec![
        (1, MagneticPotential::zero(1)),
        (1, MagneticPotential::new(vec![RatPoly::constant(1, rat(3, 2))])?),
        (1, MagneticPotential::new(vec![x.scale(&rat(2, 1))])?),
        (2, MagneticPotential::from_entries(2, &[(1, vec![1, 0], rat(1, 1))])?),
    ];
    let mut out = Vec::new();
    for (d, a) in cases {
        let spec = GridSpec::new(d, 8, 6.0, cfg.epsilon)?;
        let ctx = QuantizerContext::new(spec, a.clone())?;
        let spec = ctx.spec();
        let f = random_state(spec, rng);
        let phi = random_state(spec, rng);
        let direct = ctx.ambiguity(&f, &phi)?;
        let formula = ambiguity_magnetic_formula(&ctx, &f, &phi)?;
        let err = direct.sub(&formula).max_abs() / direct.max_abs();
        out.push(CheckReport::asserted(
            "magnetic_formula",
            &format!("relative_error d={d} A={a}"),
            err,
            cfg.threshold(1e-6),
            grid_context(spec, &a),
        ));
    }
    Ok(out)
}

/// Narrow Gaussian near the origin, so operators stay away from the wrap.
fn gauge_state(spec: &GridSpec<f64>, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let d = spec.dim();
    let center: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.3..0.3)).collect();
    let momentum: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.3..0.3)).collect();
    spec.gaussian(&center, rng.gen_range(0.75..0.85), &momentum, 0.0)
}

fn gauge_symbol(ctx: &QuantizerContext<f64>, rng: &mut ChaCha8Rng) -> Result<PhaseSpaceField<f64>> {
    let spec = ctx.spec();
    let f = gauge_state(spec, rng);
    let g = gauge_state(spec, rng);
    let h = gauge_state(spec, rng);
    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    Ok(ctx.wigner(&f, &g)?.add(&ctx.wigner(&h, &f)?.scale(c)))
}

/// `(‖Op'(a) − e^{iεχ}Op(a)e^{−iεχ}‖/‖Op(a)‖, ‖a #' b − a # b‖/‖a # b‖)`.
fn gauge_pair(
    c1: &QuantizerContext<f64>,
    c2: &QuantizerContext<f64>,
    chi: &RatPoly,
    a: &PhaseSpaceField<f64>,
    b: &PhaseSpaceField<f64>,
) -> Result<(f64, f64)> {
    let spec = c1.spec();
    let chi_r = chi.to_real::<f64>();
    let eps = spec.epsilon();
    let g: Vec<Complex64> =
        (0..spec.size()).map(|i| Complex64::from_polar(1.0, eps * chi_r.eval_unchecked(&spec.point(i)))).collect();
    let o1 = c1.quantize(a)?;
    let o2 = c2.quantize(a)?;
    let mut conj = o1.clone();
    for i in 0..spec.size() {
        for j in 0..spec.size() {
            conj.set(i, j, g[i] * o1.get(i, j) * g[j].conj());
        }
    }
    let inter = o2.sub(&conj)?.hs_norm() / o1.hs_norm();
    let m1 = c1.moyal(a, b)?;
    let m2 = c2.moyal(a, b)?;
    Ok((inter, m2.sub(&m1).norm() / m1.norm()))
}

pub fn gauge(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let a = MagneticPotential::from_entries(2, &[(1, vec![1, 0], rat(1, 1))])?;
    let chi = &RatPoly::var(2, 0) * &RatPoly::var(2, 1);
    let a2 = gauge_shift(&a, &chi)?;
    let spec = GridSpec::new(2, 8, 10.0, cfg.epsilon)?;
    let c1 = QuantizerContext::new(spec.clone(), a.clone())?;
    let c2 = QuantizerContext::new(spec.clone(), a2)?;
    let mut inter = 0.0f64;
    let mut moyal = 0.0f64;
    for _ in 0..3 {
        let s1 = gauge_symbol(&c1, rng)?;
        let s2 = gauge_symbol(&c1, rng)?;
        let (i, m) = gauge_pair(&c1, &c2, &chi, &s1, &s2)?;
        inter = inter.max(i);
        moyal = moyal.max(m);
    }
    let mut c = grid_context(&spec, &a);
    c.insert("chi".into(), json!(chi.to_string()));
    // on ℝ¹ every potential is a gradient: A = d(x²/2)
    let spec1 = GridSpec::new(1, cfg.n_small, cfg.length_small, cfg.epsilon)?;
    let z1 = QuantizerContext::new(spec1.clone(), MagneticPotential::zero(1))?;
    let x = RatPoly::var(1, 0);
    let chi1 = x.pow(2).scale(&rat(1, 2));
    let z2 = QuantizerContext::new(spec1.clone(), gauge_shift(&MagneticPotential::zero(1), &chi1)?)?;
    let mut moyal1 = 0.0f64;
    for _ in 0..3 {
        let s1 = gauge_symbol(&z1, rng)?;
        let s2 = gauge_symbol(&z1, rng)?;
        moyal1 = moyal1.max(gauge_pair(&z1, &z2, &chi1, &s1, &s2)?.1);
    }
    let mut c1d = grid_context(&spec1, z2.potential());
    c1d.insert("reference_potential".into(), json!("0"));
    Ok(vec![
        CheckReport::asserted("gauge", "intertwining_defect", inter, cfg.threshold(1e-3), c.clone()),
        CheckReport::asserted("gauge", "moyal_field_only_defect", moyal, cfg.threshold(1e-3), c),
        CheckReport::asserted("gauge", "moyal_one_dimension_defect", moyal1, cfg.threshold(1e-3), c1d),
    ])
}

/// Exact identities of the group and function-space layer; the metric counts
/// failures.
pub fn symbolic(cfg: &VerifyConfig, _rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let mut failures = Vec::new();
    let algebras =
        [LieAlgebraSpec::abelian(1), LieAlgebraSpec::abelian(2), LieAlgebraSpec::heisenberg(), LieAlgebraSpec::engel()];
    let mut fg_dims = Map::new();
    for alg in &algebras {
        let d = alg.dim();
        let name = alg.name().to_string();
        let mut record = |what: &str, ok: bool| {
            if !ok {
                failures.push(format!("{name}: {what}"));
            }
        };
        let x = PolyVector::vars(3 * d, 0..d);
        let y = PolyVector::vars(3 * d, d..2 * d);
        let z = PolyVector::vars(3 * d, 2 * d..3 * d);
        let left = alg.bch_symbolic(&alg.bch_symbolic(&x, &y), &z);
        let right = alg.bch_symbolic(&x, &alg.bch_symbolic(&y, &z));
        record("associativity", left == right);
        record("inverse", alg.bch_symbolic(&x, &-&x).is_zero());

        let fg = build_fg(alg);
        fg_dims.insert(name.clone(), json!(fg.len()));
        let mut tests: Vec<RatPoly> = fg.basis().to_vec();
        tests.push(RatPoly::var(d, 0).pow(2));
        tests.push(&RatPoly::var(d, 0) * &RatPoly::var(d, d - 1));
        for p in &tests {
            let p3 = p.extend(3 * d);
            let composed = alg.left_translate(&y, &alg.left_translate(&z, &p3));
            let direct = alg.left_translate(&alg.bch_symbolic(&y, &z), &p3);
            record("lambda homomorphism", composed == direct);
        }

        let big_x = PolyVector::vars(2 * d, d..2 * d);
        let psi = alg.psi_map_sym(&big_x);
        let psi_inv = alg.psi_inverse_sym(&big_x)?;
        let point = PolyVector::vars(2 * d, 0..d);
        record("psi after inverse", psi.compose(&psi_inv.concat(&big_x))? == point);
        record("inverse after psi", psi_inv.compose(&psi.concat(&big_x))? == point);
        let sig = alg.sigma_maps()?;
        let id = PolyVector::identity(2 * d);
        record("sigma1 inverse", sig.sigma1.compose(&sig.sigma1_inv)? == id);
        record("sigma1 inverse (left)", sig.sigma1_inv.compose(&sig.sigma1)? == id);
        record("sigma2 inverse", sig.sigma2.compose(&sig.sigma2_inv)? == id);
        record("sigma2 inverse (left)", sig.sigma2_inv.compose(&sig.sigma2)? == id);

        let st = semidirect_nilpotency_check(alg, &fg)?;
        record("semidirect Jacobi", st.jacobi_holds);
        record("semidirect nilpotent", st.is_nilpotent);
    }
    let mut c = Map::new();
    c.insert("algebras".into(), json!(algebras.iter().map(|a| a.name().to_string()).collect::<Vec<_>>()));
    c.insert("fg_dims".into(), Value::Object(fg_dims));
    c.insert("failures".into(), json!(failures));
    Ok(vec![CheckReport::asserted("symbolic", "failed_identities", failures.len() as f64, cfg.threshold(0.0), c)])
}

pub fn heisenberg(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let alg = LieAlgebraSpec::heisenberg();
    let q = QuadratureSpec::new(3, 12, 3.0, cfg.epsilon)?;
    let amb = QuadratureAmbiguity::new(&alg, &MagneticPotential::zero(3), q)?;
    let mut packet = || {
        let c: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.2..0.2)).collect();
        let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.3..0.3)).collect();
        StateExpr::wave_packet(&c, &[1.0; 3], &p)
    };
    let f1 = packet();
    let f2 = packet();
    let g = StateExpr::Gaussian { center: vec![0.0; 3], sigma: vec![1.0; 3] };
    let m = amb.orthogonality(&f1, &g, &f2, &g);
    let fg_dim = build_fg(&alg).len();
    let mut c = Map::new();
    c.insert("nodes".into(), json!(12));
    c.insert("half_width".into(), json!(3.0));
    c.insert("epsilon".into(), json!(cfg.epsilon));
    c.insert("lhs".into(), json!([m.lhs.re, m.lhs.im]));
    c.insert("rhs".into(), json!([m.rhs.re, m.rhs.im]));
    let mut cd = Map::new();
    cd.insert("fg_dim".into(), json!(fg_dim));
    Ok(vec![
        CheckReport::asserted("heisenberg", "orthogonality_relative_error", m.relative_error(), cfg.threshold(0.05), c),
        CheckReport::asserted("heisenberg", "fg_dimension_defect", (fg_dim as f64 - 4.0).abs(), cfg.threshold(0.0), cd),
    ])
}
