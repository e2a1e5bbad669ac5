//! Subcommand execution and artifact emission.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use magweyl::modspace::{mod_norm_symbol, mod_norm_vector, Decomposition};
use magweyl::nilpotent::{build_fg, semidirect_nilpotency_check};
use magweyl::poly::Polynomial;
use magweyl::repspace::io::{read_field_csv, read_tensor, write_field_csv, write_tensor, TensorKind};
use magweyl::repspace::quadrature::{QuadratureSpec, StateExpr};
use magweyl::repspace::Backend;
use magweyl::verify::{emit_reports, run_suite, VerifyConfig};
use magweyl::weyl::heisenberg::QuadratureAmbiguity;
use magweyl::{Context64, Field64, Grid64, Side};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::config::{RunConfig, StateSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Ambiguity,
    Wigner,
    Quantize,
    Moyal,
    Modnorm,
    GroupInfo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Ambiguity => "ambiguity",
            Command::Wigner => "wigner",
            Command::Quantize => "quantize",
            Command::Moyal => "moyal",
            Command::Modnorm => "modnorm",
            Command::GroupInfo => "group-info",
        }
    }
}

/// Files written by a command, relative to the output directory.
struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
    timings: Map<String, Value>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new(), timings: Map::new() })
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        self.files.push(name.to_string());
        Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
    }

    fn tensor(&mut self, name: &str, kind: TensorKind, dims: &[usize], values: &[Complex64]) -> Result<()> {
        let mut w = self.create(name)?;
        write_tensor(&mut w, kind, dims, values)?;
        w.flush()?;
        Ok(())
    }

    fn field(&mut self, stem: &str, spec: &Grid64, u: &Field64) -> Result<()> {
        let t = u.to_tensor();
        self.tensor(&format!("{stem}.bin"), t.kind, &t.dims, &t.values)?;
        let mut w = self.create(&format!("{stem}.csv"))?;
        write_field_csv(&mut w, spec, u)?;
        w.flush()?;
        Ok(())
    }

    fn time(&mut self, label: &str, start: Instant) {
        self.timings.insert(label.into(), json!(start.elapsed().as_secs_f64()));
    }

    fn manifest(mut self, cmd: Command, cfg: &RunConfig, extra: Value) -> Result<()> {
        let mut files = std::mem::take(&mut self.files);
        files.push("manifest.json".into());
        let manifest = json!({
            "command": cmd.name(),
            "version": env!("CARGO_PKG_VERSION"),
            "seed": cfg.seed,
            "config": cfg,
            "outputs": files,
            "timings_s": self.timings,
            "result": extra,
            "tensor_format": "magic MWTENSOR, u32 version=1, u32 kind (0 state, 1 Xi, 2 Xi*, 3 operator, 4 other), u32 ndim, ndim x u64 dims, then row-major (re, im) f64 pairs, little-endian",
        });
        let mut w = BufWriter::new(File::create(self.dir.join("manifest.json"))?);
        serde_json::to_writer_pretty(&mut w, &manifest)?;
        w.write_all(b"\n")?;
        w.flush()?;
        Ok(())
    }
}

fn grid_context(cfg: &RunConfig) -> Result<Context64> {
    if cfg.backend != Backend::Grid {
        bail!("this command needs backend=grid");
    }
    let spec = Grid64::new(cfg.algebra().dim(), cfg.n, cfg.length, cfg.epsilon)?;
    Ok(Context64::new(spec, cfg.magnetic_potential())?)
}

fn load_state(src: &StateSource, spec: &Grid64) -> Result<Vec<Complex64>> {
    match src {
        StateSource::Gaussian { center, sigma, momentum, chirp } => Ok(spec.gaussian(center, *sigma, momentum, *chirp)),
        StateSource::File { path } => {
            let t = read_tensor(&mut BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))?;
            if t.kind != TensorKind::State || t.values.len() != spec.size() {
                bail!("{} is not a state tensor with {} samples", path.display(), spec.size());
            }
            Ok(t.values)
        }
    }
}

fn default_f(dim: usize) -> StateSource {
    StateSource::Gaussian { center: vec![0.5; dim], sigma: 1.0, momentum: vec![1.0; dim], chirp: 0.0 }
}

fn states(cfg: &RunConfig, spec: &Grid64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let f = load_state(cfg.f.as_ref().unwrap_or(&default_f(spec.dim())), spec)?;
    let phi = spec.normalized(load_state(&cfg.window, spec)?)?;
    Ok((f, phi))
}

fn load_symbol(path: &Path, spec: &Grid64) -> Result<Field64> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let u = if path.extension().is_some_and(|e| e == "csv") {
        read_field_csv(BufReader::new(file), spec, Side::XiStar)?
    } else {
        Field64::from_tensor(&read_tensor(&mut BufReader::new(file))?)?
    };
    spec.check_field(&u, Side::XiStar).with_context(|| format!("{} is not a symbol on this grid", path.display()))?;
    Ok(u)
}

fn state_expr(src: &StateSource) -> Result<StateExpr> {
    match src {
        StateSource::Gaussian { center, sigma, momentum, chirp } => {
            let d = center.len();
            let mut phase = Polynomial::zero(d);
            for a in 0..d {
                let x = Polynomial::var(d, a);
                let shifted = &x - &Polynomial::constant(d, center[a]);
                phase = &phase + &x.scale(&momentum[a]);
                phase = &phase + &shifted.pow(2).scale(&(chirp / 2.0));
            }
            Ok(StateExpr::Product(vec![
                StateExpr::Gaussian { center: center.clone(), sigma: vec![*sigma; d] },
                StateExpr::Phase(phase),
            ]))
        }
        StateSource::File { .. } => bail!("the quadrature backend takes closed-form states only"),
    }
}

fn quadrature_ambiguity(cfg: &RunConfig, out: &mut Outputs) -> Result<Value> {
    let alg = cfg.algebra();
    let d = alg.dim();
    let q = QuadratureSpec::new(d, cfg.nodes, cfg.half_width, cfg.epsilon)?;
    let amb = QuadratureAmbiguity::new(&alg, &cfg.magnetic_potential(), q.clone())?;
    let f = state_expr(cfg.f.as_ref().unwrap_or(&default_f(d)))?;
    let phi = state_expr(&cfg.window)?;
    let rule = q.rule();
    let mut values = Vec::with_capacity(rule.len() * amb.xi_rule().len());
    for i in 0..rule.len() {
        values.extend(amb.formula_row(&f, &phi, &rule.point(i).0));
    }
    out.tensor("ambiguity.bin", TensorKind::Other, &vec![cfg.nodes; 2 * d], &values)?;
    let mut w = out.create("nodes.csv")?;
    writeln!(w, "# Gauss-Legendre nodes per axis on [-{0}, {0}], shared by the X and xi axes", cfg.half_width)?;
    writeln!(w, "index,node,weight")?;
    let (nodes, weights) = magweyl::repspace::quadrature::gauss_legendre(cfg.nodes);
    for (i, (x, wt)) in nodes.iter().zip(&weights).enumerate() {
        writeln!(w, "{i},{:?},{:?}", x * cfg.half_width, wt * cfg.half_width)?;
    }
    w.flush()?;
    Ok(json!({ "points": values.len() }))
}

/// Runs `cmd` and returns the process exit code.
pub fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    let mut out = Outputs::new(&cfg.out)?;
    let mut code = 0;
    let result = match cmd {
        Command::Verify => {
            let vc = verify_config(cfg)?;
            let outcome = run_suite(&vc)?;
            emit_reports(&outcome.reports, &cfg.out)?;
            out.files.extend(["summary.csv".to_string(), "reports.jsonl".to_string()]);
            for (name, secs) in &outcome.timings {
                out.timings.insert(name.clone(), json!(secs));
            }
            for r in &outcome.reports {
                let status = match (r.threshold, r.passed) {
                    (None, _) => "INFO",
                    (Some(_), true) => "PASS",
                    (Some(_), false) => "FAIL",
                };
                let t = r.threshold.map(|t| format!(" <= {t:e}")).unwrap_or_default();
                println!("{status} {} / {}: {:e}{t}", r.check, r.name, r.metric);
            }
            code = outcome.exit_code();
            json!({ "verify": vc.to_json(), "passed": code == 0 })
        }
        Command::Ambiguity if cfg.backend == Backend::Quadrature => quadrature_ambiguity(cfg, &mut out)?,
        Command::Ambiguity => {
            let ctx = grid_context(cfg)?;
            let (f, phi) = states(cfg, ctx.spec())?;
            let amb = ctx.ambiguity(&f, &phi)?;
            out.field("ambiguity", ctx.spec(), &amb)?;
            json!({ "l2_norm": amb.norm() })
        }
        Command::Wigner => {
            let ctx = grid_context(cfg)?;
            let (f, phi) = states(cfg, ctx.spec())?;
            let w = ctx.wigner(&f, &phi)?;
            out.field("wigner", ctx.spec(), &w)?;
            json!({ "l2_norm": w.norm() })
        }
        Command::Quantize => {
            let ctx = grid_context(cfg)?;
            let a = symbol_a(cfg, &ctx)?;
            let op = ctx.quantize(&a)?;
            let s = ctx.spec().size();
            out.tensor("operator.bin", TensorKind::Operator, &[s, s], op.data())?;
            let sv = op.singular_values();
            let mut w = out.create("singular_values.csv")?;
            writeln!(w, "# singular values of Op(a) acting on grid samples, descending")?;
            writeln!(w, "index,sigma")?;
            for (i, v) in sv.iter().enumerate() {
                writeln!(w, "{i},{v:?}")?;
            }
            w.flush()?;
            let (op_n, tr_n, hs_n) = (sv[0], sv.iter().sum::<f64>(), op.hs_norm());
            println!("operator_norm {op_n:?}\ntrace_norm {tr_n:?}\nhs_norm {hs_n:?}");
            json!({ "operator_norm": op_n, "trace_norm": tr_n, "hs_norm": hs_n, "deviation": ctx.deviation() })
        }
        Command::Moyal => {
            let ctx = grid_context(cfg)?;
            let a = symbol_a(cfg, &ctx)?;
            let b = match &cfg.symbol_b {
                Some(p) => load_symbol(p, ctx.spec())?,
                None => {
                    let (f, phi) = states(cfg, ctx.spec())?;
                    ctx.wigner(&phi, &f)?
                }
            };
            let m = ctx.moyal(&a, &b)?;
            out.field("moyal", ctx.spec(), &m)?;
            json!({ "l2_norm": m.norm() })
        }
        Command::Modnorm => {
            let ctx = grid_context(cfg)?;
            let e = &cfg.exponents;
            let (f, phi) = states(cfg, ctx.spec())?;
            let (quantity, value) = match &cfg.symbol_a {
                Some(p) => {
                    let a = load_symbol(p, ctx.spec())?;
                    ("symbol", mod_norm_symbol(&ctx, &a, &phi, &phi, &e.r, &e.s)?)
                }
                None => {
                    let dec = Decomposition::standard(ctx.spec().dim());
                    ("vector", mod_norm_vector(&ctx, &f, &phi, &e.r, &e.s, &dec)?)
                }
            };
            println!("{value:?}");
            let mut w = out.create("modnorm.csv")?;
            writeln!(w, "# mixed norm, inner over the first factor (position axes for vectors), outer over the second")?;
            writeln!(w, "quantity,r,s,value")?;
            writeln!(w, "{quantity},{},{},{value:?}", e.r, e.s)?;
            w.flush()?;
            json!({ "quantity": quantity, "value": value })
        }
        Command::GroupInfo => {
            let alg = cfg.algebra();
            let fg = build_fg(&alg);
            let st = semidirect_nilpotency_check(&alg, &fg)?;
            let info = json!({
                "group": alg.name(),
                "dim": alg.dim(),
                "step": alg.step(),
                "structure": alg.structure_json(),
                "fg_dim": fg.len(),
                "fg_basis": fg.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "semidirect": st,
            });
            println!("group {}", alg.name());
            println!("dim F_G = {}", fg.len());
            println!("semidirect step = {}", st.step);
            println!("semidirect nilpotent = {}", st.is_nilpotent);
            println!("jacobi = {}", st.jacobi_holds);
            let mut w = out.create("group_info.json")?;
            serde_json::to_writer_pretty(&mut w, &info)?;
            w.write_all(b"\n")?;
            w.flush()?;
            info
        }
    };
    out.time("total", start);
    out.manifest(cmd, cfg, result)?;
    Ok(code)
}

fn symbol_a(cfg: &RunConfig, ctx: &Context64) -> Result<Field64> {
    match &cfg.symbol_a {
        Some(p) => load_symbol(p, ctx.spec()),
        None => {
            let (f, phi) = states(cfg, ctx.spec())?;
            Ok(ctx.wigner(&f, &phi)?)
        }
    }
}

pub fn verify_config(cfg: &RunConfig) -> Result<VerifyConfig> {
    let mut vc = VerifyConfig { seed: cfg.seed, epsilon: cfg.epsilon, ..VerifyConfig::default() };
    if !cfg.potential.is_empty() {
        if cfg.algebra().dim() != 1 {
            bail!("verify takes a potential on a one-dimensional group only");
        }
        vc.potential = cfg.magnetic_potential();
    }
    let v = &cfg.verify;
    macro_rules! take {
        ($($f:ident),*) => { $( if let Some(x) = v.$f.clone() { vc.$f = x; } )* };
    }
    take!(n_large, length_large, n_medium, length_medium, n_small, length_small, orthogonality_trials, wigner_trials, op_trials);
    vc.tolerance = v.tolerance;
    vc.only = v.only.clone();
    Ok(vc)
}
