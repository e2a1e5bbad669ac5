//! Run configuration: a flat `key=value` file with section prefixes,
//! overridden by flags and by trailing `key=value` arguments.
//!
//! ```text
//! # comments start with '#'
//! group=abelian:2
//! grid.n=32
//! grid.length=12
//! epsilon=1
//! A: [comp=1, exp=(0,1), coeff=1/1]
//! exponents.r=inf
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use magweyl::modspace::Exponent;
use magweyl::nilpotent::LieAlgebraSpec;
use magweyl::poly::parse_rational;
use magweyl::repspace::Backend;
use magweyl::MagneticPotential;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    Value { key: String, reason: String },
    #[error("invalid exponent for `{key}`: {reason}")]
    Exponent { key: String, reason: String },
    #[error("potential entry `{entry}`: {reason}")]
    Potential { entry: String, reason: String },
    #[error("non-rational coefficient `{0}`")]
    Coefficient(String),
    #[error("group `{0}` is not known (expected abelian:1..3, heisenberg or engel)")]
    Group(String),
    #[error("the grid backend needs an abelian group of dimension 1 or 2; `{0}` requires backend=quadrature")]
    Backend(String),
    #[error("cannot read `{path}`: {reason}")]
    Io { path: String, reason: String },
}

/// One term `coeff · x^exp dx_comp` of a magnetic potential; `comp` is
/// one-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialEntry {
    pub comp: usize,
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl fmt::Display for PotentialEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exp.iter().map(u32::to_string).collect();
        write!(f, "A: [comp={}, exp=({}), coeff={}]", self.comp, e.join(","), self.coeff)
    }
}

/// Parses `A: [comp=1, exp=(0,1), coeff=1/1]` (the `A:` prefix is optional).
pub fn parse_potential_entry(text: &str) -> Result<PotentialEntry, ConfigError> {
    let err = |reason: &str| ConfigError::Potential { entry: text.trim().to_string(), reason: reason.into() };
    let body = text.trim();
    let body = body.strip_prefix("A:").unwrap_or(body).trim();
    let body = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| err("expected `[...]`"))?;
    let (mut comp, mut exp, mut coeff) = (None, None, None);
    let mut rest = body.trim();
    while !rest.is_empty() {
        let (key, after) = rest.split_once('=').ok_or_else(|| err("expected `key=value`"))?;
        let after = after.trim_start();
        let (value, tail) = if let Some(inner) = after.strip_prefix('(') {
            let close = inner.find(')').ok_or_else(|| err("unclosed `(`"))?;
            (&inner[..close], &inner[close + 1..])
        } else {
            match after.find(',') {
                Some(i) => (&after[..i], &after[i..]),
                None => (after, ""),
            }
        };
        match key.trim() {
            "comp" => comp = Some(value.trim().parse::<usize>().map_err(|_| err("comp must be a positive integer"))?),
            "exp" => {
                exp = Some(
                    value
                        .split(',')
                        .map(|v| v.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err("exp must be a tuple of nonnegative integers"))?,
                )
            }
            "coeff" => {
                let v = value.trim();
                parse_rational(v).map_err(|_| ConfigError::Coefficient(v.to_string()))?;
                coeff = Some(v.to_string());
            }
            other => return Err(err(&format!("unknown field `{other}`"))),
        }
        rest = tail.trim_start().strip_prefix(',').unwrap_or(tail).trim_start();
    }
    let comp = comp.ok_or_else(|| err("missing comp"))?;
    if comp == 0 {
        return Err(err("comp is one-based"));
    }
    Ok(PotentialEntry { comp, exp: exp.ok_or_else(|| err("missing exp"))?, coeff: coeff.ok_or_else(|| err("missing coeff"))? })
}

/// Builds `A` on a group of dimension `dim`.
pub fn build_potential(dim: usize, entries: &[PotentialEntry]) -> Result<MagneticPotential, ConfigError> {
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let bad = |reason: String| ConfigError::Potential { entry: e.to_string(), reason };
        if e.comp > dim {
            return Err(bad(format!("component {} exceeds dimension {dim}", e.comp)));
        }
        if e.exp.len() != dim {
            return Err(bad(format!("exponent has {} entries, expected {dim}", e.exp.len())));
        }
        let c = parse_rational(&e.coeff).map_err(|_| ConfigError::Coefficient(e.coeff.clone()))?;
        out.push((e.comp - 1, e.exp.clone(), c));
    }
    MagneticPotential::from_entries(dim, &out).map_err(|err| ConfigError::Value { key: "potential".into(), reason: err.to_string() })
}

/// A Gaussian state `exp(−|x−c|²/(2σ²) + i p·x + i β|x−c|²/2)` or a tensor file.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSource {
    Gaussian { center: Vec<f64>, sigma: f64, momentum: Vec<f64>, chirp: f64 },
    File { path: PathBuf },
}

impl StateSource {
    pub fn gaussian(dim: usize) -> Self {
        StateSource::Gaussian { center: vec![0.0; dim], sigma: 1.0, momentum: vec![0.0; dim], chirp: 0.0 }
    }
}

fn parse_vec(key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| ConfigError::Value { key: key.into(), reason: format!("`{v}` is not a list of numbers") })
}

/// `gaussian(center=0.5; sigma=1; momentum=1; chirp=0)` or a path to a tensor.
pub fn parse_state(key: &str, text: &str, dim: usize) -> Result<StateSource, ConfigError> {
    let t = text.trim();
    let body = match t.strip_prefix("gaussian") {
        Some(b) if b.trim().is_empty() || b.trim_start().starts_with('(') => b.trim(),
        _ => return Ok(StateSource::File { path: PathBuf::from(t) }),
    };
    let body = if body.is_empty() {
        ""
    } else {
        body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(|| ConfigError::Value {
            key: key.into(),
            reason: "expected `gaussian(...)`".into(),
        })?
    };
    let mut out = StateSource::gaussian(dim);
    let StateSource::Gaussian { center, sigma, momentum, chirp } = &mut out else { unreachable!() };
    for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| ConfigError::Value { key: key.into(), reason: format!("`{part}` is not `name=value`") })?;
        let num = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| ConfigError::Value { key: key.into(), reason: format!("`{v}` is not a number") })
        };
        match k.trim() {
            "center" => *center = parse_vec(key, v)?,
            "momentum" => *momentum = parse_vec(key, v)?,
            "sigma" => *sigma = num(v)?,
            "chirp" => *chirp = num(v)?,
            other => {
                return Err(ConfigError::Value { key: key.into(), reason: format!("unknown Gaussian parameter `{other}`") })
            }
        }
    }
    if center.len() != dim || momentum.len() != dim {
        return Err(ConfigError::Value { key: key.into(), reason: format!("center and momentum need {dim} entries") });
    }
    if !(*sigma > 0.0) {
        return Err(ConfigError::Value { key: key.into(), reason: "sigma must be positive".into() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exponents {
    pub r: Exponent,
    pub s: Exponent,
    pub r1: Exponent,
    pub s1: Exponent,
    pub r2: Exponent,
    pub s2: Exponent,
}

impl Default for Exponents {
    fn default() -> Self {
        let two = Exponent::int(2);
        Self { r: two.clone(), s: two.clone(), r1: two.clone(), s1: two.clone(), r2: two.clone(), s2: two }
    }
}

/// Size and trial overrides for `verify`; `None` keeps the suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyOverrides {
    pub n_large: Option<usize>,
    pub length_large: Option<f64>,
    pub n_medium: Option<usize>,
    pub length_medium: Option<f64>,
    pub n_small: Option<usize>,
    pub length_small: Option<f64>,
    pub orthogonality_trials: Option<usize>,
    pub wigner_trials: Option<usize>,
    pub op_trials: Option<usize>,
    pub tolerance: Option<f64>,
    pub only: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub group: String,
    pub n: usize,
    pub length: f64,
    pub backend: Backend,
    pub nodes: usize,
    pub half_width: f64,
    pub epsilon: f64,
    pub potential: Vec<PotentialEntry>,
    pub window: StateSource,
    pub f: Option<StateSource>,
    pub symbol_a: Option<PathBuf>,
    pub symbol_b: Option<PathBuf>,
    pub exponents: Exponents,
    pub seed: u64,
    pub out: PathBuf,
    pub verify: VerifyOverrides,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            group: "abelian:1".into(),
            n: 64,
            length: 16.0,
            backend: Backend::Grid,
            nodes: 12,
            half_width: 3.0,
            epsilon: 1.0,
            potential: Vec::new(),
            window: StateSource::gaussian(1),
            f: None,
            symbol_a: None,
            symbol_b: None,
            exponents: Exponents::default(),
            seed: 1,
            out: PathBuf::from("magweyl-out"),
            verify: VerifyOverrides::default(),
        }
    }
}

/// Every key accepted in files, flags and trailing arguments, with aliases.
pub const KEYS: &[(&str, &[&str])] = &[
    ("group", &[]),
    ("grid.n", &["n"]),
    ("grid.length", &["grid.extent", "extent", "length"]),
    ("grid.backend", &["backend"]),
    ("grid.nodes", &["nodes"]),
    ("grid.half_width", &["half_width"]),
    ("epsilon", &[]),
    ("seed", &[]),
    ("out", &[]),
    ("potential", &["A"]),
    ("potential.file", &[]),
    ("window", &["phi"]),
    ("input.f", &["f"]),
    ("input.a", &["a"]),
    ("input.b", &["b"]),
    ("exponents.r", &["r"]),
    ("exponents.s", &["s"]),
    ("exponents.r1", &["r1"]),
    ("exponents.s1", &["s1"]),
    ("exponents.r2", &["r2"]),
    ("exponents.s2", &["s2"]),
    ("verify.only", &["only"]),
    ("verify.tolerance", &["tolerance"]),
    ("verify.n_large", &[]),
    ("verify.length_large", &[]),
    ("verify.n_medium", &[]),
    ("verify.length_medium", &[]),
    ("verify.n_small", &[]),
    ("verify.length_small", &[]),
    ("verify.trials.orthogonality", &[]),
    ("verify.trials.wigner", &[]),
    ("verify.trials.op", &[]),
];

pub fn canonical_key(key: &str) -> Option<&'static str> {
    KEYS.iter().find(|(k, aliases)| *k == key || aliases.contains(&key)).map(|(k, _)| *k)
}

/// Accumulates raw settings; `finish` validates them into a [`RunConfig`].
#[derive(Clone, Debug, Default)]
pub struct ConfigBuilder {
    settings: Vec<(&'static str, String)>,
}

impl ConfigBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let k = canonical_key(key.trim()).ok_or_else(|| ConfigError::UnknownKey(key.trim().to_string()))?;
        self.settings.push((k, value.trim().to_string()));
        Ok(())
    }

    /// One `key=value` or `A: [...]` assignment.
    pub fn assign(&mut self, text: &str) -> Result<(), ConfigError> {
        let t = text.trim();
        if t.starts_with("A:") {
            return self.set("potential", t);
        }
        let (k, v) = t.split_once('=').ok_or_else(|| ConfigError::Syntax { line: 0, text: t.to_string() })?;
        self.set(k, v)
    }

    pub fn load_str(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            self.assign(t).map_err(|e| match e {
                ConfigError::Syntax { text, .. } => ConfigError::Syntax { line: i + 1, text },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = read(path)?;
        self.load_str(&text)
    }

    pub fn finish(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        let get = |key: &str| self.settings.iter().rev().find(|(k, _)| *k == key).map(|(_, v)| v.as_str());
        if let Some(g) = get("group") {
            cfg.group = g.to_string();
        }
        let alg = LieAlgebraSpec::by_name(&cfg.group).map_err(|_| ConfigError::Group(cfg.group.clone()))?;
        let dim = alg.dim();
        cfg.window = StateSource::gaussian(dim);
        for (key, value) in &self.settings {
            let key = *key;
            let v = value.as_str();
            let bad = |reason: &str| ConfigError::Value { key: key.into(), reason: reason.into() };
            let int = || v.parse::<usize>().map_err(|_| bad("expected a nonnegative integer"));
            let real = || v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| bad("expected a finite number"));
            let exponent = || v.parse::<Exponent>().map_err(|e| ConfigError::Exponent { key: key.into(), reason: e.to_string() });
            match key {
                "group" => {}
                "grid.n" => cfg.n = int()?,
                "grid.length" => cfg.length = real()?,
                "grid.backend" => {
                    cfg.backend = match v {
                        "grid" => Backend::Grid,
                        "quadrature" => Backend::Quadrature,
                        _ => return Err(bad("expected `grid` or `quadrature`")),
                    }
                }
                "grid.nodes" => cfg.nodes = int()?,
                "grid.half_width" => cfg.half_width = real()?,
                "epsilon" => cfg.epsilon = real()?,
                "seed" => cfg.seed = v.parse().map_err(|_| bad("expected an unsigned integer"))?,
                "out" => cfg.out = PathBuf::from(v),
                "potential" => cfg.potential.push(parse_potential_entry(v)?),
                "potential.file" => {
                    for line in read(Path::new(v))?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                        cfg.potential.push(parse_potential_entry(line)?);
                    }
                }
                "window" => cfg.window = parse_state(key, v, dim)?,
                "input.f" => cfg.f = Some(parse_state(key, v, dim)?),
                "input.a" => cfg.symbol_a = Some(PathBuf::from(v)),
                "input.b" => cfg.symbol_b = Some(PathBuf::from(v)),
                "exponents.r" => cfg.exponents.r = exponent()?,
                "exponents.s" => cfg.exponents.s = exponent()?,
                "exponents.r1" => cfg.exponents.r1 = exponent()?,
                "exponents.s1" => cfg.exponents.s1 = exponent()?,
                "exponents.r2" => cfg.exponents.r2 = exponent()?,
                "exponents.s2" => cfg.exponents.s2 = exponent()?,
                "verify.only" => {
                    let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                    let known = magweyl::verify::check_names();
                    if let Some(u) = names.iter().find(|n| !known.contains(&n.as_str())) {
                        return Err(bad(&format!("unknown check `{u}` (known: {})", known.join(", "))));
                    }
                    cfg.verify.only.get_or_insert_with(Vec::new).extend(names);
                }
                "verify.tolerance" => cfg.verify.tolerance = Some(real()?),
                "verify.n_large" => cfg.verify.n_large = Some(int()?),
                "verify.length_large" => cfg.verify.length_large = Some(real()?),
                "verify.n_medium" => cfg.verify.n_medium = Some(int()?),
                "verify.length_medium" => cfg.verify.length_medium = Some(real()?),
                "verify.n_small" => cfg.verify.n_small = Some(int()?),
                "verify.length_small" => cfg.verify.length_small = Some(real()?),
                "verify.trials.orthogonality" => cfg.verify.orthogonality_trials = Some(int()?),
                "verify.trials.wigner" => cfg.verify.wigner_trials = Some(int()?),
                "verify.trials.op" => cfg.verify.op_trials = Some(int()?),
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        if cfg.epsilon == 0.0 {
            return Err(ConfigError::Value { key: "epsilon".into(), reason: "must be nonzero".into() });
        }
        if cfg.backend == Backend::Grid && !(alg.is_abelian() && dim <= 2) {
            return Err(ConfigError::Backend(cfg.group.clone()));
        }
        build_potential(dim, &cfg.potential)?;
        Ok(cfg)
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })
}

impl RunConfig {
    pub fn algebra(&self) -> LieAlgebraSpec {
        LieAlgebraSpec::by_name(&self.group).expect("validated group")
    }

    pub fn magnetic_potential(&self) -> MagneticPotential {
        build_potential(self.algebra().dim(), &self.potential).expect("validated potential")
    }
}
