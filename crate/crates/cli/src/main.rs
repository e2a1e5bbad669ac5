use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use magweyl_cli::{dispatch, Command, ConfigBuilder};

/// Ambiguity functions, Wigner distributions, quantization and modulation
/// norms for magnetic Weyl calculus on nilpotent groups.
///
/// Settings come from `--config`, then the flags below, then trailing
/// `key=value` arguments (`grid.n=32`, `r=inf`, `A: [comp=1, exp=(0,1), coeff=1]`).
#[derive(Parser, Debug)]
#[command(name = "magweyl", version, allow_negative_numbers = true)]
struct Cli {
    /// Flat `key=value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// abelian:1..3, heisenberg or engel.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Grid points per axis.
    #[arg(long, global = true)]
    n: Option<String>,
    /// Full side length of the grid box.
    #[arg(long, global = true)]
    extent: Option<String>,
    #[arg(long, global = true)]
    epsilon: Option<String>,
    /// grid or quadrature.
    #[arg(long, global = true)]
    backend: Option<String>,
    /// Gauss-Legendre nodes per axis for the quadrature backend.
    #[arg(long, global = true)]
    nodes: Option<String>,
    /// File of potential entries, one `A: [...]` per line.
    #[arg(long, global = true)]
    potential: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Restrict `verify` to the named check (repeatable).
    #[arg(long, global = true)]
    only: Vec<String>,
    /// Replace every verify threshold.
    #[arg(long, global = true)]
    tolerance: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    r: Option<String>,
    #[arg(long, global = true)]
    s: Option<String>,
    #[arg(long, global = true)]
    r1: Option<String>,
    #[arg(long, global = true)]
    s1: Option<String>,
    #[arg(long, global = true)]
    r2: Option<String>,
    #[arg(long, global = true)]
    s2: Option<String>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Run the check suite; exit code 1 if any asserted check fails.
    Verify { settings: Vec<String> },
    /// Ambiguity function of `f` against the window.
    Ambiguity { settings: Vec<String> },
    /// Cross-Wigner distribution of `f` and the window.
    Wigner { settings: Vec<String> },
    /// Quantize a stored symbol (`a=...`) or the Wigner distribution of `f` and the window.
    Quantize { settings: Vec<String> },
    /// Moyal product of two stored symbols (`a=...`, `b=...`).
    Moyal { settings: Vec<String> },
    /// Modulation norm of a stored symbol (`a=...`) or of `f`.
    Modnorm { settings: Vec<String> },
    /// Dimension of F_G and the structure of the semidirect product.
    GroupInfo { settings: Vec<String> },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let mut b = ConfigBuilder::new();
    let (cmd, settings) = match cli.command {
        Sub::Verify { settings } => (Command::Verify, settings),
        Sub::Ambiguity { settings } => (Command::Ambiguity, settings),
        Sub::Wigner { settings } => (Command::Wigner, settings),
        Sub::Quantize { settings } => (Command::Quantize, settings),
        Sub::Moyal { settings } => (Command::Moyal, settings),
        Sub::Modnorm { settings } => (Command::Modnorm, settings),
        Sub::GroupInfo { settings } => (Command::GroupInfo, settings),
    };
    if cmd == Command::GroupInfo {
        b.set("grid.backend", "quadrature")?;
    }
    if let Some(path) = &cli.config {
        b.load_file(path)?;
    }
    let flags = [
        ("group", cli.group),
        ("grid.n", cli.n),
        ("grid.length", cli.extent),
        ("epsilon", cli.epsilon),
        ("grid.backend", cli.backend),
        ("grid.nodes", cli.nodes),
        ("seed", cli.seed),
        ("verify.tolerance", cli.tolerance),
        ("exponents.r", cli.r),
        ("exponents.s", cli.s),
        ("exponents.r1", cli.r1),
        ("exponents.s1", cli.s1),
        ("exponents.r2", cli.r2),
        ("exponents.s2", cli.s2),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            b.set(key, &v)?;
        }
    }
    if let Some(p) = &cli.potential {
        b.set("potential.file", &p.to_string_lossy())?;
    }
    if let Some(p) = &cli.out {
        b.set("out", &p.to_string_lossy())?;
    }
    for name in &cli.only {
        b.set("verify.only", name)?;
    }
    for s in &settings {
        if cmd == Command::GroupInfo && !s.contains('=') && !s.starts_with("A:") {
            b.set("group", s)?;
        } else {
            b.assign(s)?;
        }
    }
    let cfg = b.finish()?;
    dispatch(cmd, &cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
