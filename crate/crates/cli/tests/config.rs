use magweyl::modspace::Exponent;
use magweyl::repspace::Backend;
use magweyl::RatPoly;
use magweyl_cli::config::{parse_potential_entry, parse_state, StateSource};
use magweyl_cli::{ConfigBuilder, ConfigError};

fn load(text: &str) -> Result<magweyl_cli::RunConfig, ConfigError> {
    let mut b = ConfigBuilder::new();
    b.load_str(text)?;
    b.finish()
}

#[test]
fn empty_file_gives_defaults() {
    let cfg = load("").unwrap();
    assert_eq!(cfg, ConfigBuilder::new().finish().unwrap());
    assert_eq!(cfg.group, "abelian:1");
    assert_eq!(cfg.n, 64);
    assert_eq!(cfg.length, 16.0);
    assert_eq!(cfg.backend, Backend::Grid);
    assert_eq!(cfg.epsilon, 1.0);
    assert_eq!(cfg.seed, 1);
    assert!(cfg.potential.is_empty());
    assert_eq!(cfg.exponents.r, Exponent::int(2));
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    let cfg = load("# header\n\n  grid.n = 32 \n# n=8\nextent=12\n").unwrap();
    assert_eq!(cfg.n, 32);
    assert_eq!(cfg.length, 12.0);
}

#[test]
fn heisenberg_on_grid_is_rejected() {
    assert!(matches!(load("group=heisenberg\nbackend=grid"), Err(ConfigError::Backend(_))));
    assert!(matches!(load("group=abelian:3"), Err(ConfigError::Backend(_))));
    let cfg = load("group=heisenberg\nbackend=quadrature").unwrap();
    assert_eq!(cfg.algebra().dim(), 3);
}

#[test]
fn potential_entry_builds_x2_dx1() {
    let cfg = load("group=abelian:2\nA: [comp=1, exp=(0,1), coeff=1/1]").unwrap();
    let a = cfg.magnetic_potential();
    assert_eq!(a.components()[0], RatPoly::var(2, 1));
    assert_eq!(a.components()[1], RatPoly::zero(2));
}

#[test]
fn potential_entries_accumulate() {
    let cfg = load("group=abelian:2\nA: [comp=2, exp=(1,0), coeff=1/2]\nA: [comp=2, exp=(1,0), coeff=1/2]").unwrap();
    assert_eq!(cfg.magnetic_potential().components()[1], RatPoly::var(2, 0));
}

#[test]
fn potential_entry_round_trips_through_display() {
    let e = parse_potential_entry("A: [comp=2, exp=(3,0), coeff=-5/7]").unwrap();
    assert_eq!(e.comp, 2);
    assert_eq!(e.exp, vec![3, 0]);
    assert_eq!(parse_potential_entry(&e.to_string()).unwrap(), e);
}

#[test]
fn malformed_potential_entries_fail() {
    assert!(matches!(parse_potential_entry("A: comp=1"), Err(ConfigError::Potential { .. })));
    assert!(matches!(load("group=abelian:2\nA: [comp=1, exp=(0,1), coeff=abc]"), Err(ConfigError::Coefficient(_))));
    assert!(load("group=abelian:2\nA: [comp=3, exp=(0,1), coeff=1]").is_err());
    assert!(load("group=abelian:2\nA: [comp=1, exp=(0,1,2), coeff=1]").is_err());
}

#[test]
fn syntax_errors_carry_line_numbers() {
    assert_eq!(load("n=8\nnonsense\n"), Err(ConfigError::Syntax { line: 2, text: "nonsense".into() }));
}

#[test]
fn unknown_keys_and_values_fail() {
    assert!(matches!(load("grid.m=3"), Err(ConfigError::UnknownKey(_))));
    assert!(matches!(load("grid.n=many"), Err(ConfigError::Value { .. })));
    assert!(matches!(load("group=lorentz"), Err(ConfigError::Group(_))));
    assert!(matches!(load("exponents.r=1/2"), Err(ConfigError::Exponent { .. })));
    assert!(load("verify.only=nonexistent").is_err());
}

#[test]
fn aliases_and_later_settings_win() {
    let mut b = ConfigBuilder::new();
    b.load_str("grid.n=16\nr=inf").unwrap();
    b.assign("n=8").unwrap();
    let cfg = b.finish().unwrap();
    assert_eq!(cfg.n, 8);
    assert!(cfg.exponents.r.is_infinite());
}

#[test]
fn states_parse() {
    assert_eq!(parse_state("f", "gaussian", 2).unwrap(), StateSource::gaussian(2));
    let s = parse_state("f", "gaussian(center=0.5; sigma=2; momentum=1; chirp=0.1)", 1).unwrap();
    assert_eq!(s, StateSource::Gaussian { center: vec![0.5], sigma: 2.0, momentum: vec![1.0], chirp: 0.1 });
    assert!(matches!(parse_state("f", "gaussian_data.bin", 1).unwrap(), StateSource::File { .. }));
    assert!(parse_state("f", "gaussian(sigma=-1)", 1).is_err());
    assert!(parse_state("f", "gaussian(center=1,2)", 1).is_err());
}
