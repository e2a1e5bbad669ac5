//! CSV and binary tensor serialization.
//!
//! Binary tensor layout, all integers and floats little-endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 8 | magic `MWTENSOR` |
//! | 4 | `u32` format version (1) |
//! | 4 | `u32` kind: 0 state, 1 field on `Ξ`, 2 field on `Ξ*`, 3 operator, 4 other |
//! | 4 | `u32` number of axes `r` |
//! | 8·r | `u64` axis lengths |
//! | 16·Π | complex entries as `(re: f64, im: f64)`, row-major |

use std::io::{BufRead, Read, Write};

use num_complex::Complex;

use super::{GridSpec, PhaseSpaceField, Side};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAGIC: &[u8; 8] = b"MWTENSOR";
pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    State = 0,
    Xi = 1,
    XiStar = 2,
    Operator = 3,
    Other = 4,
}

impl TensorKind {
    fn from_u32(v: u32) -> Result<Self> {
        Ok(match v {
            0 => TensorKind::State,
            1 => TensorKind::Xi,
            2 => TensorKind::XiStar,
            3 => TensorKind::Operator,
            4 => TensorKind::Other,
            _ => return Err(Error::Parse(format!("unknown tensor kind {v}"))),
        })
    }

    pub fn of_side(side: Side) -> Self {
        match side {
            Side::Xi => TensorKind::Xi,
            Side::XiStar => TensorKind::XiStar,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub kind: TensorKind,
    pub dims: Vec<usize>,
    pub values: Vec<Complex<f64>>,
}

pub fn write_tensor<W: Write>(w: &mut W, kind: TensorKind, dims: &[usize], values: &[Complex<f64>]) -> Result<()> {
    let total: usize = dims.iter().product();
    if total != values.len() {
        return Err(Error::Dimension { expected: total, got: values.len() });
    }
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(kind as u32).to_le_bytes())?;
    w.write_all(&(dims.len() as u32).to_le_bytes())?;
    for &d in dims {
        w.write_all(&(d as u64).to_le_bytes())?;
    }
    for v in values {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_tensor<R: Read>(r: &mut R) -> Result<Tensor> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Parse("not a tensor file (bad magic)".into()));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported tensor version {version}")));
    }
    let kind = TensorKind::from_u32(read_u32(r)?)?;
    let ndim = read_u32(r)? as usize;
    let mut dims = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        dims.push(u64::from_le_bytes(b) as usize);
    }
    let total: usize = dims.iter().product();
    let mut values = Vec::with_capacity(total);
    let mut b = [0u8; 16];
    for _ in 0..total {
        r.read_exact(&mut b)?;
        let re = f64::from_le_bytes(b[..8].try_into().unwrap());
        let im = f64::from_le_bytes(b[8..].try_into().unwrap());
        values.push(Complex::new(re, im));
    }
    Ok(Tensor { kind, dims, values })
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn to_f64<T: Real>(v: &Complex<T>) -> Complex<f64> {
    Complex::new(v.re.approx_f64(), v.im.approx_f64())
}

impl<T: Real> PhaseSpaceField<T> {
    pub fn to_tensor(&self) -> Tensor {
        Tensor {
            kind: TensorKind::of_side(self.side),
            dims: vec![self.n; 2 * self.dim],
            values: self.values.iter().map(to_f64).collect(),
        }
    }

    pub fn from_tensor(t: &Tensor) -> Result<Self> {
        let side = match t.kind {
            TensorKind::Xi => Side::Xi,
            TensorKind::XiStar => Side::XiStar,
            k => return Err(Error::Parse(format!("tensor of kind {k:?} is not a phase-space field"))),
        };
        if t.dims.len() % 2 != 0 || t.dims.is_empty() || t.dims.iter().any(|&d| d != t.dims[0]) {
            return Err(Error::Parse("phase-space tensor needs 2d axes of equal length".into()));
        }
        Ok(Self {
            side,
            dim: t.dims.len() / 2,
            n: t.dims[0],
            values: t.values.iter().map(|v| Complex::new(T::lit(v.re), T::lit(v.im))).collect(),
        })
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:e}")
}

/// Writes a state as `i1,..,id,re,im` with centered indices.
pub fn write_state_csv<T: Real, W: Write>(w: &mut W, spec: &GridSpec<T>, f: &[Complex<T>]) -> Result<()> {
    spec.check_state(f)?;
    writeln!(w, "# grid state: x = index * h, h = {}, inner product sum f conj(g) h^d", fmt_f64(spec.h().approx_f64()))?;
    let idx: Vec<String> = (1..=spec.dim()).map(|a| format!("i{a}")).collect();
    writeln!(w, "{},re,im", idx.join(","))?;
    for (j, v) in f.iter().enumerate() {
        let m: Vec<String> = spec.multi_index(j).iter().map(|k| k.to_string()).collect();
        let v = to_f64(v);
        writeln!(w, "{},{},{}", m.join(","), fmt_f64(v.re), fmt_f64(v.im))?;
    }
    Ok(())
}

/// Writes a field as `i1,..,i2d,re,im` with centered indices; the comment
/// header records the axis steps and the Fourier convention.
pub fn write_field_csv<T: Real, W: Write>(w: &mut W, spec: &GridSpec<T>, u: &PhaseSpaceField<T>) -> Result<()> {
    spec.check_field(u, u.side)?;
    let (first, second, names) = match u.side {
        Side::Xi => (spec.h(), spec.xi_step(), ("X", "xi")),
        Side::XiStar => (spec.y_step(), spec.eta_step(), ("y", "eta")),
    };
    writeln!(
        w,
        "# side {}: {} = index * {}, {} = index * {}; cell weight N^-d; epsilon = {}",
        u.side.name(),
        names.0,
        fmt_f64(first.approx_f64()),
        names.1,
        fmt_f64(second.approx_f64()),
        fmt_f64(spec.epsilon().approx_f64())
    )?;
    writeln!(w, "# Fourier: check_a(X,xi) = sum a(y,eta) exp(-i(xi.y - eta.X)) N^-d")?;
    let d = spec.dim();
    let idx: Vec<String> = (1..=2 * d).map(|a| format!("i{a}")).collect();
    writeln!(w, "{},re,im", idx.join(","))?;
    let block = spec.size();
    for (j, v) in u.values.iter().enumerate() {
        let mut m = spec.multi_index(j / block);
        m.extend(spec.multi_index(j % block));
        let m: Vec<String> = m.iter().map(|k| k.to_string()).collect();
        let v = to_f64(v);
        writeln!(w, "{},{},{}", m.join(","), fmt_f64(v.re), fmt_f64(v.im))?;
    }
    Ok(())
}

/// Reads a CSV written by [`write_field_csv`] back onto the given grid.
pub fn read_field_csv<T: Real, R: BufRead>(r: R, spec: &GridSpec<T>, side: Side) -> Result<PhaseSpaceField<T>> {
    let mut field = spec.zero_field(side);
    let d = spec.dim();
    let block = spec.size();
    let mut header_seen = false;
    let mut seen = vec![false; field.values.len()];
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 2 * d + 2 {
            return Err(Error::Parse(format!("line {}: expected {} columns", lineno + 1, 2 * d + 2)));
        }
        let nums = cols[..2 * d]
            .iter()
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        let half = (spec.n() / 2) as i64;
        if nums.iter().any(|&k| k < -half || k >= half) {
            return Err(Error::Parse(format!("line {}: index outside the grid", lineno + 1)));
        }
        let re: f64 = cols[2 * d].trim().parse().map_err(|_| Error::Parse(format!("line {}: bad re", lineno + 1)))?;
        let im: f64 = cols[2 * d + 1].trim().parse().map_err(|_| Error::Parse(format!("line {}: bad im", lineno + 1)))?;
        let flat = spec.flat_index(&nums[..d]) * block + spec.flat_index(&nums[d..]);
        field.values[flat] = Complex::new(T::lit(re), T::lit(im));
        seen[flat] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Parse("field CSV does not cover the grid".into()));
    }
    Ok(field)
}
