use super::{Axis, SampledFunction, UniformGrid};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::io::{Read, Write};

/// Grids above this size are refused by the CSV writer.
pub const CSV_MAX_POINTS: usize = 1 << 16;

/// Little-endian layout: d, then (N_i, R_i) per axis, then interleaved re/im payload.
pub fn write_binary(f: &SampledFunction, mut w: impl Write) -> Result<()> {
    let g = f.grid();
    w.write_all(&(g.dim() as u64).to_le_bytes())?;
    for a in g.axes() {
        w.write_all(&(a.n as u64).to_le_bytes())?;
        w.write_all(&a.extent.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(16 * f.values().len());
    for v in f.values() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_u64(r: &mut impl Read) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_binary(mut r: impl Read) -> Result<SampledFunction> {
    let d = read_u64(&mut r)? as usize;
    if !(1..=3).contains(&d) {
        return Err(Error::Grid(format!("bad dimension {d} in header")));
    }
    let mut axes = Vec::with_capacity(d);
    for _ in 0..d {
        let n = read_u64(&mut r)? as usize;
        let extent = read_f64(&mut r)?;
        axes.push(Axis { n, extent });
    }
    let grid = UniformGrid::new(axes)?;
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        values.push(Complex64::new(re, im));
    }
    SampledFunction::new(grid, values)
}

/// One row per point: coordinates, re, im.
pub fn write_csv(f: &SampledFunction, w: impl Write) -> Result<()> {
    let g = f.grid();
    if g.len() > CSV_MAX_POINTS {
        return Err(Error::Grid(format!(
            "{} points is too many for CSV (limit {CSV_MAX_POINTS})",
            g.len()
        )));
    }
    let mut out = csv::Writer::from_writer(w);
    let names = ["x", "y", "t"];
    let mut header: Vec<&str> = names[..g.dim()].to_vec();
    header.extend(["re", "im"]);
    out.write_record(&header).map_err(csv_err)?;
    for (i, v) in f.values().iter().enumerate() {
        let c = g.coords(i);
        let mut row: Vec<String> = c[..g.dim()].iter().map(|x| format!("{x:e}")).collect();
        row.push(format!("{:e}", v.re));
        row.push(format!("{:e}", v.im));
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_roundtrip_and_header() {
        let g = UniformGrid::line(16, 2.5).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new(x[0], -x[0] * x[0])).unwrap();
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), 24 + 16 * 16);
        assert_eq!(u64::from_le_bytes(buf[0..8].try_into().unwrap()), 1);
        assert_eq!(u64::from_le_bytes(buf[8..16].try_into().unwrap()), 16);
        assert_eq!(f64::from_le_bytes(buf[16..24].try_into().unwrap()), 2.5);
        let back = read_binary(&buf[..]).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn csv_small_only() {
        let g = UniformGrid::cube(2, 16, 1.0).unwrap();
        let mut buf = Vec::new();
        write_csv(&SampledFunction::zeros(g), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,y,re,im\n"));
        assert_eq!(text.lines().count(), 257);
        let big = UniformGrid::line(1 << 17, 1.0).unwrap();
        assert!(write_csv(&SampledFunction::zeros(big), Vec::new()).is_err());
    }
}
