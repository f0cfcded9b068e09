//! The `DZM1` field file format and its metadata sidecar.
//!
//! Layout (all little-endian): magic `DZM1`; u32 nx, ny, nz; f64 L (box
//! half-width); u32 ncomp in {1, 4, 16}; then nx*ny*nz*ncomp complex values
//! as (f64 re, f64 im) pairs, x-fastest over points, component-fastest
//! within a point. 16-component records hold 4x4 matrices row-major.
//!
//! A sidecar `<name>.meta.json` carries `{"rho": .., "C": .., "fixture": ..}`
//! where applicable (potentials, fixture exports).

use super::{Domain, Grid, MatrixPotential, ScalarField, SpinorField};
use crate::algebra::Matrix4;
use crate::error::DzmError;
use crate::{Result, C64};
use serde::{Deserialize, Serialize};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"DZM1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FieldMeta {
    pub rho: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub fixture: String,
}

fn write_header(w: &mut impl Write, grid: Grid, ncomp: u32) -> Result<()> {
    w.write_all(MAGIC)?;
    let n = grid.n() as u32;
    for _ in 0..3 {
        w.write_all(&n.to_le_bytes())?;
    }
    w.write_all(&grid.box_half().to_le_bytes())?;
    w.write_all(&ncomp.to_le_bytes())?;
    Ok(())
}

fn read_header(r: &mut impl Read) -> Result<(Grid, u32)> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(DzmError::Format(format!(
            "bad magic {:?}, expected DZM1",
            magic
        )));
    }
    let mut b4 = [0u8; 4];
    let mut dims = [0u32; 3];
    for d in dims.iter_mut() {
        r.read_exact(&mut b4)?;
        *d = u32::from_le_bytes(b4);
    }
    if dims[0] != dims[1] || dims[1] != dims[2] {
        return Err(DzmError::Format(format!(
            "only cubic grids are supported, got {dims:?}"
        )));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let l = f64::from_le_bytes(b8);
    r.read_exact(&mut b4)?;
    let ncomp = u32::from_le_bytes(b4);
    if ![1, 4, 16].contains(&ncomp) {
        return Err(DzmError::Format(format!("unsupported ncomp {ncomp}")));
    }
    let grid = Grid::new(dims[0] as usize, l)?;
    Ok((grid, ncomp))
}

fn write_complex(w: &mut impl Write, v: C64) -> Result<()> {
    w.write_all(&v.re.to_le_bytes())?;
    w.write_all(&v.im.to_le_bytes())?;
    Ok(())
}

fn read_complex(r: &mut impl Read) -> Result<C64> {
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let re = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let im = f64::from_le_bytes(b8);
    Ok(C64::new(re, im))
}

pub fn write_spinor(path: &Path, f: &SpinorField) -> Result<()> {
    assert!(f.domain == Domain::Position, "files hold position-side fields");
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, f.grid, 4)?;
    for lin in 0..f.grid.num_points() {
        for c in 0..4 {
            write_complex(&mut w, f.comps[c][lin])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_spinor(path: &Path) -> Result<SpinorField> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let (grid, ncomp) = read_header(&mut r)?;
    if ncomp != 4 {
        return Err(DzmError::Format(format!(
            "expected a 4-component field, file has ncomp = {ncomp}"
        )));
    }
    let mut f = SpinorField::zeros(grid);
    for lin in 0..grid.num_points() {
        for c in 0..4 {
            f.comps[c][lin] = read_complex(&mut r)?;
        }
    }
    Ok(f)
}

pub fn write_scalar(path: &Path, u: &ScalarField) -> Result<()> {
    assert!(u.domain == Domain::Position);
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, u.grid, 1)?;
    for v in &u.values {
        write_complex(&mut w, *v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_scalar(path: &Path) -> Result<ScalarField> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let (grid, ncomp) = read_header(&mut r)?;
    if ncomp != 1 {
        return Err(DzmError::Format(format!(
            "expected a scalar field, file has ncomp = {ncomp}"
        )));
    }
    let mut u = ScalarField::zeros(grid);
    for v in u.values.iter_mut() {
        *v = read_complex(&mut r)?;
    }
    Ok(u)
}

/// Writes the 16-component record and the metadata sidecar.
pub fn write_potential(path: &Path, q: &MatrixPotential, fixture: &str) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, q.grid, 16)?;
    for m in &q.values {
        for row in &m.0 {
            for v in row {
                write_complex(&mut w, *v)?;
            }
        }
    }
    w.flush()?;
    let meta = FieldMeta {
        rho: q.rho,
        c: q.c_bound,
        fixture: fixture.to_string(),
    };
    write_meta(path, &meta)
}

pub fn read_potential(path: &Path) -> Result<MatrixPotential> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let (grid, ncomp) = read_header(&mut r)?;
    if ncomp != 16 {
        return Err(DzmError::Format(format!(
            "expected a 16-component record, file has ncomp = {ncomp}"
        )));
    }
    let mut values = vec![Matrix4::zeros(); grid.num_points()];
    for m in values.iter_mut() {
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = read_complex(&mut r)?;
            }
        }
    }
    let meta = read_meta(path)?;
    MatrixPotential::new(grid, values, meta.rho, meta.c)
}

fn meta_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    std::path::PathBuf::from(s)
}

pub fn write_meta(path: &Path, meta: &FieldMeta) -> Result<()> {
    let s = serde_json::to_string_pretty(meta)?;
    std::fs::write(meta_path(path), s + "\n")?;
    Ok(())
}

pub fn read_meta(path: &Path) -> Result<FieldMeta> {
    let s = std::fs::read_to_string(meta_path(path))?;
    Ok(serde_json::from_str(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::synth;

    #[test]
    fn spinor_round_trip_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(8, 4.0).unwrap();
        let f = synth::random_spinor(g, 11);
        let p = dir.path().join("f.dzm");
        write_spinor(&p, &f).unwrap();
        let back = read_spinor(&p).unwrap();
        assert!(back.grid == g);
        for c in 0..4 {
            assert_eq!(f.comps[c], back.comps[c], "component {c} bit-exact");
        }
    }

    #[test]
    fn header_layout_is_pinned() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(8, 2.5).unwrap();
        let u = ScalarField::zeros(g);
        let p = dir.path().join("u.dzm");
        write_scalar(&p, &u).unwrap();
        let bytes = std::fs::read(&p).unwrap();
        assert_eq!(&bytes[0..4], b"DZM1");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 8);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 8);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 8);
        assert_eq!(f64::from_le_bytes(bytes[16..24].try_into().unwrap()), 2.5);
        assert_eq!(u32::from_le_bytes(bytes[24..28].try_into().unwrap()), 1);
        assert_eq!(bytes.len(), 28 + 8 * 8 * 8 * 16);
    }

    #[test]
    fn potential_round_trip_with_meta() {
        let dir = tempfile::tempdir().unwrap();
        let g = Grid::new(8, 4.0).unwrap();
        let q = MatrixPotential::from_fn(g, 2.0, 3.0, |x| {
            crate::algebra::alpha_matrix(x).scale(C64::new(
                -3.0 / (1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).powi(2),
                0.0,
            ))
        })
        .unwrap();
        let p = dir.path().join("q.dzm");
        write_potential(&p, &q, "loss-yau").unwrap();
        let back = read_potential(&p).unwrap();
        assert_eq!(back.rho, 2.0);
        assert_eq!(back.c_bound, 3.0);
        for lin in [0usize, 100, 511] {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(back.values[lin].0[i][j], q.values[lin].0[i][j]);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_magic() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("junk.dzm");
        std::fs::write(&p, b"NOPE0000000000000000000000000000").unwrap();
        assert!(matches!(read_spinor(&p), Err(DzmError::Format(_))));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(8))]
        #[test]
        fn scalar_round_trip(seed in 0u64..1000) {
            let dir = tempfile::tempdir().unwrap();
            let g = Grid::new(8, 3.0).unwrap();
            let u = synth::compact_smooth_scalar(g, seed, 0.5, 3.0, 1.2);
            let p = dir.path().join("u.dzm");
            write_scalar(&p, &u).unwrap();
            let back = read_scalar(&p).unwrap();
            proptest::prop_assert!(back.values == u.values);
        }
    }
}
