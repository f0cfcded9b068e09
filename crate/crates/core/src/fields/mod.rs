//! Discretized spinor/scalar fields on the periodic cube [-L, L)^3, the
//! unitary Fourier transform contract, and the weighted norms of the
//! function spaces used throughout.
//!
//! The periodic cube stands in for R^3: statements about R^3 operators are
//! exercised on fields that decay inside the box, and refinement studies
//! increase both L and n. Linear storage is x-fastest with volume element
//! h^3 in every position-side norm, matching the `DZM1` file format in
//! [`io`].

mod fft;
pub mod io;
pub mod synth;

use crate::algebra::{Matrix4, Spinor4};
use crate::error::DzmError;
use crate::{Result, C64};
use serde::{Deserialize, Serialize};

/// Periodic cubic grid: n points per axis on [-L, L)^3, spacing h = 2L/n,
/// dual frequencies (pi/L) * {-n/2, ..., n/2 - 1}^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    box_half: f64,
}

impl Grid {
    /// `n` must be even and at least 8; `box_half` positive and finite.
    pub fn new(n: usize, box_half: f64) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(DzmError::InvalidGrid(format!(
                "points per axis must be even and >= 8, got {n}"
            )));
        }
        if !(box_half.is_finite() && box_half > 0.0) {
            return Err(DzmError::InvalidGrid(format!(
                "box half-width must be positive and finite, got {box_half}"
            )));
        }
        Ok(Grid { n, box_half })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_half(&self) -> f64 {
        self.box_half
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.box_half / self.n as f64
    }

    pub fn num_points(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Position-side volume element h^3.
    pub fn cell(&self) -> f64 {
        let h = self.spacing();
        h * h * h
    }

    /// Frequency-side volume element (pi/L)^3.
    pub fn dual_cell(&self) -> f64 {
        let d = std::f64::consts::PI / self.box_half;
        d * d * d
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.box_half + self.spacing() * i as f64
    }

    #[inline]
    pub fn position(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        [self.coord(ix), self.coord(iy), self.coord(iz)]
    }

    /// Signed frequency index in {-n/2, ..., n/2 - 1} for storage index k.
    #[inline]
    pub fn signed_index(&self, k: usize) -> i64 {
        if k < self.n / 2 {
            k as i64
        } else {
            k as i64 - self.n as i64
        }
    }

    #[inline]
    pub fn freq_1d(&self, k: usize) -> f64 {
        std::f64::consts::PI / self.box_half * self.signed_index(k) as f64
    }

    #[inline]
    pub fn freq(&self, kx: usize, ky: usize, kz: usize) -> [f64; 3] {
        [self.freq_1d(kx), self.freq_1d(ky), self.freq_1d(kz)]
    }

    #[inline]
    pub fn linear(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.n * (iy + self.n * iz)
    }

    /// Storage index of the unpaired Nyquist row along each axis.
    #[inline]
    pub fn nyquist_index(&self) -> usize {
        self.n / 2
    }

    /// Linear index of the origin x = 0 (present since n is even).
    pub fn origin_linear(&self) -> usize {
        let c = self.n / 2;
        self.linear(c, c, c)
    }
}

/// Japanese bracket <x> = sqrt(1 + |x|^2).
#[inline]
pub fn bracket(x: [f64; 3]) -> f64 {
    (1.0 + x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// Weight exponent s for the <x>^s weighted norms; any real s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub s: f64,
}

impl WeightSpec {
    pub fn new(s: f64) -> Self {
        WeightSpec { s }
    }
}

/// Which side of the transform a field lives on. Position-side norms use
/// h^3, frequency-side norms (pi/L)^3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    Position,
    Frequency,
}

/// Complex scalar field sampled on the grid, x-fastest.
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: Grid,
    pub domain: Domain,
    pub values: Vec<C64>,
}

/// 4-component complex spinor field; components stored as separate planes.
#[derive(Debug, Clone)]
pub struct SpinorField {
    pub grid: Grid,
    pub domain: Domain,
    pub comps: [Vec<C64>; 4],
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        ScalarField {
            grid,
            domain: Domain::Position,
            values: vec![C64::default(); grid.num_points()],
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> C64) -> Self {
        let mut out = Self::zeros(grid);
        let n = grid.n();
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    out.values[grid.linear(ix, iy, iz)] = f(grid.position(ix, iy, iz));
                }
            }
        }
        out
    }

    fn volume_element(&self) -> f64 {
        match self.domain {
            Domain::Position => self.grid.cell(),
            Domain::Frequency => self.grid.dual_cell(),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (self.volume_element() * s).sqrt()
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0);
        let s: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        (self.volume_element() * s).powf(1.0 / p)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn forward(&self) -> ScalarField {
        assert!(self.domain == Domain::Position, "already on frequency side");
        let grid = self.grid;
        let n = grid.n();
        let mut values = self.values.clone();
        fft::dft3(&mut values, n, fft::Direction::Forward);
        let scale = (2.0 * std::f64::consts::PI).powf(-1.5) * grid.cell();
        fft::apply_parity_scale(&mut values, n, scale);
        ScalarField {
            grid,
            domain: Domain::Frequency,
            values,
        }
    }

    pub fn inverse(&self) -> ScalarField {
        assert!(self.domain == Domain::Frequency, "already on position side");
        let grid = self.grid;
        let n = grid.n();
        let mut values = self.values.clone();
        fft::apply_parity_scale(&mut values, n, 1.0);
        fft::dft3(&mut values, n, fft::Direction::Inverse);
        let scale = (2.0 * std::f64::consts::PI).powf(-1.5) * grid.dual_cell();
        for v in &mut values {
            *v *= scale;
        }
        ScalarField {
            grid,
            domain: Domain::Position,
            values,
        }
    }
}

impl SpinorField {
    pub fn zeros(grid: Grid) -> Self {
        SpinorField {
            grid,
            domain: Domain::Position,
            comps: std::array::from_fn(|_| vec![C64::default(); grid.num_points()]),
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> Spinor4) -> Self {
        let mut out = Self::zeros(grid);
        let n = grid.n();
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    let lin = grid.linear(ix, iy, iz);
                    let s = f(grid.position(ix, iy, iz));
                    for c in 0..4 {
                        out.comps[c][lin] = s[c];
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn at(&self, lin: usize) -> Spinor4 {
        [
            self.comps[0][lin],
            self.comps[1][lin],
            self.comps[2][lin],
            self.comps[3][lin],
        ]
    }

    #[inline]
    pub fn set(&mut self, lin: usize, s: Spinor4) {
        for c in 0..4 {
            self.comps[c][lin] = s[c];
        }
    }

    /// Pointwise C^4 magnitude as a scalar field (same domain tag).
    pub fn magnitude(&self) -> ScalarField {
        let mut out = ScalarField::zeros(self.grid);
        out.domain = self.domain;
        for i in 0..self.grid.num_points() {
            let m = (self.comps[0][i].norm_sqr()
                + self.comps[1][i].norm_sqr()
                + self.comps[2][i].norm_sqr()
                + self.comps[3][i].norm_sqr())
            .sqrt();
            out.values[i] = C64::new(m, 0.0);
        }
        out
    }

    fn volume_element(&self) -> f64 {
        match self.domain {
            Domain::Position => self.grid.cell(),
            Domain::Frequency => self.grid.dual_cell(),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        let mut s = 0.0f64;
        for c in 0..4 {
            s += self.comps[c].iter().map(|v| v.norm_sqr()).sum::<f64>();
        }
        (self.volume_element() * s).sqrt()
    }

    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0);
        let mut s = 0.0f64;
        for i in 0..self.grid.num_points() {
            let m2 = self.comps[0][i].norm_sqr()
                + self.comps[1][i].norm_sqr()
                + self.comps[2][i].norm_sqr()
                + self.comps[3][i].norm_sqr();
            s += m2.powf(0.5 * p);
        }
        (self.volume_element() * s).powf(1.0 / p)
    }

    pub fn sup_norm(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.grid.num_points() {
            let m2 = self.comps[0][i].norm_sqr()
                + self.comps[1][i].norm_sqr()
                + self.comps[2][i].norm_sqr()
                + self.comps[3][i].norm_sqr();
            m = m.max(m2);
        }
        m.sqrt()
    }

    /// Hermitian inner product with volume element.
    pub fn inner(&self, other: &SpinorField) -> C64 {
        assert!(self.grid == other.grid && self.domain == other.domain);
        let mut s = C64::default();
        for c in 0..4 {
            for (a, b) in self.comps[c].iter().zip(&other.comps[c]) {
                s += a.conj() * b;
            }
        }
        s * self.volume_element()
    }

    pub fn add(&self, other: &SpinorField) -> SpinorField {
        assert!(self.grid == other.grid && self.domain == other.domain);
        let mut out = self.clone();
        for c in 0..4 {
            for (a, b) in out.comps[c].iter_mut().zip(&other.comps[c]) {
                *a += b;
            }
        }
        out
    }

    pub fn sub(&self, other: &SpinorField) -> SpinorField {
        assert!(self.grid == other.grid && self.domain == other.domain);
        let mut out = self.clone();
        for c in 0..4 {
            for (a, b) in out.comps[c].iter_mut().zip(&other.comps[c]) {
                *a -= b;
            }
        }
        out
    }

    pub fn scale(&self, c: C64) -> SpinorField {
        let mut out = self.clone();
        for comp in &mut out.comps {
            for v in comp.iter_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Componentwise mean over the box (the DC Fourier coefficient up to
    /// normalization).
    pub fn mean(&self) -> Spinor4 {
        let np = self.grid.num_points() as f64;
        std::array::from_fn(|c| self.comps[c].iter().sum::<C64>() / np)
    }

    /// Subtracts the componentwise mean; on the frequency side this is the
    /// zero-DC projection.
    pub fn mean_free(&self) -> SpinorField {
        assert!(self.domain == Domain::Position);
        let m = self.mean();
        let mut out = self.clone();
        for c in 0..4 {
            for v in out.comps[c].iter_mut() {
                *v -= m[c];
            }
        }
        out
    }

    pub fn forward(&self) -> SpinorField {
        assert!(self.domain == Domain::Position, "already on frequency side");
        let grid = self.grid;
        let n = grid.n();
        let scale = (2.0 * std::f64::consts::PI).powf(-1.5) * grid.cell();
        let comps = std::array::from_fn(|c| {
            let mut values = self.comps[c].clone();
            fft::dft3(&mut values, n, fft::Direction::Forward);
            fft::apply_parity_scale(&mut values, n, scale);
            values
        });
        SpinorField {
            grid,
            domain: Domain::Frequency,
            comps,
        }
    }

    pub fn inverse(&self) -> SpinorField {
        assert!(self.domain == Domain::Frequency, "already on position side");
        let grid = self.grid;
        let n = grid.n();
        let scale = (2.0 * std::f64::consts::PI).powf(-1.5) * grid.dual_cell();
        let comps = std::array::from_fn(|c| {
            let mut values = self.comps[c].clone();
            fft::apply_parity_scale(&mut values, n, 1.0);
            fft::dft3(&mut values, n, fft::Direction::Inverse);
            for v in &mut values {
                *v *= scale;
            }
            values
        });
        SpinorField {
            grid,
            domain: Domain::Position,
            comps,
        }
    }
}

/// || <x>^s f ||_2 with volume element h^3; s = 0 reduces to the L^2 norm
/// exactly (same summation path).
pub fn weighted_norm(f: &SpinorField, w: WeightSpec) -> f64 {
    assert!(f.domain == Domain::Position);
    if w.s == 0.0 {
        return f.l2_norm();
    }
    let grid = f.grid;
    let n = grid.n();
    let mut s = 0.0f64;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let lin = grid.linear(ix, iy, iz);
                let b = bracket(grid.position(ix, iy, iz));
                let m2 = f.comps[0][lin].norm_sqr()
                    + f.comps[1][lin].norm_sqr()
                    + f.comps[2][lin].norm_sqr()
                    + f.comps[3][lin].norm_sqr();
                s += b.powf(2.0 * w.s) * m2;
            }
        }
    }
    (grid.cell() * s).sqrt()
}

pub fn weighted_norm_scalar(u: &ScalarField, w: WeightSpec) -> f64 {
    assert!(u.domain == Domain::Position);
    let grid = u.grid;
    let n = grid.n();
    let mut s = 0.0f64;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let b = bracket(grid.position(ix, iy, iz));
                s += b.powf(2.0 * w.s) * u.values[grid.linear(ix, iy, iz)].norm_sqr();
            }
        }
    }
    (grid.cell() * s).sqrt()
}

/// sup over grid points of <x>^s |f(x)| (the empirical pointwise-decay
/// constant when s = 2).
pub fn weighted_sup(f: &SpinorField, s: f64) -> f64 {
    assert!(f.domain == Domain::Position);
    let grid = f.grid;
    let n = grid.n();
    let mut m = 0.0f64;
    for iz in 0..n {
        for iy in 0..n {
            for ix in 0..n {
                let lin = grid.linear(ix, iy, iz);
                let b = bracket(grid.position(ix, iy, iz));
                let mag = (f.comps[0][lin].norm_sqr()
                    + f.comps[1][lin].norm_sqr()
                    + f.comps[2][lin].norm_sqr()
                    + f.comps[3][lin].norm_sqr())
                .sqrt();
                m = m.max(b.powf(s) * mag);
            }
        }
    }
    m
}

/// || <D> f ||_2 via the multiplier (1 + |xi|^2)^{1/2}.
pub fn sobolev_h1_norm(f: &SpinorField) -> f64 {
    assert!(f.domain == Domain::Position);
    let fh = f.forward();
    let grid = f.grid;
    let n = grid.n();
    let mut s = 0.0f64;
    for kz in 0..n {
        for ky in 0..n {
            for kx in 0..n {
                let xi = grid.freq(kx, ky, kz);
                let wt = 1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
                let lin = grid.linear(kx, ky, kz);
                let m2 = fh.comps[0][lin].norm_sqr()
                    + fh.comps[1][lin].norm_sqr()
                    + fh.comps[2][lin].norm_sqr()
                    + fh.comps[3][lin].norm_sqr();
                s += wt * m2;
            }
        }
    }
    (grid.dual_cell() * s).sqrt()
}

/// Uniform-local L^q norm: max over grid centers of the discrete L^q norm
/// over the periodic ball {y : |x - y| <= 1}.
///
/// Requires h <= 1/2 so unit balls are resolved.
pub fn lq_ul_norm(u: &ScalarField, q: f64) -> Result<f64> {
    assert!(u.domain == Domain::Position);
    if q < 1.0 {
        return Err(DzmError::ConstraintViolation(format!(
            "uniform-local exponent q must be >= 1, got {q}"
        )));
    }
    let grid = u.grid;
    let h = grid.spacing();
    if h > 0.5 {
        return Err(DzmError::GridTooCoarse {
            spacing: h,
            limit: 0.5,
            what: "uniform-local unit balls",
        });
    }
    let n = grid.n() as i64;
    // lattice offsets with |m| h <= 1
    let reach = (1.0 / h).floor() as i64;
    let mut stencil = Vec::new();
    for mz in -reach..=reach {
        for my in -reach..=reach {
            for mx in -reach..=reach {
                let d2 = (mx * mx + my * my + mz * mz) as f64 * h * h;
                if d2 <= 1.0 + 1e-12 {
                    stencil.push((mx, my, mz));
                }
            }
        }
    }
    let cell = grid.cell();
    let nn = grid.n();
    let mut best = 0.0f64;
    for iz in 0..nn {
        for iy in 0..nn {
            for ix in 0..nn {
                let mut s = 0.0f64;
                for &(mx, my, mz) in &stencil {
                    let jx = (ix as i64 + mx).rem_euclid(n) as usize;
                    let jy = (iy as i64 + my).rem_euclid(n) as usize;
                    let jz = (iz as i64 + mz).rem_euclid(n) as usize;
                    s += u.values[grid.linear(jx, jy, jz)].norm().powf(q);
                }
                best = best.max(s);
            }
        }
    }
    Ok((cell * best).powf(1.0 / q))
}

/// 4x4 Hermitian matrix potential sampled on the grid, with the declared
/// decay envelope |entries(x)| <= c_bound <x>^(-rho) carried as metadata.
#[derive(Debug, Clone)]
pub struct MatrixPotential {
    pub grid: Grid,
    pub values: Vec<Matrix4>,
    pub rho: f64,
    pub c_bound: f64,
}

impl MatrixPotential {
    /// Validates pointwise Hermiticity (max deviation 1e-12) and finiteness.
    pub fn new(grid: Grid, values: Vec<Matrix4>, rho: f64, c_bound: f64) -> Result<Self> {
        if values.len() != grid.num_points() {
            return Err(DzmError::InvalidGrid(format!(
                "potential has {} entries for a grid of {} points",
                values.len(),
                grid.num_points()
            )));
        }
        for (i, m) in values.iter().enumerate() {
            let d = m.hermiticity_defect();
            if !(d <= 1e-12) {
                return Err(DzmError::NonHermitian {
                    max_dev: d,
                    index: i,
                });
            }
        }
        Ok(MatrixPotential {
            grid,
            values,
            rho,
            c_bound,
        })
    }

    pub fn from_fn(
        grid: Grid,
        rho: f64,
        c_bound: f64,
        f: impl Fn([f64; 3]) -> Matrix4,
    ) -> Result<Self> {
        let n = grid.n();
        let mut values = vec![Matrix4::zeros(); grid.num_points()];
        for iz in 0..n {
            for iy in 0..n {
                for ix in 0..n {
                    values[grid.linear(ix, iy, iz)] = f(grid.position(ix, iy, iz));
                }
            }
        }
        Self::new(grid, values, rho, c_bound)
    }

    pub fn zeros(grid: Grid) -> Self {
        MatrixPotential {
            grid,
            values: vec![Matrix4::zeros(); grid.num_points()],
            rho: f64::INFINITY,
            c_bound: 0.0,
        }
    }

    /// Pointwise matrix-vector product Q(x) f(x).
    pub fn mul(&self, f: &SpinorField) -> SpinorField {
        assert!(self.grid == f.grid && f.domain == Domain::Position);
        let mut out = SpinorField::zeros(self.grid);
        for lin in 0..self.grid.num_points() {
            out.set(lin, self.values[lin].apply(&f.at(lin)));
        }
        out
    }

    /// Scaled potential c Q with the envelope constant scaled along.
    pub fn scaled(&self, c: f64) -> Self {
        let values = self.values.iter().map(|m| m.scale(C64::new(c, 0.0))).collect();
        MatrixPotential {
            grid: self.grid,
            values,
            rho: self.rho,
            c_bound: self.c_bound * c.abs(),
        }
    }

    /// Largest entry magnitude times <x>^rho over a coarse point sample;
    /// spot check of the declared envelope.
    pub fn decay_sup(&self, stride: usize) -> f64 {
        let n = self.grid.n();
        let mut worst = 0.0f64;
        for iz in (0..n).step_by(stride.max(1)) {
            for iy in (0..n).step_by(stride.max(1)) {
                for ix in (0..n).step_by(stride.max(1)) {
                    let lin = self.grid.linear(ix, iy, iz);
                    let b = bracket(self.grid.position(ix, iy, iz));
                    worst = worst.max(self.values[lin].max_entry_norm() * b.powf(self.rho));
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::spinor_norm;
    use crate::quad;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(7, 8.0).is_err());
        assert!(Grid::new(6, 8.0).is_err());
        assert!(Grid::new(8, 0.0).is_err());
        let g = Grid::new(8, 4.0).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.coord(4), 0.0);
        // frequency set symmetric except the Nyquist row
        assert_eq!(g.signed_index(4), -4);
        assert_eq!(g.signed_index(5), -3);
        assert_eq!(g.signed_index(3), 3);
    }

    #[test]
    fn constant_transforms_to_dc() {
        let g = Grid::new(16, 4.0).unwrap();
        let f = SpinorField::from_fn(g, |_| [C64::new(1.0, 0.0); 4]);
        let fh = f.forward();
        let dc = g.linear(0, 0, 0);
        let expect = TAU.powf(-1.5) * (2.0 * g.box_half()).powi(3);
        assert!((fh.comps[0][dc] - expect).norm() < 1e-10 * expect);
        for lin in 0..g.num_points() {
            if lin != dc {
                assert!(fh.comps[0][lin].norm() < 1e-10 * expect);
            }
        }
    }

    #[test]
    fn plane_wave_transforms_to_delta() {
        let g = Grid::new(16, 4.0).unwrap();
        let k = g.freq(3, 14, 1); // on the dual lattice, including a negative index
        let f = ScalarField::from_fn(g, |x| {
            C64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2])
        });
        let fh = f.forward();
        let expect = TAU.powf(-1.5) * (2.0 * g.box_half()).powi(3);
        let target = g.linear(3, 14, 1);
        for lin in 0..g.num_points() {
            let want = if lin == target { expect } else { 0.0 };
            assert!(
                (fh.values[lin].re - want).abs() < 1e-9 && fh.values[lin].im.abs() < 1e-9,
                "mode {lin}"
            );
        }
    }

    #[test]
    fn round_trip_and_parseval() {
        let g = Grid::new(16, 5.0).unwrap();
        for seed in 0..100u64 {
            let f = synth::random_spinor(g, 1000 + seed);
            let fh = f.forward();
            // Parseval (unitarity)
            let a = f.l2_norm();
            let b = fh.l2_norm();
            assert!((a - b).abs() < 1e-12 * a, "seed {seed}");
            if seed < 10 {
                let back = fh.inverse();
                let diff = back.sub(&f);
                assert!(diff.l2_norm() < 1e-13 * a, "round trip, seed {seed}");
            }
        }
    }

    #[test]
    fn weighted_norm_point_mass_and_bracket() {
        // single point at the origin on a unit-spacing grid -> h^{3/2}
        let g = Grid::new(8, 4.0).unwrap();
        let mut f = SpinorField::zeros(g);
        f.comps[0][g.origin_linear()] = C64::new(1.0, 0.0);
        let nrm = weighted_norm(&f, WeightSpec::new(7.5));
        assert!((nrm - g.cell().sqrt()).abs() < 1e-15);

        assert!((bracket([1.0, 2.0, 2.0]) - 10.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn weighted_norm_gaussian_matches_radial_oracle() {
        // s = 1 weight against an independent radial quadrature of
        // (1 + r^2) e^{-r^2} r^2
        let g = Grid::new(64, 10.0).unwrap();
        let f = SpinorField::from_fn(g, |x| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            [
                C64::new((-r2 / 2.0).exp(), 0.0),
                C64::default(),
                C64::default(),
                C64::default(),
            ]
        });
        let got = weighted_norm(&f, WeightSpec::new(1.0));
        let oracle = {
            // simple Simpson rule, independent of the adaptive integrator
            let n = 20001;
            let hi = 12.0;
            let h = hi / (n - 1) as f64;
            let g = |r: f64| (1.0 + r * r) * (-r * r).exp() * r * r;
            let mut s = g(0.0) + g(hi);
            for i in 1..n - 1 {
                s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            (4.0 * std::f64::consts::PI * s * h / 3.0).sqrt()
        };
        assert!(
            (got - oracle).abs() < 1e-6 * oracle,
            "grid {got} vs oracle {oracle}"
        );
    }

    #[test]
    fn weighted_norm_reduces_and_monotone() {
        let g = Grid::new(16, 4.0).unwrap();
        let f = synth::random_spinor(g, 5);
        let l2 = f.l2_norm();
        assert_eq!(weighted_norm(&f, WeightSpec::new(0.0)), l2);
        let mut prev = weighted_norm(&f, WeightSpec::new(-1.0));
        for s in [-0.5, 0.0, 0.5, 1.0, 2.0] {
            let cur = weighted_norm(&f, WeightSpec::new(s));
            assert!(cur >= prev);
            prev = cur;
        }
    }

    #[test]
    fn sobolev_plane_wave_and_constant() {
        let g = Grid::new(16, 4.0).unwrap();
        let k = g.freq(2, 0, 15);
        let f = SpinorField::from_fn(g, |x| {
            let ph = C64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
            [ph, C64::default(), C64::default(), C64::default()]
        });
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let expect = (1.0 + k2).sqrt() * (2.0 * g.box_half()).powf(1.5);
        let got = sobolev_h1_norm(&f);
        assert!((got - expect).abs() < 1e-10 * expect);

        let c = SpinorField::from_fn(g, |_| [C64::new(0.3, -0.1); 4]);
        assert!((sobolev_h1_norm(&c) - c.l2_norm()).abs() < 1e-12 * c.l2_norm());
    }

    #[test]
    fn sobolev_is_l2_plus_gradient() {
        let g = Grid::new(16, 4.0).unwrap();
        let f = synth::band_limited_spinor(g, 42, 0.0, 2.5);
        let h1 = sobolev_h1_norm(&f);
        let l2 = f.l2_norm();
        let grad2: f64 = crate::spectral::gradient_norm_sq(&f);
        let rel = (h1 * h1 - (l2 * l2 + grad2)).abs() / (h1 * h1);
        assert!(rel < 1e-10, "rel = {rel}");
    }

    #[test]
    fn lq_ul_examples() {
        let g = Grid::new(32, 4.0).unwrap(); // h = 0.25
        let ones = ScalarField::from_fn(g, |_| C64::new(1.0, 0.0));
        let got = lq_ul_norm(&ones, 2.0).unwrap();
        let ball = (4.0 * std::f64::consts::PI / 3.0f64).sqrt();
        assert!(
            (got - ball).abs() < 0.05 * ball,
            "unit-ball L2 of 1: {got} vs {ball}"
        );

        // single point mass: h^{3/q} |value|
        let mut pt = ScalarField::zeros(g);
        pt.values[g.origin_linear()] = C64::new(2.0, 0.0);
        let got = lq_ul_norm(&pt, 3.0).unwrap();
        assert!((got - g.cell().powf(1.0 / 3.0) * 2.0).abs() < 1e-12);

        // compact support: uniform-local norm bounded by the global Lq norm
        let u = synth::compact_smooth_scalar(g, 9, 0.5, 4.0, 1.5);
        let q = 4.0;
        assert!(lq_ul_norm(&u, q).unwrap() <= u.lp_norm(q) * (1.0 + 1e-12));

        // unresolved-ball error
        let coarse = Grid::new(8, 4.0).unwrap();
        let cu = ScalarField::zeros(coarse);
        assert!(matches!(
            lq_ul_norm(&cu, 2.0),
            Err(DzmError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn hardy_inequality_random_fields_and_gaussian_oracle() {
        let g = Grid::new(32, 8.0).unwrap();
        for seed in 0..100u64 {
            let u = synth::compact_smooth_scalar(g, 300 + seed, 1.0, 3.0, g.box_half() / 2.5);
            let lhs = crate::spectral::inverse_radius_norm(&u);
            let rhs = crate::spectral::gradient_norm_sq_scalar(&u).sqrt();
            assert!(lhs <= 2.0 * rhs, "seed {seed}: {lhs} > 2 {rhs}");
        }

        // Gaussian closed forms vs independent radial quadrature, 1e-6
        let lhs_oracle =
            quad::adaptive_to_inf(&|r: f64| 4.0 * std::f64::consts::PI * (-r * r).exp(), 0.0, 1e-10);
        let lhs_exact = (2.0 * std::f64::consts::PI.powf(1.5)).sqrt();
        assert!((lhs_oracle.value.sqrt() - lhs_exact).abs() < 1e-6);
        let rhs_oracle = quad::adaptive_to_inf(
            &|r: f64| 4.0 * std::f64::consts::PI * r.powi(4) * (-r * r).exp(),
            0.0,
            1e-10,
        );
        let rhs_exact = (1.5 * std::f64::consts::PI.powf(1.5)).sqrt();
        assert!((rhs_oracle.value.sqrt() - rhs_exact).abs() < 1e-6);
        // and the inequality for the Gaussian with the paper constant 2
        assert!(lhs_exact <= 2.0 * rhs_exact);
    }

    #[test]
    fn potential_hermiticity_enforced() {
        let g = Grid::new(8, 4.0).unwrap();
        let mut vals = vec![Matrix4::identity(); g.num_points()];
        vals[3].0[0][1] = C64::new(0.0, 1.0); // not Hermitian
        assert!(matches!(
            MatrixPotential::new(g, vals, 1.5, 1.0),
            Err(DzmError::NonHermitian { .. })
        ));
    }

    #[test]
    fn potential_apply_is_pointwise() {
        let g = Grid::new(8, 4.0).unwrap();
        let q = MatrixPotential::from_fn(g, 2.0, 1.0, |x| {
            crate::algebra::alpha_matrix([x[0], 0.0, 0.0])
        })
        .unwrap();
        let f = synth::random_spinor(g, 3);
        let qf = q.mul(&f);
        let lin = g.linear(1, 2, 3);
        let x = g.position(1, 2, 3);
        let expect = crate::algebra::alpha_dot([x[0], 0.0, 0.0], &f.at(lin));
        let got = qf.at(lin);
        for c in 0..4 {
            assert!((got[c] - expect[c]).norm() < 1e-13);
        }
        let _ = spinor_norm(&got);
    }
}
