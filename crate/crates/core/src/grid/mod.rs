//! Uniform grids, sampled functions, centred unitary Fourier transforms and the norms built on them.
//!
//! Points on an axis are `x_k = −R + k·h`, `h = 2R/N`, `k = 0..N`. The frequency grid has the same
//! shape with extent `π/h` and spacing `π/R`. Transforms use the continuous unitary normalisation
//! `F(ξ) = (2π)^{−d/2} ∫ f(x) e^{−ix·ξ} dx`, discretised by the rectangle rule.

mod fourier;
mod io;
mod norms;

pub use fourier::{fourier, inverse_fourier, FourierPlan};
pub use io::{read_binary, write_binary, write_csv, CSV_MAX_POINTS};
pub use norms::{
    boundary_mass_fraction, l1_tail, sobolev_norm, weighted_l2, AmbientNorm, SobolevProfile,
};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub n: usize,
    pub extent: f64,
}

impl Axis {
    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.n as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        -self.extent + k as f64 * self.spacing()
    }

    /// Index of the grid point at the origin.
    pub fn center(&self) -> usize {
        self.n / 2
    }

    fn close_to(&self, other: &Axis) -> bool {
        self.n == other.n && ((self.extent - other.extent) / self.extent).abs() < 1e-12
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    axes: Vec<Axis>,
}

impl UniformGrid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::Grid(format!("dimension {} not in 1..=3", axes.len())));
        }
        for a in &axes {
            if a.n < 16 || !a.n.is_power_of_two() {
                return Err(Error::Grid(format!(
                    "point count {} must be a power of two ≥ 16",
                    a.n
                )));
            }
            if !(a.extent > 0.0 && a.extent.is_finite()) {
                return Err(Error::Grid(format!("extent {} must be positive", a.extent)));
            }
        }
        Ok(UniformGrid { axes })
    }

    pub fn line(n: usize, extent: f64) -> Result<Self> {
        Self::new(vec![Axis { n, extent }])
    }

    pub fn cube(dim: usize, n: usize, extent: f64) -> Result<Self> {
        Self::new(vec![Axis { n, extent }; dim])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> Axis {
        self.axes[i]
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self, i: usize) -> f64 {
        self.axes[i].spacing()
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }

    /// Smallest half-width over the axes.
    pub fn min_extent(&self) -> f64 {
        self.axes.iter().map(|a| a.extent).fold(f64::INFINITY, f64::min)
    }

    /// The frequency grid of this grid.
    pub fn dual(&self) -> UniformGrid {
        UniformGrid {
            axes: self
                .axes
                .iter()
                .map(|a| Axis {
                    n: a.n,
                    extent: std::f64::consts::PI / a.spacing(),
                })
                .collect(),
        }
    }

    /// Same shape and extents up to rounding.
    pub fn matches(&self, other: &UniformGrid) -> bool {
        self.dim() == other.dim() && self.axes.iter().zip(&other.axes).all(|(a, b)| a.close_to(b))
    }

    /// Per-axis indices of a flat (row-major, last axis fastest) index.
    pub fn unflatten(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for (i, a) in self.axes.iter().enumerate().rev() {
            out[i] = idx % a.n;
            idx /= a.n;
        }
        out
    }

    pub fn flatten(&self, ks: &[usize]) -> usize {
        self.axes
            .iter()
            .zip(ks)
            .fold(0, |acc, (a, &k)| acc * a.n + k)
    }

    /// Coordinates of a flat index; unused trailing slots are 0.
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let ks = self.unflatten(idx);
        let mut out = [0.0; 3];
        for (i, a) in self.axes.iter().enumerate() {
            out[i] = a.point(ks[i]);
        }
        out
    }

    /// Flat index of the origin.
    pub fn origin_index(&self) -> usize {
        let ks: Vec<usize> = self.axes.iter().map(Axis::center).collect();
        self.flatten(&ks)
    }

    pub fn euclidean_radius(&self, idx: usize) -> f64 {
        let c = self.coords(idx);
        c[..self.dim()].iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Complex samples on a uniform grid, optionally with a declared support radius.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    grid: UniformGrid,
    values: Vec<Complex64>,
    support_radius: Option<f64>,
}

impl SampledFunction {
    pub fn new(grid: UniformGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Grid(format!(
                "non-finite value at {:?}",
                &grid.coords(i)[..grid.dim()]
            )));
        }
        Ok(SampledFunction {
            grid,
            values,
            support_radius: None,
        })
    }

    pub(crate) fn from_parts(grid: UniformGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        SampledFunction {
            grid,
            values,
            support_radius: None,
        }
    }

    pub fn zeros(grid: UniformGrid) -> Self {
        let n = grid.len();
        Self::from_parts(grid, vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let d = grid.dim();
        let values = (0..grid.len())
            .map(|i| f(&grid.coords(i)[..d]))
            .collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: UniformGrid, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// Declare a support radius (euclidean); values outside must vanish within 1e−12.
    pub fn with_support_radius(mut self, radius: f64) -> Result<Self> {
        for (i, v) in self.values.iter().enumerate() {
            if self.grid.euclidean_radius(i) > radius && v.norm() > 1e-12 {
                return Err(Error::Grid(format!(
                    "value {:.3e} at radius {:.6} outside declared support {radius}",
                    v.norm(),
                    self.grid.euclidean_radius(i)
                )));
            }
        }
        self.support_radius = Some(radius);
        Ok(self)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }

    /// Radius of the smallest centred ball holding every value above `tol`.
    pub fn effective_support(&self, tol: f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > tol)
            .map(|(i, _)| self.grid.euclidean_radius(i))
            .fold(0.0, f64::max)
    }

    pub fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn l2(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn lp(&self, p: f64) -> f64 {
        (self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() * self.grid.cell_volume())
            .powf(1.0 / p)
    }

    pub fn linf(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.cell_volume()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SampledFunction {
        Self::from_parts(self.grid.clone(), self.values.iter().map(|v| f(*v)).collect())
    }

    pub fn scaled(&self, c: f64) -> SampledFunction {
        self.map(|v| v * c)
    }

    /// Pointwise |f|.
    pub fn abs(&self) -> SampledFunction {
        self.map(|v| Complex64::new(v.norm(), 0.0))
    }

    pub fn max_abs_diff(&self, other: &SampledFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
