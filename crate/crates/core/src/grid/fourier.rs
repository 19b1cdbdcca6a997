use super::{SampledFunction, UniformGrid};
use crate::error::Result;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::sync::Arc;

/// Cached FFT plans for one grid shape; transforms buffers in place.
///
/// The `(−1)^k` pre- and post-multiplication recentres the FFT onto the symmetric grids; with
/// `N` divisible by 4 the remaining global phase is 1.
pub struct FourierPlan {
    grid: UniformGrid,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl FourierPlan {
    /// Plan for functions on `grid` (the spatial side).
    pub fn new(grid: &UniformGrid) -> Self {
        let mut planner = FftPlanner::new();
        let forward = grid.axes().iter().map(|a| planner.plan_fft_forward(a.n)).collect();
        let inverse = grid.axes().iter().map(|a| planner.plan_fft_inverse(a.n)).collect();
        FourierPlan {
            grid: grid.clone(),
            forward,
            inverse,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    /// Spatial samples → frequency samples on `grid.dual()`.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.grid.len());
        for (i, plan) in self.forward.iter().enumerate() {
            let scale = self.grid.spacing(i) / (2.0 * PI).sqrt();
            transform_axis(data, &self.grid, i, plan.as_ref(), scale);
        }
    }

    /// Frequency samples on `grid.dual()` → spatial samples.
    pub fn inverse(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.grid.len());
        for (i, plan) in self.inverse.iter().enumerate() {
            let a = self.grid.axis(i);
            let dxi = 2.0 * PI / (a.n as f64 * a.spacing());
            transform_axis(data, &self.grid, i, plan.as_ref(), dxi / (2.0 * PI).sqrt());
        }
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn centred_lane(lane: &mut [Complex64], plan: &dyn Fft<f64>, scratch: &mut [Complex64], scale: f64) {
    for (k, v) in lane.iter_mut().enumerate() {
        *v *= sign(k);
    }
    plan.process_with_scratch(lane, scratch);
    for (k, v) in lane.iter_mut().enumerate() {
        *v *= sign(k) * scale;
    }
}

fn transform_axis(
    data: &mut [Complex64],
    grid: &UniformGrid,
    axis: usize,
    plan: &dyn Fft<f64>,
    scale: f64,
) {
    let n = grid.axis(axis).n;
    let inner: usize = grid.axes()[axis + 1..].iter().map(|a| a.n).product();
    let outer = data.len() / (n * inner);
    let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
    if inner == 1 {
        for lane in data.chunks_exact_mut(n) {
            centred_lane(lane, plan, &mut scratch, scale);
        }
        return;
    }
    let mut lane = vec![Complex64::new(0.0, 0.0); n];
    for o in 0..outer {
        let base = o * n * inner;
        for i in 0..inner {
            for (k, v) in lane.iter_mut().enumerate() {
                *v = data[base + k * inner + i];
            }
            centred_lane(&mut lane, plan, &mut scratch, scale);
            for (k, v) in lane.iter().enumerate() {
                data[base + k * inner + i] = *v;
            }
        }
    }
}

/// Unitary Fourier transform; the result lives on `f.grid().dual()`.
pub fn fourier(f: &SampledFunction) -> Result<SampledFunction> {
    let plan = FourierPlan::new(f.grid());
    let mut data = f.values().to_vec();
    plan.forward(&mut data);
    Ok(SampledFunction::from_parts(f.grid().dual(), data))
}

/// Inverse of [`fourier`]: takes samples on a frequency grid, returns them on its dual.
pub fn inverse_fourier(f: &SampledFunction) -> Result<SampledFunction> {
    let spatial = f.grid().dual();
    let plan = FourierPlan::new(&spatial);
    let mut data = f.values().to_vec();
    plan.inverse(&mut data);
    Ok(SampledFunction::from_parts(spatial, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;

    fn gaussian(grid: UniformGrid) -> SampledFunction {
        SampledFunction::from_real_fn(grid, |x| (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp())
            .unwrap()
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = UniformGrid::line(64, 5.0).unwrap();
        let f = fourier(&SampledFunction::zeros(g)).unwrap();
        assert_eq!(f.linf(), 0.0);
    }

    #[test]
    fn gaussian_pair_1d() {
        // (2π)^{-1/2}∫e^{-x²/2}e^{-ixξ}dx = e^{-ξ²/2}
        let g = UniformGrid::line(1 << 10, 20.0).unwrap();
        let f = fourier(&gaussian(g)).unwrap();
        let d = f.grid().clone();
        let err = (0..d.len())
            .map(|i| {
                let xi = d.coords(i)[0];
                (f.values()[i] - Complex64::new((-0.5 * xi * xi).exp(), 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn gaussian_pair_3d_anisotropic() {
        let g = UniformGrid::new(vec![
            Axis { n: 32, extent: 8.0 },
            Axis { n: 64, extent: 10.0 },
            Axis { n: 32, extent: 7.0 },
        ])
        .unwrap();
        let f = fourier(&gaussian(g)).unwrap();
        let d = f.grid().clone();
        let err = (0..d.len())
            .map(|i| {
                let c = d.coords(i);
                let e = (-0.5 * (c[0] * c[0] + c[1] * c[1] + c[2] * c[2])).exp();
                (f.values()[i].re - e).abs() + f.values()[i].im.abs()
            })
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn parseval_and_roundtrip() {
        let g = UniformGrid::cube(2, 32, 3.0).unwrap();
        let f = SampledFunction::from_fn(g, |x| {
            Complex64::new((x[0] * 1.7).sin() + x[1], (x[0] * x[1]).cos())
        })
        .unwrap();
        let ft = fourier(&f).unwrap();
        assert!(((ft.l2() - f.l2()) / f.l2()).abs() < 1e-10);
        let back = inverse_fourier(&ft).unwrap();
        assert!(back.grid().matches(f.grid()));
        assert!(back.max_abs_diff(&f) / f.linf() < 1e-10);
    }
}
