use crate::error::{invalid, Error, Result};
use crate::grid::{
    inverse_fourier, l1_tail, weighted_l2, AmbientNorm, FourierPlan, SampledFunction, UniformGrid,
};
use crate::multiplier::{Cutoff, MultiplierSpec, PieceGrid};
use crate::window::{Band, DyadicWindow};
use num_complex::Complex64;
use std::sync::OnceLock;

/// Samples of ξ ↦ m(|ξ|)·band(|ξ|) on the frequency grid of `grid`, after resolution checks.
pub fn radial_symbol(spec: &MultiplierSpec, band: Band, grid: &UniformGrid) -> Result<SampledFunction> {
    let dual = grid.dual();
    let nyquist = dual.min_extent();
    let hi = match (band.hi, spec.cutoff()) {
        (Some(h), _) => h,
        (None, Cutoff::ChiMinus) => 1.0,
        (None, _) => {
            return Err(invalid(
                "the multiplier is not band-limited; give an upper frequency truncation",
            ))
        }
    };
    if hi > nyquist {
        return Err(Error::Resolution {
            what: "frequency truncation".into(),
            value: hi,
            limit: nyquist,
        });
    }
    let lo = band.lo.unwrap_or(match spec.cutoff() {
        Cutoff::ChiPlus => 1.0,
        _ => 0.0,
    });
    if lo > 0.0 {
        if let Some(b) = spec.phase_derivative_bound(lo, hi) {
            check_spread(b, grid)?;
        }
    } else {
        log::debug!("no lower truncation: kernel spread not checked");
    }
    let d = dual.dim();
    let origin = spec.eval_at_origin() * band.factor(0.0);
    let values = (0..dual.len())
        .map(|i| {
            let r = dual.coords(i)[..d].iter().map(|v| v * v).sum::<f64>().sqrt();
            if r == 0.0 {
                origin
            } else {
                let b = band.factor(r);
                if b == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    spec.eval(r) * b
                }
            }
        })
        .collect();
    SampledFunction::new(dual, values)
}

/// Samples of ξ ↦ m^j(|ξ|) = m(2^j|ξ|)φ(|ξ|) on the frequency grid of `grid`.
pub fn piece_symbol(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    j: i32,
    grid: &UniformGrid,
) -> Result<SampledFunction> {
    let dual = grid.dual();
    if dual.min_extent() < 2.0 {
        return Err(Error::Resolution {
            what: "piece support edge".into(),
            value: 2.0,
            limit: dual.min_extent(),
        });
    }
    check_spread(PieceGrid::piece_frequency(spec, j), grid)?;
    let scale = 2f64.powi(j);
    let d = dual.dim();
    let values = (0..dual.len())
        .map(|i| {
            let r = dual.coords(i)[..d].iter().map(|v| v * v).sum::<f64>().sqrt();
            let w = window.eval(r);
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                spec.eval(scale * r) * w
            }
        })
        .collect();
    SampledFunction::new(dual, values)
}

/// The kernel concentrates near |x| ≈ |d/dξ arg m|; keep that inside half the grid.
fn check_spread(phase_derivative: f64, grid: &UniformGrid) -> Result<()> {
    let limit = grid.min_extent() / 2.0;
    if phase_derivative > limit {
        return Err(Error::Resolution {
            what: "kernel spread |d/dξ arg m|".into(),
            value: phase_derivative,
            limit,
        });
    }
    Ok(())
}

/// K = unitary inverse Fourier transform of a radial symbol; the convolution kernel is (2π)^{−n/2}K.
#[derive(Debug)]
pub struct RadialKernel {
    n: usize,
    origin: String,
    symbol: SampledFunction,
    kernel: SampledFunction,
    l1: OnceLock<f64>,
}

impl RadialKernel {
    pub fn from_symbol(symbol: SampledFunction, origin: impl Into<String>) -> Result<Self> {
        let kernel = inverse_fourier(&symbol)?;
        Ok(RadialKernel {
            n: symbol.grid().dim(),
            origin: origin.into(),
            symbol,
            kernel,
            l1: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn kernel(&self) -> &SampledFunction {
        &self.kernel
    }

    pub fn symbol(&self) -> &SampledFunction {
        &self.symbol
    }

    pub fn grid(&self) -> &UniformGrid {
        self.kernel.grid()
    }

    pub fn l1(&self) -> f64 {
        *self.l1.get_or_init(|| self.kernel.l1())
    }

    pub fn l2(&self) -> f64 {
        self.kernel.l2()
    }

    pub fn symbol_l2(&self) -> f64 {
        self.symbol.l2()
    }

    pub fn tail(&self, r0: f64) -> f64 {
        l1_tail(&self.kernel, r0, AmbientNorm::Euclidean)
    }

    pub fn weighted_l2(&self, s: f64) -> f64 {
        weighted_l2(&self.kernel, s, AmbientNorm::Euclidean)
    }

    /// K(· − y) by a spectral shift.
    pub fn translated(&self, y: &[f64]) -> Result<SampledFunction> {
        if y.len() != self.n {
            return Err(invalid(format!("shift has {} components, kernel lives on ℝ^{}", y.len(), self.n)));
        }
        let dual = self.symbol.grid();
        let mut data: Vec<Complex64> = self
            .symbol
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let c = dual.coords(i);
                let phase: f64 = c[..self.n].iter().zip(y).map(|(a, b)| a * b).sum();
                v * Complex64::from_polar(1.0, -phase)
            })
            .collect();
        let plan = FourierPlan::new(self.kernel.grid());
        plan.inverse(&mut data);
        SampledFunction::new(self.kernel.grid().clone(), data)
    }
}

fn check_dim(n: usize, grid: &UniformGrid) -> Result<()> {
    if !(1..=3).contains(&n) || grid.dim() != n {
        return Err(invalid(format!("n = {n} with a {}-dimensional grid", grid.dim())));
    }
    Ok(())
}

/// Kernel of ξ ↦ m(|ξ|) restricted to a smooth frequency band, on the spatial grid `grid`.
pub fn kernel_of_radial_multiplier(
    spec: &MultiplierSpec,
    n: usize,
    band: Band,
    grid: &UniformGrid,
) -> Result<RadialKernel> {
    check_dim(n, grid)?;
    let symbol = radial_symbol(spec, band, grid)?;
    RadialKernel::from_symbol(symbol, format!("{} band {:?}..{:?}", spec.describe(), band.lo, band.hi))
}

/// Kernel of the rescaled piece m^j.
pub fn kernel_of_piece(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    j: i32,
    n: usize,
    grid: &UniformGrid,
) -> Result<RadialKernel> {
    check_dim(n, grid)?;
    let symbol = piece_symbol(spec, window, j, grid)?;
    RadialKernel::from_symbol(symbol, format!("{} piece j={j}", spec.describe()))
}

/// Spatial grid rule for kernels of m^j: fixed spacing, extent growing with the piece frequency.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceKernelGrid {
    pub spacing: f64,
    pub min_extent: f64,
    /// Extent ≥ this multiple of the largest phase derivative of m^j.
    pub spread_factor: f64,
}

impl Default for PieceKernelGrid {
    fn default() -> Self {
        PieceKernelGrid {
            spacing: 0.25,
            min_extent: 64.0,
            spread_factor: 4.0,
        }
    }
}

impl PieceKernelGrid {
    pub fn grid_for(&self, spec: &MultiplierSpec, j: i32, n: usize) -> Result<UniformGrid> {
        let freq = PieceGrid::piece_frequency(spec, j);
        let extent = (self.spread_factor * freq).max(self.min_extent);
        let points = (2.0 * extent / self.spacing).ceil() as usize;
        let points = points.next_power_of_two().max(16);
        UniformGrid::cube(n, points, points as f64 * self.spacing / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_multiplier_zero_kernel() {
        let g = UniformGrid::line(256, 32.0).unwrap();
        let k = kernel_of_radial_multiplier(&MultiplierSpec::constant(0.0), 1, Band::upper(4.0), &g)
            .unwrap();
        assert_eq!(k.kernel().linf(), 0.0);
    }

    #[test]
    fn window_kernel_parseval() {
        let g = UniformGrid::line(1024, 64.0).unwrap();
        let one = MultiplierSpec::constant(1.0);
        let k = kernel_of_piece(&one, &DyadicWindow::standard(), 0, 1, &g).unwrap();
        assert!(((k.l2() - k.symbol_l2()) / k.symbol_l2()).abs() < 1e-8);
        // real and even: the symbol is real and even
        let v = k.kernel().values();
        let n = v.len();
        for i in 1..n / 2 {
            assert!((v[n / 2 + i] - v[n / 2 - i]).norm() < 1e-12);
            assert!(v[i].im.abs() < 1e-12);
        }
    }

    #[test]
    fn plancherel_in_three_dimensions() {
        let g = UniformGrid::cube(3, 32, 8.0).unwrap();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let k = kernel_of_radial_multiplier(&m, 3, Band::upper(3.5), &g).unwrap();
        assert!(((k.l2() - k.symbol_l2()) / k.symbol_l2()).abs() < 1e-8);
    }

    #[test]
    fn resolution_errors() {
        let g = UniformGrid::line(256, 32.0).unwrap();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        // π/h = 8π/... : the truncation beyond Nyquist is refused
        assert!(matches!(
            kernel_of_radial_multiplier(&m, 1, Band::upper(100.0), &g),
            Err(Error::Resolution { .. })
        ));
        assert!(kernel_of_radial_multiplier(&m, 1, Band::default(), &g).is_err());
        assert!(kernel_of_radial_multiplier(&m, 2, Band::upper(4.0), &g).is_err());
        let wave_like = MultiplierSpec::oscillating(2.0, 0.0).unwrap();
        assert!(kernel_of_radial_multiplier(&wave_like, 1, Band::upper(20.0), &g).is_err());
    }

    #[test]
    fn translation_is_exact_on_grid_shifts() {
        let g = UniformGrid::line(512, 32.0).unwrap();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let k = kernel_of_radial_multiplier(&m, 1, Band::upper(6.0), &g).unwrap();
        let h = g.spacing(0);
        let t = k.translated(&[3.0 * h]).unwrap();
        let v = k.kernel().values();
        for i in 3..512 {
            assert!((t.values()[i] - v[i - 3]).norm() < 1e-10);
        }
    }
}
