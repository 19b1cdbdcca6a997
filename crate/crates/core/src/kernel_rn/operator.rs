use super::kernel::radial_symbol;
use crate::error::{invalid, Result};
use crate::grid::{FourierPlan, SampledFunction, UniformGrid};
use crate::multiplier::MultiplierSpec;
use crate::window::Band;
use num_complex::Complex64;

/// A translation-invariant operator acting on sampled functions.
pub trait ConvolutionOperator: Sync {
    fn grid(&self) -> &UniformGrid;
    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction>;
    /// sup |m| over the resolved spectrum.
    fn symbol_sup(&self) -> f64;
}

/// f ↦ F⁻¹[m·Ff] on a periodic grid.
pub struct MultiplierOperator {
    grid: UniformGrid,
    plan: FourierPlan,
    symbol: Vec<Complex64>,
    sup: f64,
}

impl MultiplierOperator {
    /// `symbol` lives on `grid.dual()`.
    pub fn from_symbol(grid: &UniformGrid, symbol: &SampledFunction) -> Result<Self> {
        if !symbol.grid().matches(&grid.dual()) {
            return Err(invalid("symbol is not sampled on the frequency grid of the operator"));
        }
        Ok(MultiplierOperator {
            grid: grid.clone(),
            plan: FourierPlan::new(grid),
            sup: symbol.linf(),
            symbol: symbol.values().to_vec(),
        })
    }

    pub fn radial(spec: &MultiplierSpec, band: Band, grid: &UniformGrid) -> Result<Self> {
        Self::from_symbol(grid, &radial_symbol(spec, band, grid)?)
    }

    /// The adjoint: conjugate symbol.
    pub fn adjoint(&self) -> Self {
        MultiplierOperator {
            grid: self.grid.clone(),
            plan: FourierPlan::new(&self.grid),
            symbol: self.symbol.iter().map(|v| v.conj()).collect(),
            sup: self.sup,
        }
    }

    /// Transform of `f` on the frequency grid, for reuse across several symbols.
    pub fn spectrum(&self, f: &SampledFunction) -> Vec<Complex64> {
        let mut data = f.values().to_vec();
        self.plan.forward(&mut data);
        data
    }

    /// Apply to a precomputed spectrum.
    pub fn apply_spectrum(&self, spectrum: &[Complex64]) -> SampledFunction {
        let mut data: Vec<Complex64> = spectrum.iter().zip(&self.symbol).map(|(a, b)| a * b).collect();
        self.plan.inverse(&mut data);
        SampledFunction::new(self.grid.clone(), data).expect("finite symbol and input")
    }
}

impl ConvolutionOperator for MultiplierOperator {
    fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        if !f.grid().matches(&self.grid) {
            return Err(invalid("input lives on a different grid"));
        }
        Ok(self.apply_spectrum(&self.spectrum(f)))
    }

    fn symbol_sup(&self) -> f64 {
        self.sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_band_is_near_identity_on_smooth_input() {
        let g = UniformGrid::line(1024, 16.0).unwrap();
        let t = MultiplierOperator::radial(&MultiplierSpec::constant(1.0), Band::upper(60.0), &g).unwrap();
        let f = SampledFunction::from_real_fn(g, |x| (-x[0] * x[0]).exp()).unwrap();
        assert!(t.apply(&f).unwrap().max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn adjoint_pairing() {
        let g = UniformGrid::line(256, 16.0).unwrap();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let t = MultiplierOperator::radial(&m, Band::upper(20.0), &g).unwrap();
        let f = SampledFunction::from_real_fn(g.clone(), |x| (-(x[0] - 1.0).powi(2)).exp()).unwrap();
        let h = SampledFunction::from_fn(g, |x| Complex64::new((-x[0] * x[0]).exp(), x[0] * (-x[0] * x[0]).exp())).unwrap();
        let tf = t.apply(&f).unwrap();
        let tsh = t.adjoint().apply(&h).unwrap();
        let a: Complex64 = tf.values().iter().zip(h.values()).map(|(u, v)| u * v.conj()).sum();
        let b: Complex64 = f.values().iter().zip(tsh.values()).map(|(u, v)| u * v.conj()).sum();
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0));
    }
}
