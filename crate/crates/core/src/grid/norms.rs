use super::{FourierPlan, SampledFunction, UniformGrid};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The size function |x| used by weighted norms and tails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientNorm {
    Euclidean,
    /// ((x²+y²)² + 16t²)^{1/4} on (x, y, t); three-dimensional grids only.
    Koranyi,
}

impl AmbientNorm {
    pub fn of(&self, c: &[f64]) -> f64 {
        match self {
            AmbientNorm::Euclidean => c.iter().map(|v| v * v).sum::<f64>().sqrt(),
            AmbientNorm::Koranyi => {
                let r2 = c[0] * c[0] + c[1] * c[1];
                (r2 * r2 + 16.0 * c[2] * c[2]).sqrt().sqrt()
            }
        }
    }

    fn check(&self, grid: &UniformGrid) {
        if *self == AmbientNorm::Koranyi {
            assert_eq!(grid.dim(), 3, "the Koranyi norm needs (x, y, t) grids");
        }
    }
}

/// |f̂|² on the frequency grid, kept so that several Sobolev exponents share one transform.
#[derive(Clone, Debug)]
pub struct SobolevProfile {
    entries: Vec<(f64, f64)>,
}

impl SobolevProfile {
    pub fn new(f: &SampledFunction) -> Result<Self> {
        let half = f.grid().min_extent() / 2.0;
        let support = match f.support_radius() {
            Some(r) => r,
            None => f.effective_support(1e-12),
        };
        if support > half {
            return Err(Error::Aliasing {
                support,
                half_extent: half,
            });
        }
        let plan = FourierPlan::new(f.grid());
        let mut data = f.values().to_vec();
        plan.forward(&mut data);
        let dual = f.grid().dual();
        let dv = dual.cell_volume();
        let d = dual.dim();
        let entries = data
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm_sqr() > 0.0)
            .map(|(i, v)| {
                let c = dual.coords(i);
                let xi2: f64 = c[..d].iter().map(|x| x * x).sum();
                (1.0 + xi2, v.norm_sqr() * dv)
            })
            .collect();
        Ok(SobolevProfile { entries })
    }

    /// ‖(1+|ξ|²)^{s/2} f̂‖₂.
    pub fn norm(&self, s: f64) -> f64 {
        if s == 0.0 {
            return self.entries.iter().map(|e| e.1).sum::<f64>().sqrt();
        }
        self.entries
            .iter()
            .map(|(w, e)| w.powf(s) * e)
            .sum::<f64>()
            .sqrt()
    }
}

/// ‖(1+|ξ|²)^{s/2} f̂‖₂, computed spectrally.
pub fn sobolev_norm(f: &SampledFunction, s: f64) -> Result<f64> {
    if s < 0.0 {
        return Err(crate::error::invalid(format!("Sobolev exponent {s} < 0")));
    }
    Ok(SobolevProfile::new(f)?.norm(s))
}

/// Share of ∫|K|² carried by points beyond 0.9 of the extent on some axis.
pub fn boundary_mass_fraction(k: &SampledFunction) -> f64 {
    let g = k.grid();
    let total: f64 = k.values().iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let outer: f64 = k
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let c = g.coords(*i);
            g.axes()
                .iter()
                .enumerate()
                .any(|(a, ax)| c[a].abs() > 0.9 * ax.extent)
        })
        .map(|(_, v)| v.norm_sqr())
        .sum();
    outer / total
}

/// (∫|K(x)|²(1+|x|^s)² dx)^{1/2}, warning when the kernel has not decayed inside the grid.
pub fn weighted_l2(k: &SampledFunction, s: f64, norm: AmbientNorm) -> f64 {
    let g = k.grid();
    norm.check(g);
    let frac = boundary_mass_fraction(k);
    if frac > 0.01 {
        log::warn!("weighted_l2: {:.2}% of the L² mass lies beyond 0.9R", 100.0 * frac);
    }
    let d = g.dim();
    let sum: f64 = k
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = 1.0 + norm.of(&g.coords(i)[..d]).powf(s);
            v.norm_sqr() * w * w
        })
        .sum();
    (sum * g.cell_volume()).sqrt()
}

/// ∫_{|x| ≥ R₀} |K| dx by the midpoint rule; 0 once R₀ reaches the grid extent.
pub fn l1_tail(k: &SampledFunction, r0: f64, norm: AmbientNorm) -> f64 {
    let g = k.grid();
    norm.check(g);
    if r0 >= g.min_extent() {
        return 0.0;
    }
    let d = g.dim();
    k.values()
        .iter()
        .enumerate()
        .filter(|(i, _)| norm.of(&g.coords(*i)[..d]) >= r0)
        .map(|(_, v)| v.norm())
        .sum::<f64>()
        * g.cell_volume()
}
