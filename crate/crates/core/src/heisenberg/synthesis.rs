use super::group::{KORANYI_CONSTANT, Q};
use crate::error::{invalid, Error, Result};
use crate::grid::{write_binary, Axis, SampledFunction, UniformGrid};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// The [−8,8]² × [−16,16] grid at 2⁷ × 2⁷ × 2⁸ points.
pub fn default_group_grid() -> UniformGrid {
    UniformGrid::new(vec![
        Axis { n: 128, extent: 8.0 },
        Axis { n: 128, extent: 8.0 },
        Axis { n: 256, extent: 16.0 },
    ])
    .expect("valid default grid")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisConfig {
    /// Starting number of Laguerre terms; doubled while the truncation estimate is too large.
    pub k_max: usize,
    pub k_cap: usize,
    /// Midpoint nodes on [0, Λ_max]; the λ-integrand is even so this is half the symmetric grid.
    pub lambda_nodes: usize,
    /// Λ_max is where |h(√u)| drops below this fraction of its maximum for good.
    pub lambda_tol: f64,
    /// Accepted truncation error relative to the sup bound of the kernel.
    pub tol: f64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            k_max: 256,
            k_cap: 1 << 16,
            lambda_nodes: 512,
            lambda_tol: 1e-13,
            tol: 1e-12,
        }
    }
}

/// Convolution kernel of h(√𝓛) sampled on an (x, y, t) grid.
#[derive(Clone, Debug)]
pub struct HeisenbergKernel {
    kernel: SampledFunction,
    pub label: String,
    pub k_max: usize,
    pub lambda_max: f64,
    pub lambda_nodes: usize,
    pub truncation_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelSidecar {
    pub group_law: &'static str,
    pub norm: &'static str,
    pub norm_constant: f64,
    pub homogeneous_dimension: usize,
    pub multiplier: String,
    pub k_max: usize,
    pub lambda_max: f64,
    pub lambda_nodes: usize,
    pub truncation_error: f64,
}

impl HeisenbergKernel {
    pub fn kernel(&self) -> &SampledFunction {
        &self.kernel
    }

    pub fn grid(&self) -> &UniformGrid {
        self.kernel.grid()
    }

    pub fn l1(&self) -> f64 {
        self.kernel.l1()
    }

    pub fn l2(&self) -> f64 {
        self.kernel.l2()
    }

    /// Riemann sum of 𝒦 over the grid.
    pub fn mass(&self) -> Complex64 {
        self.kernel.integral()
    }

    pub fn sidecar(&self) -> KernelSidecar {
        KernelSidecar {
            group_law: "(x,y,t)(x',y',t') = (x+x', y+y', t+t'+(xy'-yx')/2)",
            norm: "koranyi",
            norm_constant: KORANYI_CONSTANT,
            homogeneous_dimension: Q,
            multiplier: self.label.clone(),
            k_max: self.k_max,
            lambda_max: self.lambda_max,
            lambda_nodes: self.lambda_nodes,
            truncation_error: self.truncation_error,
        }
    }

    /// Binary grid file plus `<path>.json` sidecar.
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        write_binary(&self.kernel, std::io::BufWriter::new(std::fs::File::create(path)?))?;
        let side = serde_json::to_string_pretty(&self.sidecar()).map_err(|e| Error::Io(e.into()))?;
        std::fs::write(path.with_extension("json"), side)?;
        Ok(())
    }
}

/// Smallest U with |h(√u)| < tol·max|h| for every scanned u ≥ U.
pub fn spectral_cutoff(h: &dyn Fn(f64) -> Complex64, tol: f64) -> Result<f64> {
    let n = 6000;
    let us: Vec<f64> = (0..=n).map(|i| 1e-4 * 1e10f64.powf(i as f64 / n as f64)).collect();
    let vals: Vec<f64> = us.iter().map(|&u| h(u.sqrt()).norm()).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(invalid("multiplier is not finite on the scanned spectrum"));
    }
    let max = vals.iter().cloned().fold(h(0.0).norm(), f64::max);
    if max == 0.0 {
        return Ok(1.0);
    }
    match vals.iter().rposition(|&v| v >= tol * max) {
        Some(i) if i + 1 < us.len() => Ok(us[i + 1]),
        Some(_) => Err(invalid("multiplier does not decay on the scanned spectrum (u ≤ 1e6)")),
        None => Ok(us[0]),
    }
}

/// Σ_{k<K} c_k L_k(x) e^{−x/2}, carrying a log scale so that large x neither underflows nor overflows.
fn laguerre_sum(coef: &[Complex64], x: f64) -> Complex64 {
    if coef.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let (mut a, mut b, mut log_scale) = if x < 1200.0 {
        let e = (-0.5 * x).exp();
        (e, (1.0 - x) * e, 0.0)
    } else {
        (1.0, 1.0 - x, -0.5 * x)
    };
    let mut s = coef[0] * a;
    if coef.len() > 1 {
        s += coef[1] * b;
    }
    for k in 1..coef.len().saturating_sub(1) {
        let c = ((2 * k + 1) as f64 - x) * b - k as f64 * a;
        a = b;
        b = c / (k + 1) as f64;
        s += coef[k + 1] * b;
        if b.abs() > 1e150 {
            a *= 1e-150;
            b *= 1e-150;
            s *= 1e-150;
            log_scale += 150.0 * 10f64.ln();
        }
    }
    if log_scale == 0.0 {
        s
    } else {
        s * log_scale.exp()
    }
}

/// 𝒦_h(x,y,t) = (2π)^{−2} ∫ e^{iλt} Σ_k h(√((2k+1)|λ|)) L_k(|λ|ρ²/2) e^{−|λ|ρ²/4} |λ| dλ.
///
/// The λ-integral uses the midpoint rule on [0, Λ_max] with the even symmetry folded in.
pub fn sublaplacian_kernel(
    h: &(dyn Fn(f64) -> Complex64 + Sync),
    label: impl Into<String>,
    grid: &UniformGrid,
    cfg: &SynthesisConfig,
) -> Result<HeisenbergKernel> {
    let label: String = label.into();
    if grid.dim() != 3 {
        return Err(invalid("group kernels live on (x, y, t) grids"));
    }
    if cfg.lambda_nodes == 0 || cfg.k_max == 0 {
        return Err(invalid("empty λ-grid or Laguerre truncation"));
    }
    let lambda_max = spectral_cutoff(h, cfg.lambda_tol)?;
    let m = cfg.lambda_nodes;
    let d = lambda_max / m as f64;
    let lams: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * d).collect();
    let pref = 2.0 * d / (4.0 * PI * PI);

    // coefficients h(√((2k+1)λ)) for (2k+1)λ ≤ Λ_max, and the sup bound used to scale errors
    let full: Vec<Vec<Complex64>> = lams
        .iter()
        .map(|&l| {
            let kk = ((lambda_max / l - 1.0) / 2.0).floor() as usize + 1;
            (0..kk).map(|k| h((((2 * k + 1) as f64) * l).sqrt())).collect()
        })
        .collect();
    let bound: f64 = pref * lams.iter().zip(&full).map(|(l, c)| l * c.iter().map(|v| v.norm()).sum::<f64>()).sum::<f64>();
    let tail = |k_max: usize| -> f64 {
        pref * lams
            .iter()
            .zip(&full)
            .map(|(l, c)| l * c.iter().skip(k_max).map(|v| v.norm()).sum::<f64>())
            .sum::<f64>()
    };
    let mut k_max = cfg.k_max;
    let mut err = tail(k_max);
    while err > cfg.tol * bound {
        if k_max >= cfg.k_cap {
            let needed = full.iter().map(|c| c.len()).max().unwrap_or(0);
            return Err(Error::Truncation {
                suggested: needed.next_power_of_two(),
                cap: cfg.k_cap,
            });
        }
        k_max *= 2;
        err = tail(k_max);
    }
    log::debug!("synthesis {}: Λ_max = {lambda_max:.3}, K_max = {k_max}, tail ≤ {err:.2e}", label);

    let ax = grid.axis(0);
    let ay = grid.axis(1);
    let at = grid.axis(2);
    // distinct ρ² values on the horizontal plane
    let mut rho_index: BTreeMap<u64, usize> = BTreeMap::new();
    let mut rho2s: Vec<f64> = Vec::new();
    let mut plane = vec![0usize; ax.n * ay.n];
    for a in 0..ax.n {
        for b in 0..ay.n {
            let (x, y) = (ax.point(a), ay.point(b));
            let r2 = x * x + y * y;
            let id = *rho_index.entry(r2.to_bits()).or_insert_with(|| {
                rho2s.push(r2);
                rho2s.len() - 1
            });
            plane[a * ay.n + b] = id;
        }
    }
    let cos_table: Vec<Vec<f64>> = (0..at.n)
        .map(|c| {
            let t = at.point(c);
            lams.iter().map(|l| (l * t).cos()).collect()
        })
        .collect();
    let columns: Vec<Vec<Complex64>> = rho2s
        .par_iter()
        .map(|&r2| {
            let g: Vec<Complex64> = lams
                .iter()
                .zip(&full)
                .map(|(&l, c)| laguerre_sum(&c[..c.len().min(k_max)], 0.5 * l * r2) * l)
                .collect();
            cos_table
                .iter()
                .map(|row| row.iter().zip(&g).map(|(cs, gv)| gv * *cs).sum::<Complex64>() * pref)
                .collect()
        })
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (p, &id) in plane.iter().enumerate() {
        let col = &columns[id];
        values[p * at.n..(p + 1) * at.n].copy_from_slice(col);
    }
    Ok(HeisenbergKernel {
        kernel: SampledFunction::new(grid.clone(), values)?,
        label,
        k_max,
        lambda_max,
        lambda_nodes: m,
        truncation_error: err,
    })
}

/// Closed-form heat kernel of e^{−𝓛} by Gauss–Legendre quadrature in λ:
/// (8π²)^{−1} ∫_ℝ (λ/sinh λ) exp(−(λ coth λ)ρ²/4) e^{iλt} dλ.
pub fn heat_kernel_oracle(rho2: f64, t: f64) -> f64 {
    let gl = gauss_quad::GaussLegendre::new(24).expect("valid degree");
    let f = |l: f64| {
        let (a, b) = if l.abs() < 1e-8 { (1.0, 1.0) } else { (l / l.sinh(), l / l.tanh()) };
        a * (-b * rho2 / 4.0).exp() * (l * t).cos()
    };
    let panels = 160;
    let width = 80.0 / panels as f64;
    let s: f64 = (0..panels).map(|i| gl.integrate(i as f64 * width, (i + 1) as f64 * width, f)).sum();
    2.0 * s / (8.0 * PI * PI)
}

/// Kernel of e^{−𝓛}, that is h(μ) = e^{−μ²}.
pub fn heat_kernel(grid: &UniformGrid, cfg: &SynthesisConfig) -> Result<HeisenbergKernel> {
    sublaplacian_kernel(&|mu: f64| Complex64::new((-mu * mu).exp(), 0.0), "exp(-mu^2)", grid, cfg)
}
