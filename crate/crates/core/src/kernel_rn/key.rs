use super::kernel::{piece_symbol, PieceKernelGrid};
use crate::error::{invalid, Error, Result};
use crate::grid::{inverse_fourier, sobolev_norm, SampledFunction, UniformGrid};
use crate::multiplier::MultiplierSpec;
use crate::stats;
use crate::window::DyadicWindow;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// ‖(1+|x|²)^{−s/2}‖₂ over a spatial grid: the Cauchy–Schwarz constant of the key estimate.
pub fn cauchy_schwarz_constant(grid: &UniformGrid, s: f64) -> f64 {
    let d = grid.dim();
    let sum: f64 = (0..grid.len())
        .map(|i| {
            let r2: f64 = grid.coords(i)[..d].iter().map(|v| v * v).sum();
            (1.0 + r2).powf(-s)
        })
        .sum();
    (sum * grid.cell_volume()).sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyEstimate {
    pub l1: f64,
    pub sobolev: f64,
    pub ratio: f64,
    pub constant: f64,
    /// F = 0: the ratio 0/0 is reported as 0.
    pub degenerate: bool,
}

impl KeyEstimate {
    pub fn holds(&self) -> bool {
        self.ratio <= self.constant * (1.0 + 1e-12)
    }
}

/// ‖𝒦_F‖₁ / ‖F‖_{L²_s} for compactly supported samples F on a frequency grid of dimension n.
///
/// On the grid, ‖(1+|x|²)^{s/2}𝒦_F‖₂ = ‖F‖_{L²_s} exactly, so Cauchy–Schwarz bounds the ratio
/// by [`cauchy_schwarz_constant`] of the spatial grid.
pub fn key_estimate_ratio(f: &SampledFunction, s: f64, n: usize) -> Result<KeyEstimate> {
    if f.grid().dim() != n {
        return Err(invalid(format!("F is sampled in dimension {}, not {n}", f.grid().dim())));
    }
    if s < 0.0 {
        return Err(invalid(format!("s = {s} < 0")));
    }
    let k = inverse_fourier(f)?;
    let constant = cauchy_schwarz_constant(k.grid(), s);
    let sobolev = sobolev_norm(f, s)?;
    let l1 = k.l1();
    let degenerate = sobolev == 0.0;
    Ok(KeyEstimate {
        l1,
        sobolev,
        ratio: if degenerate { 0.0 } else { l1 / sobolev },
        constant,
        degenerate,
    })
}

/// φ(|ξ|) times a random trigonometric polynomial: smooth, supported in 1/2 ≤ |ξ| ≤ 2.
pub fn random_smooth_symbol(rng: &mut impl Rng, grid: &UniformGrid) -> Result<SampledFunction> {
    let w = DyadicWindow::standard();
    let terms: Vec<(Complex64, [f64; 3])> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let mut freq = [0.0; 3];
            for f in freq.iter_mut() {
                *f = rng.gen_range(-12.0..12.0);
            }
            (c, freq)
        })
        .collect();
    let f = SampledFunction::from_fn(grid.clone(), |x| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let phi = w.eval(r);
        if phi == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let p: Complex64 = terms
            .iter()
            .map(|(c, fr)| {
                let ph: f64 = x.iter().zip(fr).map(|(a, b)| a * b).sum();
                c * Complex64::from_polar(1.0, ph)
            })
            .sum();
        p * phi
    })?;
    f.with_support_radius(2.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyAudit {
    pub s: f64,
    pub n: usize,
    pub constant: f64,
    pub ratios: Vec<f64>,
    pub violations: usize,
    pub max_ratio: f64,
}

/// The key estimate on `count` random smooth symbols drawn from a seeded generator.
pub fn key_estimate_audit(count: usize, s: f64, grid: &UniformGrid, seed: u64) -> Result<KeyAudit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(count);
    let mut violations = 0;
    let mut constant = 0.0;
    for _ in 0..count {
        let f = random_smooth_symbol(&mut rng, grid)?;
        let k = key_estimate_ratio(&f, s, grid.dim())?;
        constant = k.constant;
        if !k.holds() {
            violations += 1;
        }
        ratios.push(k.ratio);
    }
    Ok(KeyAudit {
        s,
        n: grid.dim(),
        constant,
        max_ratio: stats::max(&ratios),
        ratios,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LargePartRow {
    pub j: i32,
    pub l1: f64,
    /// C·‖m^j‖_{L²_{s′}} with the grid's Cauchy–Schwarz constant.
    pub majorant: f64,
    pub partial_sum: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LargePartReport {
    pub s_prime: f64,
    /// θ(β − 2s′)/2.
    pub expected_rate: f64,
    pub rows: Vec<LargePartRow>,
    /// −slope of log₂‖𝒦_{m_j}‖₁ against |j| on the largest-|j| half.
    pub fitted_rate: f64,
    /// The same fit for the majorant.
    pub majorant_rate: f64,
    /// Geometric extrapolation of the remainder beyond the last j.
    pub tail_estimate: f64,
    /// Last term, i.e. the last increment of the partial sums.
    pub last_term: f64,
    pub monotone: bool,
}

/// Partial sums of Σ_{jθ>0, |j| ≤ j_max} ‖𝒦_{m_j}‖₁ for β > n, with fitted geometric rates.
///
/// ‖𝒦_{m_j}‖₁ = ‖𝒦_{m^j}‖₁ by dilation invariance, so each term is computed from the rescaled piece.
pub fn large_part_l1(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    n: usize,
    s_prime: f64,
    j_max: i32,
    rule: &PieceKernelGrid,
) -> Result<LargePartReport> {
    let (theta, beta) = spec.theta_beta();
    let nf = n as f64;
    if beta <= nf {
        return Err(Error::OutOfRegime(format!(
            "β = {beta} ≤ n = {n}: no s′ with n/2 < s′ < β/2"
        )));
    }
    if !(s_prime > nf / 2.0 && s_prime < beta / 2.0) {
        return Err(Error::OutOfRegime(format!(
            "s′ = {s_prime} outside ({}, {})",
            nf / 2.0,
            beta / 2.0
        )));
    }
    if theta == 0.0 {
        return Err(Error::OutOfRegime("θ = 0 has no large part".into()));
    }
    let js: Vec<i32> = (1..=j_max.abs())
        .map(|j| if theta > 0.0 { j } else { -j })
        .collect();
    let mut rows = Vec::with_capacity(js.len());
    let mut sum = 0.0;
    for &j in &js {
        let grid = rule.grid_for(spec, j, n)?;
        let symbol = piece_symbol(spec, window, j, &grid)?;
        let est = key_estimate_ratio(&symbol, s_prime, n)?;
        sum += est.l1;
        rows.push(LargePartRow {
            j,
            l1: est.l1,
            majorant: est.constant * est.sobolev,
            partial_sum: sum,
        });
    }
    let idx = stats::upper_half(&js.iter().map(|&j| j as f64).collect::<Vec<_>>());
    let x: Vec<f64> = idx.iter().map(|&i| js[i].abs() as f64).collect();
    let l1: Vec<f64> = idx.iter().map(|&i| rows[i].l1).collect();
    let maj: Vec<f64> = idx.iter().map(|&i| rows[i].majorant).collect();
    let fitted_rate = -stats::log2_slope(&x, &l1);
    let last_term = rows.last().map_or(0.0, |r| r.l1);
    let q = 2f64.powf(-fitted_rate);
    let tail_estimate = if q < 1.0 { last_term * q / (1.0 - q) } else { f64::INFINITY };
    Ok(LargePartReport {
        s_prime,
        expected_rate: theta * (beta - 2.0 * s_prime) / 2.0,
        monotone: rows.windows(2).all(|w| w[1].partial_sum >= w[0].partial_sum),
        fitted_rate,
        majorant_rate: -stats::log2_slope(&x, &maj),
        tail_estimate,
        last_term,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_quad::GaussLegendre;

    fn freq_grid() -> UniformGrid {
        UniformGrid::line(1 << 12, 8.0).unwrap()
    }

    #[test]
    fn zero_symbol_is_degenerate() {
        let k = key_estimate_ratio(&SampledFunction::zeros(freq_grid()), 0.75, 1).unwrap();
        assert!(k.degenerate && k.ratio == 0.0);
    }

    #[test]
    fn window_ratio_below_constant() {
        let w = DyadicWindow::standard();
        let f = SampledFunction::from_real_fn(freq_grid(), |x| w.eval(x[0].abs())).unwrap();
        let k = key_estimate_ratio(&f, 1.0, 1).unwrap();
        assert!(k.holds());
        // oracle for the constant: (∫(1+x²)^{−1}dx)^{1/2} = √π on the whole line
        assert!((k.constant - std::f64::consts::PI.sqrt()).abs() < 0.01);
    }

    #[test]
    fn constant_matches_quadrature_for_three_quarters() {
        let gl = GaussLegendre::new(40).unwrap();
        let x_max = std::f64::consts::PI / freq_grid().spacing(0);
        let inner: f64 = (0..200)
            .map(|p| {
                let a = x_max * p as f64 / 200.0;
                let b = x_max * (p + 1) as f64 / 200.0;
                gl.integrate(a, b, |x| (1.0 + x * x).powf(-0.75))
            })
            .sum();
        let g = freq_grid().dual();
        let c = cauchy_schwarz_constant(&g, 0.75);
        assert!((c - (2.0 * inner).sqrt()).abs() / c < 1e-3, "{c}");
    }

    #[test]
    fn small_audit_has_no_violations() {
        let a = key_estimate_audit(5, 0.75, &freq_grid(), 7).unwrap();
        assert_eq!(a.violations, 0);
        assert_eq!(a.ratios.len(), 5);
    }

    #[test]
    fn large_part_needs_beta_above_n() {
        let w = DyadicWindow::standard();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        assert!(matches!(
            large_part_l1(&m, &w, 1, 0.75, 4, &PieceKernelGrid::default()),
            Err(Error::OutOfRegime(_))
        ));
        let m2 = MultiplierSpec::oscillating(0.5, 2.0).unwrap();
        assert!(large_part_l1(&m2, &w, 1, 1.2, 4, &PieceKernelGrid::default()).is_err());
        let r = large_part_l1(&m2, &w, 1, 0.75, 6, &PieceKernelGrid::default()).unwrap();
        assert!(r.monotone);
        assert!(r.rows.iter().all(|row| row.l1 <= row.majorant * (1.0 + 1e-12)));
    }
}
