use super::operator::MultiplierOperator;
use crate::error::{invalid, Result};
use crate::grid::{SampledFunction, UniformGrid};
use crate::multiplier::MultiplierSpec;
use crate::stats;
use crate::window::Band;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpScanConfig {
    pub p_grid: Vec<f64>,
    /// Upper frequency truncations Λ.
    pub ladder: Vec<f64>,
    pub points: usize,
    pub extent: f64,
    pub modulations: bool,
    pub random_sign_inputs: usize,
    /// max/min across the ladder below which a bound counts as stable.
    pub stable_spread: f64,
    pub seed: u64,
}

impl Default for LpScanConfig {
    fn default() -> Self {
        LpScanConfig {
            p_grid: p_grid_from_distances(&[0.0, 0.1, 0.2, 0.25, 0.3, 0.35, 0.4]),
            ladder: vec![16.0, 64.0, 256.0, 1024.0],
            points: 1 << 18,
            extent: 16.0,
            modulations: true,
            random_sign_inputs: 8,
            stable_spread: 1.3,
            seed: 0,
        }
    }
}

/// Both exponents p with |1/p − 1/2| = d, for each d.
pub fn p_grid_from_distances(ds: &[f64]) -> Vec<f64> {
    let mut ps: Vec<f64> = Vec::new();
    for &d in ds {
        for ip in [0.5 - d, 0.5 + d] {
            if ip > 0.0 && ip < 1.0 && !ps.iter().any(|p| (1.0 / p - ip).abs() < 1e-12) {
                ps.push(1.0 / ip);
            }
        }
    }
    ps.sort_by(f64::total_cmp);
    ps
}

fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct LpRow {
    pub p: f64,
    pub truncation: f64,
    pub bound: f64,
    pub input: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpVerdict {
    Stable,
    Growing,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpLine {
    pub p: f64,
    /// |1/p − 1/2|.
    pub distance: f64,
    pub bounds: Vec<f64>,
    pub spread: f64,
    /// Slope of log₂ bound against log₂ Λ.
    pub exponent: f64,
    pub verdict: LpVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpScanReport {
    pub rows: Vec<LpRow>,
    pub lines: Vec<LpLine>,
}

struct Input {
    label: String,
    f: SampledFunction,
}

fn family(grid: &UniformGrid, truncation: f64, cfg: &LpScanConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Input>> {
    let top = truncation.log2().ceil() as i32 + 2;
    let mut out = Vec::new();
    let gauss = |d: f64, c: f64, w: f64| {
        SampledFunction::from_fn(grid.clone(), move |x| {
            let u = (x[0] - c) / d;
            Complex64::from_polar((-0.5 * u * u).exp(), w * x[0])
        })
    };
    for k in -2..=top {
        let d = 2f64.powi(-k);
        out.push(Input {
            label: format!("bump[d=2^{}]", -k),
            f: gauss(d, 0.0, 0.0)?,
        });
        if cfg.modulations {
            let mut w = 1.0;
            while w < truncation {
                out.push(Input {
                    label: format!("modulated[d=2^{},w={w}]", -k),
                    f: gauss(d, 0.0, w)?,
                });
                w *= 2.0;
            }
        }
    }
    let r = grid.min_extent() / 4.0;
    for i in 0..cfg.random_sign_inputs {
        let d = 2f64.powi(-rng.gen_range(-2..=top));
        let bumps: Vec<(f64, f64)> = (0..8)
            .map(|_| (rng.gen_range(-r..r), if rng.gen_bool(0.5) { 1.0 } else { -1.0 }))
            .collect();
        let f = SampledFunction::from_real_fn(grid.clone(), |x| {
            bumps
                .iter()
                .map(|(c, s)| {
                    let u = (x[0] - c) / d;
                    s * (-0.5 * u * u).exp()
                })
                .sum()
        })?;
        out.push(Input {
            label: format!("random_sign[{i}]"),
            f,
        });
    }
    Ok(out)
}

/// Lower bounds for ‖T_Λ‖_{p→p} over a test family, along a ladder of truncations Λ.
///
/// Each bound is the larger of the family maximum of ‖T f‖_p/‖f‖_p and of ‖T* f‖_{p′}/‖f‖_{p′}.
pub fn lp_scan(spec: &MultiplierSpec, cfg: &LpScanConfig) -> Result<LpScanReport> {
    if cfg.p_grid.iter().any(|&p| !(p > 1.0 && p.is_finite())) {
        return Err(invalid("p must lie in (1, ∞)"));
    }
    if cfg.ladder.is_empty() {
        return Err(invalid("empty truncation ladder"));
    }
    let grid = UniformGrid::line(cfg.points, cfg.extent)?;
    let mut exps: Vec<f64> = cfg.p_grid.clone();
    exps.extend(cfg.p_grid.iter().map(|&p| conjugate_exponent(p)));
    exps.sort_by(f64::total_cmp);
    exps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let index = |p: f64| exps.iter().position(|q| (q - p).abs() < 1e-12).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for &lam in &cfg.ladder {
        let t = MultiplierOperator::radial(spec, Band::upper(lam), &grid)?;
        let ts = t.adjoint();
        let inputs = family(&grid, lam, cfg, &mut rng)?;
        let mut best = vec![(0.0f64, String::new()); cfg.p_grid.len()];
        for inp in &inputs {
            let spec_f = t.spectrum(&inp.f);
            let tf = t.apply_spectrum(&spec_f);
            let tsf = ts.apply_spectrum(&spec_f);
            let nf: Vec<f64> = exps.iter().map(|&p| inp.f.lp(p)).collect();
            let ntf: Vec<f64> = exps.iter().map(|&p| tf.lp(p)).collect();
            let ntsf: Vec<f64> = exps.iter().map(|&p| tsf.lp(p)).collect();
            for (b, &p) in best.iter_mut().zip(&cfg.p_grid) {
                let i = index(p);
                let ic = index(conjugate_exponent(p));
                let v = (ntf[i] / nf[i]).max(ntsf[ic] / nf[ic]);
                if v > b.0 {
                    *b = (v, inp.label.clone());
                }
            }
        }
        for (&p, (v, label)) in cfg.p_grid.iter().zip(best) {
            rows.push(LpRow {
                p,
                truncation: lam,
                bound: v,
                input: label,
            });
        }
    }
    let log_ladder: Vec<f64> = cfg.ladder.iter().map(|l| l.log2()).collect();
    let lines = cfg
        .p_grid
        .iter()
        .map(|&p| {
            let bounds: Vec<f64> = rows.iter().filter(|r| r.p == p).map(|r| r.bound).collect();
            let spread = stats::max(&bounds) / stats::min_positive(&bounds);
            let exponent = stats::log2_slope(&log_ladder, &bounds);
            let verdict = if spread >= cfg.stable_spread && exponent > 0.0 {
                LpVerdict::Growing
            } else {
                LpVerdict::Stable
            };
            LpLine {
                p,
                distance: (1.0 / p - 0.5).abs(),
                bounds,
                spread,
                exponent,
                verdict,
            }
        })
        .collect();
    Ok(LpScanReport { rows, lines })
}
