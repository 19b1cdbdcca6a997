use crate::error::{invalid, Result};
use crate::grid::UniformGrid;
use crate::kernel_rn::kernel_of_piece;
use crate::multiplier::MultiplierSpec;
use crate::stats;
use crate::window::DyadicWindow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSumConfig {
    pub s: f64,
    pub j_min: i32,
    pub j_max: i32,
    pub level_step: f64,
    /// Largest j(1−θ)+L kept.
    pub u_max: f64,
    pub spacing: f64,
    pub points: usize,
}

impl Default for TailSumConfig {
    fn default() -> Self {
        TailSumConfig {
            s: 0.75,
            j_min: 1,
            j_max: 12,
            level_step: 0.5,
            u_max: 8.0,
            spacing: 0.25,
            points: 1 << 17,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TailRow {
    pub j: i32,
    pub level: f64,
    /// j(1−θ) + L
    pub u: f64,
    /// ∫_{|x| ≥ 2^{j+L}} |𝒦_{m^j}|, equal to ∫_{|x| ≥ 2^L} |𝒦_{m_j}|.
    pub summand: f64,
    /// (∫_{|x| ≥ 2^{j+L}} (1+|x|^s)^{−2})^{1/2}·‖𝒦_{m^j}(1+|·|^s)‖₂
    pub majorant: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailSumReport {
    pub s: f64,
    pub theta: f64,
    pub rows: Vec<TailRow>,
    /// (L, Σ_j summand over the pairs kept at that L).
    pub per_level: Vec<(f64, f64)>,
    pub sup: f64,
    pub expected_slope: f64,
    /// Pooled slope of log₂ majorant against u.
    pub majorant_slope: f64,
    pub summand_slope: f64,
    pub violations: usize,
}

/// Far-field tails of 𝒦_{m_j} over the pairs with j(1−θ)+L ∈ [0, u_max], each against its
/// Cauchy–Schwarz majorant.
pub fn tail_sum_criterion(spec: &MultiplierSpec, window: &DyadicWindow, cfg: &TailSumConfig) -> Result<TailSumReport> {
    let theta = spec.theta();
    if theta == 1.0 {
        return Err(crate::error::Error::WaveCase);
    }
    if !(cfg.s > 0.5) {
        return Err(invalid(format!("s = {} must exceed n/2 = 1/2", cfg.s)));
    }
    if cfg.level_step <= 0.0 || cfg.j_min > cfg.j_max {
        return Err(invalid("empty level or j range"));
    }
    let grid = UniformGrid::line(cfg.points, cfg.points as f64 * cfg.spacing / 2.0)?;
    let reach = grid.min_extent() / 2.0;
    let s = cfg.s;
    let per_j: Vec<Result<Vec<TailRow>>> = (cfg.j_min..=cfg.j_max)
        .into_par_iter()
        .map(|j| {
            let k = kernel_of_piece(spec, window, j, 1, &grid)?;
            let w = k.weighted_l2(s);
            let xs: Vec<f64> = (0..grid.len()).map(|i| grid.coords(i)[0].abs()).collect();
            let absk: Vec<f64> = k.kernel().values().iter().map(|v| v.norm()).collect();
            let h = grid.spacing(0);
            let shift = j as f64 * (1.0 - theta);
            let mut rows = Vec::new();
            let mut i = (-shift / cfg.level_step).ceil() as i64;
            loop {
                let level = i as f64 * cfg.level_step;
                let u = shift + level;
                if u > cfg.u_max + 1e-12 {
                    break;
                }
                i += 1;
                let rho = 2f64.powf(j as f64 + level);
                if rho > reach {
                    break;
                }
                let (mut tail, mut weight) = (0.0, 0.0);
                for (x, a) in xs.iter().zip(&absk) {
                    if *x >= rho {
                        tail += a;
                        weight += (1.0 + x.powf(s)).powi(-2);
                    }
                }
                rows.push(TailRow {
                    j,
                    level,
                    u,
                    summand: tail * h,
                    majorant: (weight * h).sqrt() * w,
                });
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_j {
        rows.extend(r?);
    }
    if rows.len() < 2 {
        return Err(invalid("too few (j, L) pairs inside the grid"));
    }
    let mut levels: Vec<f64> = rows.iter().map(|r| r.level).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let per_level: Vec<(f64, f64)> = levels
        .iter()
        .map(|&l| (l, rows.iter().filter(|r| r.level == l).map(|r| r.summand).sum()))
        .collect();
    let us: Vec<f64> = rows.iter().map(|r| r.u).collect();
    Ok(TailSumReport {
        s,
        theta,
        sup: per_level.iter().map(|p| p.1).fold(0.0, f64::max),
        expected_slope: -(s - 0.5),
        majorant_slope: stats::log2_slope(&us, &rows.iter().map(|r| r.majorant).collect::<Vec<_>>()),
        summand_slope: stats::log2_slope(&us, &rows.iter().map(|r| r.summand).collect::<Vec<_>>()),
        violations: rows.iter().filter(|r| r.summand > r.majorant * (1.0 + 1e-12)).count(),
        per_level,
        rows,
    })
}
