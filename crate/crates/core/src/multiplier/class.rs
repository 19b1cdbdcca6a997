use super::{dyadic_piece, MultiplierSpec, PieceGrid};
use crate::error::{invalid, Result};
use crate::stats;
use crate::window::DyadicWindow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;

/// Numerical stand-ins for "sup < ∞" over a finite j-range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassTolerances {
    /// Largest log₂-slope (against |j|, on the largest-|j| half) still read as bounded.
    pub finite_slope: f64,
    /// Slopes up to this value are inconclusive rather than divergent.
    pub inconclusive_slope: f64,
    /// Largest admissible max / median ratio.
    pub median_factor: f64,
}

impl Default for ClassTolerances {
    fn default() -> Self {
        ClassTolerances {
            finite_slope: 0.02,
            inconclusive_slope: 0.05,
            median_factor: 10.0,
        }
    }
}

/// 8 log-spaced exponents in [max(0.1, s/4), s].
pub fn default_s_grid(s: f64) -> Vec<f64> {
    stats::log_space((s / 4.0).max(0.1).min(s), s, 8)
}

/// (j with jθ ≤ 0, j with jθ > 0); θ = 0 puts everything in the first set.
pub fn split_small_large(spec: &MultiplierSpec, j_range: RangeInclusive<i32>) -> (Vec<i32>, Vec<i32>) {
    let theta = spec.theta();
    j_range.partition(|&j| j as f64 * theta <= 0.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionNeg {
    pub s: f64,
    pub rows: Vec<(i32, f64)>,
    pub sup: f64,
    /// log₂‖m^j‖_{L²_s} against |j| on the largest-|j| half.
    pub slope: f64,
}

/// sup over {jθ ≤ 0} of ‖m^j‖_{L²_s}, with the trend slope for judging extrapolation.
pub fn check_condition_neg(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    s: f64,
    j_range: RangeInclusive<i32>,
    grid: &PieceGrid,
) -> Result<ConditionNeg> {
    if !(s > 0.0) {
        return Err(invalid(format!("s = {s} must be positive")));
    }
    let (small, _) = split_small_large(spec, j_range);
    let rows = small
        .par_iter()
        .map(|&j| Ok((j, dyadic_piece(spec, window, j, grid)?.sobolev_norm(s)?)))
        .collect::<Result<Vec<_>>>()?;
    let (js, vals): (Vec<f64>, Vec<f64>) = rows.iter().map(|(j, v)| (*j as f64, *v)).unzip();
    Ok(ConditionNeg {
        s,
        sup: stats::max(&vals),
        slope: upper_half_slope(&js, &vals),
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PosRow {
    pub j: i32,
    pub linf: f64,
    pub sobolev: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionPos {
    pub s: f64,
    pub beta: f64,
    pub rows: Vec<PosRow>,
    /// sup 2^{jθβ/2}‖m^j‖_∞.
    pub sup_linf: f64,
    /// sup 2^{−jθ(2s−β)/2}‖m^j‖_{L²_s}.
    pub sup_sobolev: f64,
    /// log₂‖m^j‖_∞ against j on the largest-|j| half of the jθ > 0 range.
    pub slope_linf: f64,
    /// log₂‖m^j‖_{L²_s} against j on the largest-|j| half.
    pub slope_sobolev: f64,
    /// The same two fits over every computed j; biased by small-|j| pieces where (1+ξ²)^{s/2} is not yet |ξ|^s.
    pub full_range_slopes: (f64, f64),
}

impl ConditionPos {
    pub fn expected_slopes(theta: f64, beta: f64, s: f64) -> (f64, f64) {
        (-theta * beta / 2.0, theta * (2.0 * s - beta) / 2.0)
    }
}

/// The growth condition on {jθ > 0}, tested against the declared β.
pub fn check_condition_pos(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    s: f64,
    beta: f64,
    j_range: RangeInclusive<i32>,
    grid: &PieceGrid,
) -> Result<ConditionPos> {
    let theta = spec.theta();
    let (_, large) = split_small_large(spec, j_range);
    let rows = large
        .par_iter()
        .map(|&j| {
            let p = dyadic_piece(spec, window, j, grid)?;
            Ok(PosRow {
                j,
                linf: p.sup(),
                sobolev: p.sobolev_norm(s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let js: Vec<f64> = rows.iter().map(|r| r.j as f64).collect();
    let linf: Vec<f64> = rows.iter().map(|r| r.linf).collect();
    let sob: Vec<f64> = rows.iter().map(|r| r.sobolev).collect();
    let sup_linf = rows
        .iter()
        .map(|r| 2f64.powf(r.j as f64 * theta * beta / 2.0) * r.linf)
        .fold(0.0, f64::max);
    let sup_sobolev = rows
        .iter()
        .map(|r| 2f64.powf(-(r.j as f64) * theta * (2.0 * s - beta) / 2.0) * r.sobolev)
        .fold(0.0, f64::max);
    Ok(ConditionPos {
        s,
        beta,
        sup_linf,
        sup_sobolev,
        slope_linf: signed_upper_half_slope(&js, &linf),
        slope_sobolev: signed_upper_half_slope(&js, &sob),
        full_range_slopes: (stats::log2_slope(&js, &linf), stats::log2_slope(&js, &sob)),
        rows,
    })
}

fn signed_upper_half_slope(js: &[f64], vals: &[f64]) -> f64 {
    let idx = stats::upper_half(js);
    let x: Vec<f64> = idx.iter().map(|&i| js[i]).collect();
    let y: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
    stats::log2_slope(&x, &y)
}

fn upper_half_slope(js: &[f64], vals: &[f64]) -> f64 {
    let idx = stats::upper_half(js);
    let x: Vec<f64> = idx.iter().map(|&i| js[i].abs()).collect();
    let y: Vec<f64> = idx.iter().map(|&i| vals[i]).collect();
    stats::log2_slope(&x, &y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Bounded,
    Borderline,
    Divergent,
}

/// One normalised sequence whose boundedness a class condition asks for.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceCheck {
    pub label: String,
    pub sup: f64,
    pub slope: f64,
    pub max_over_median: f64,
    pub status: Status,
}

impl SequenceCheck {
    /// Zero entries (pieces killed by the cutoff) are left out of the median.
    pub fn evaluate(label: String, js: &[f64], vals: &[f64], tol: &ClassTolerances) -> Self {
        let sup = stats::max(vals);
        let positive: Vec<f64> = vals.iter().copied().filter(|v| *v > 0.0).collect();
        let max_over_median = if positive.is_empty() {
            1.0
        } else {
            sup / stats::median(&positive)
        };
        let slope = upper_half_slope(js, vals);
        let status = if max_over_median > tol.median_factor || slope > tol.inconclusive_slope {
            Status::Divergent
        } else if slope > tol.finite_slope {
            Status::Borderline
        } else {
            Status::Bounded
        };
        SequenceCheck {
            label,
            sup,
            slope,
            max_over_median,
            status,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NotMember,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub j: i32,
    /// Sign of jθ.
    pub sign: i8,
    pub linf: f64,
    /// (s′, ‖m^j‖_{L²_{s′}}) for each probed s′.
    pub sobolev: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub theta: f64,
    pub beta: f64,
    pub s: f64,
    pub s_grid: Vec<f64>,
    pub j_min: i32,
    pub j_max: i32,
    pub rows: Vec<ClassRow>,
    pub neg: SequenceCheck,
    pub pos: Vec<SequenceCheck>,
    /// (s′, log₂‖m^j‖_{L²_{s′}} slope over jθ > 0).
    pub sobolev_slopes: Vec<(f64, f64)>,
    pub linf_slope: f64,
    pub verdict: Verdict,
}

/// Membership test for M_{θ,β,s}: the (neg) condition at s and the (pos) condition at every s′.
#[allow(clippy::too_many_arguments)]
pub fn class_membership(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    theta: f64,
    beta: f64,
    s: f64,
    s_grid: &[f64],
    j_range: RangeInclusive<i32>,
    grid: &PieceGrid,
    tol: &ClassTolerances,
) -> Result<ClassReport> {
    if !(s > 0.0) {
        return Err(invalid(format!("s = {s} must be positive")));
    }
    if s_grid.iter().any(|&t| !(t > 0.0 && t <= s)) || !s_grid.contains(&s) {
        return Err(invalid("s′ grid must lie in (0, s] and contain s"));
    }
    let (j_min, j_max) = (*j_range.start(), *j_range.end());
    let mut exps = s_grid.to_vec();
    exps.sort_by(f64::total_cmp);
    let rows = j_range
        .collect::<Vec<i32>>()
        .par_iter()
        .map(|&j| {
            let p = dyadic_piece(spec, window, j, grid)?;
            let norms = p.sobolev_norms(&exps)?;
            let jt = j as f64 * theta;
            Ok(ClassRow {
                j,
                sign: if jt > 0.0 { 1 } else if jt < 0.0 { -1 } else { 0 },
                linf: p.sup(),
                sobolev: exps.iter().copied().zip(norms).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let norm_at = |r: &ClassRow, t: f64| r.sobolev.iter().find(|e| e.0 == t).unwrap().1;
    let small: Vec<&ClassRow> = rows.iter().filter(|r| r.j as f64 * theta <= 0.0).collect();
    let large: Vec<&ClassRow> = rows.iter().filter(|r| r.j as f64 * theta > 0.0).collect();
    let jl: Vec<f64> = large.iter().map(|r| r.j as f64).collect();

    let js: Vec<f64> = small.iter().map(|r| r.j as f64).collect();
    let vs: Vec<f64> = small.iter().map(|r| norm_at(r, s)).collect();
    let neg = SequenceCheck::evaluate(format!("neg:sobolev[s={s}]"), &js, &vs, tol);

    let mut pos = Vec::new();
    let linf: Vec<f64> = large
        .iter()
        .map(|r| 2f64.powf(r.j as f64 * theta * beta / 2.0) * r.linf)
        .collect();
    pos.push(SequenceCheck::evaluate("pos:linf".into(), &jl, &linf, tol));
    let mut sobolev_slopes = Vec::new();
    for &t in &exps {
        let raw: Vec<f64> = large.iter().map(|r| norm_at(r, t)).collect();
        sobolev_slopes.push((t, stats::log2_slope(&jl, &raw)));
        let v: Vec<f64> = large
            .iter()
            .zip(&raw)
            .map(|(r, n)| 2f64.powf(-(r.j as f64) * theta * (2.0 * t - beta) / 2.0) * n)
            .collect();
        pos.push(SequenceCheck::evaluate(format!("pos:sobolev[s'={t}]"), &jl, &v, tol));
    }
    let raw_linf: Vec<f64> = large.iter().map(|r| r.linf).collect();
    let statuses: Vec<Status> = std::iter::once(neg.status)
        .chain(pos.iter().map(|p| p.status))
        .collect();
    let verdict = if statuses.iter().all(|s| *s == Status::Bounded) {
        Verdict::Member
    } else if statuses.contains(&Status::Divergent) {
        Verdict::NotMember
    } else {
        Verdict::Inconclusive
    };
    Ok(ClassReport {
        theta,
        beta,
        s,
        s_grid: exps,
        j_min,
        j_max,
        linf_slope: stats::log2_slope(&jl, &raw_linf),
        rows,
        neg,
        pos,
        sobolev_slopes,
        verdict,
    })
}

impl ClassReport {
    /// One row per (j, s′): j, sign, linf, s′, sobolev.
    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        let mut out = Vec::new();
        for r in &self.rows {
            for (t, v) in &r.sobolev {
                out.push([
                    r.j.to_string(),
                    r.sign.to_string(),
                    format!("{:.12e}", r.linf),
                    format!("{t}"),
                    format!("{v:.12e}"),
                ]);
            }
        }
        out
    }

    /// The sup constants entering the class definition.
    pub fn class_constant(&self) -> f64 {
        std::iter::once(self.neg.sup)
            .chain(self.pos.iter().map(|p| p.sup))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulationFit {
    pub rows: Vec<(f64, f64)>,
    /// Slope of log(constant) against log(1+|y|).
    pub degree: f64,
}

/// Class constants of λ^{iy}m over `ys`, and their polynomial growth degree in |y|.
#[allow(clippy::too_many_arguments)]
pub fn modulate_and_fit(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    theta: f64,
    beta: f64,
    s: f64,
    ys: &[f64],
    j_range: RangeInclusive<i32>,
    grid: &PieceGrid,
) -> Result<ModulationFit> {
    if ys.len() < 4 {
        return Err(invalid("need at least four modulation parameters"));
    }
    let tol = ClassTolerances::default();
    let rows = ys
        .iter()
        .map(|&y| {
            let m = MultiplierSpec::modulated(spec.clone(), y)?;
            let r = class_membership(&m, window, theta, beta, s, &[s], j_range.clone(), grid, &tol)?;
            Ok((y, r.class_constant()))
        })
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = rows.iter().map(|r| (1.0 + r.0.abs()).ln()).collect();
    let v: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
    Ok(ModulationFit {
        degree: stats::slope(&x, &v),
        rows,
    })
}
