use crate::error::{invalid, Result};
use crate::grid::{SampledFunction, UniformGrid};
use crate::kernel_rn::{ConvolutionOperator, MultiplierOperator};
use crate::multiplier::MultiplierSpec;
use crate::stats;
use crate::window::Band;
use serde::Serialize;

/// sup_α α·|{|v| > α}|, attained just below one of the sorted values.
pub fn weak_norm(v: &SampledFunction) -> f64 {
    let mut a: Vec<f64> = v.values().iter().map(|z| z.norm()).collect();
    a.sort_by(|x, y| y.total_cmp(x));
    let dv = v.grid().cell_volume();
    a.iter()
        .enumerate()
        .map(|(k, x)| x * (k + 1) as f64 * dv)
        .fold(0.0, f64::max)
}

/// Single-cell indicator of L¹ norm 1 at the grid point nearest `at`.
pub fn spike(grid: &UniformGrid, at: &[f64]) -> Result<SampledFunction> {
    let d = grid.dim();
    let ks: Vec<usize> = (0..d)
        .map(|a| {
            let ax = grid.axis(a);
            (((at[a] + ax.extent) / ax.spacing()).round() as usize).min(ax.n - 1)
        })
        .collect();
    let idx = grid.flatten(&ks);
    let h = 1.0 / grid.cell_volume();
    SampledFunction::from_fn(grid.clone(), |_| 0.0.into()).map(|f| {
        let mut v = f.into_values();
        v[idx] = h.into();
        SampledFunction::new(grid.clone(), v).expect("finite")
    })
}

/// Spikes, a smooth bump, a near-atom (bump minus its shift) and a spike train, each of L¹ norm 1.
pub fn default_weak_family(grid: &UniformGrid) -> Result<Vec<(String, SampledFunction)>> {
    let d = grid.dim();
    let origin = vec![0.0; d];
    let mut out = vec![("spike".to_string(), spike(grid, &origin)?)];
    let bump = SampledFunction::from_real_fn(grid.clone(), |x| (-8.0 * x.iter().map(|v| v * v).sum::<f64>()).exp())?;
    out.push(("bump".into(), bump.scaled(1.0 / bump.l1())));
    let near = SampledFunction::from_real_fn(grid.clone(), |x| {
        let a = (-8.0 * x.iter().map(|v| v * v).sum::<f64>()).exp();
        let b = (-8.0 * ((x[0] - 0.5).powi(2) + x[1..].iter().map(|v| v * v).sum::<f64>())).exp();
        a - b
    })?;
    out.push(("near_atom".into(), near.scaled(1.0 / near.l1())));
    let mut train = SampledFunction::zeros(grid.clone()).into_values();
    for k in -4i32..=4 {
        let mut at = origin.clone();
        at[0] = k as f64 * grid.min_extent() / 16.0;
        let s = spike(grid, &at)?;
        for (t, v) in train.iter_mut().zip(s.values()) {
            *t += v / 9.0;
        }
    }
    out.push(("spike_train".into(), SampledFunction::new(grid.clone(), train)?));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakProbe {
    pub constant: f64,
    pub per_input: Vec<(String, f64)>,
}

/// sup over the family of sup_α α|{|Tf| > α}| / ‖f‖₁.
pub fn weak_type_probe(op: &dyn ConvolutionOperator, family: &[(String, SampledFunction)]) -> Result<WeakProbe> {
    if family.is_empty() {
        return Err(invalid("empty input family"));
    }
    let mut per_input = Vec::new();
    for (label, f) in family {
        let l1 = f.l1();
        if l1 == 0.0 {
            return Err(invalid(format!("input {label} vanishes")));
        }
        per_input.push((label.clone(), weak_norm(&op.apply(f)?) / l1));
    }
    Ok(WeakProbe {
        constant: per_input.iter().map(|p| p.1).fold(0.0, f64::max),
        per_input,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakLadder {
    /// (Λ, constant)
    pub rows: Vec<(f64, f64)>,
    pub spread: f64,
    pub increasing: bool,
}

/// The probe for m·band(Λ) along a truncation ladder.
pub fn weak_type_ladder(
    spec: &MultiplierSpec,
    ladder: &[f64],
    grid: &UniformGrid,
    family: &[(String, SampledFunction)],
) -> Result<WeakLadder> {
    let mut rows = Vec::new();
    for &lam in ladder {
        let op = MultiplierOperator::radial(spec, Band::upper(lam), grid)?;
        rows.push((lam, weak_type_probe(&op, family)?.constant));
    }
    let vals: Vec<f64> = rows.iter().map(|r| r.1).collect();
    Ok(WeakLadder {
        spread: stats::max(&vals) / stats::min_positive(&vals),
        increasing: vals.windows(2).all(|w| w[1] > w[0]),
        rows,
    })
}
