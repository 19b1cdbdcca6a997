use crate::error::{invalid, Error, Result};
use crate::grid::{SampledFunction, UniformGrid};
use crate::kernel_rn::{ConvolutionOperator, MultiplierOperator};
use crate::stats;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomProfile {
    /// sin(π(x₁−c₁)/r)
    Sine,
    /// sign(x₁−c₁)
    Haar,
}

/// An H¹ atom supported in the ball B(c, 2^L), normalised by the grid measure of that ball.
#[derive(Clone, Debug)]
pub struct Atom {
    pub center: Vec<f64>,
    pub level: f64,
    pub profile: AtomProfile,
    /// |B| counted on the grid.
    pub measure: f64,
    samples: SampledFunction,
}

impl Atom {
    pub fn samples(&self) -> &SampledFunction {
        &self.samples
    }

    pub fn radius(&self) -> f64 {
        2f64.powf(self.level)
    }

    /// ∫a = 0, ‖a‖₂ ≤ |B|^{−1/2}, ‖a‖_∞ ≤ |B|^{−1}.
    pub fn check(&self) -> Result<()> {
        let a = &self.samples;
        let mean = a.integral().norm();
        if mean > 1e-12 * a.l1().max(f64::MIN_POSITIVE) {
            return Err(Error::Invariant(format!("atom mean {mean:e} ≠ 0")));
        }
        if a.l2() > self.measure.powf(-0.5) * (1.0 + 1e-12) {
            return Err(Error::Invariant(format!("‖a‖₂ = {} > |B|^(-1/2)", a.l2())));
        }
        if a.linf() > (1.0 + 1e-12) / self.measure {
            return Err(Error::Invariant(format!("‖a‖_∞ = {} > |B|^(-1)", a.linf())));
        }
        Ok(())
    }

    /// |a|: the same size without cancellation.
    pub fn without_cancellation(&self) -> SampledFunction {
        self.samples.abs()
    }
}

fn dist(x: &[f64], c: &[f64]) -> f64 {
    x.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

pub fn make_atom(grid: &UniformGrid, center: &[f64], level: f64, profile: AtomProfile) -> Result<Atom> {
    if center.len() != grid.dim() {
        return Err(invalid("atom centre has the wrong dimension"));
    }
    let r = 2f64.powf(level);
    if r + center.iter().map(|c| c.abs()).fold(0.0, f64::max) >= grid.min_extent() {
        return Err(invalid(format!("ball of radius {r} leaves the grid")));
    }
    let inside: Vec<usize> = (0..grid.len())
        .filter(|&i| dist(&grid.coords(i)[..grid.dim()], center) < r)
        .collect();
    if inside.len() < 3 {
        return Err(Error::Resolution {
            what: "atom radius in grid cells".into(),
            value: r / grid.spacing(0),
            limit: 1.0,
        });
    }
    let measure = inside.len() as f64 * grid.cell_volume();
    let mut vals = vec![0.0; grid.len()];
    for &i in &inside {
        let u = grid.coords(i)[0] - center[0];
        vals[i] = match profile {
            AtomProfile::Sine => (std::f64::consts::PI * u / r).sin(),
            AtomProfile::Haar => u.signum() * if u == 0.0 { 0.0 } else { 1.0 },
        } / measure;
    }
    // remove whatever rounding left in the mean, keeping the support
    let mean = inside.iter().map(|&i| vals[i]).sum::<f64>() / inside.len() as f64;
    for &i in &inside {
        vals[i] -= mean;
    }
    let atom = Atom {
        center: center.to_vec(),
        level,
        profile,
        measure,
        samples: SampledFunction::new(grid.clone(), vals.into_iter().map(|v| Complex64::new(v, 0.0)).collect())?,
    };
    atom.check()?;
    Ok(atom)
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomRow {
    pub level: f64,
    pub total: f64,
    /// ∫_{|x−c| ≥ C·2^L} |T a|
    pub far: f64,
    pub near: f64,
    /// |{|x−c| ≤ C·2^L}|^{1/2}·sup|m|·‖a‖₂
    pub near_bound: f64,
    /// far-field integral of T|a|
    pub ablation_far: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomReport {
    pub dilate: f64,
    pub rows: Vec<AtomRow>,
    /// max/min of the far-field values over all levels.
    pub far_spread: f64,
    /// sup of far values over all levels divided by the sup over |L| ≤ 3.
    pub far_growth: f64,
    /// ablation/far at the smallest level.
    pub ablation_ratio: f64,
    pub near_field_holds: bool,
}

/// ∫|T a_B| split at |x − c| = C·2^L, with the |a_B| ablation, for each level.
pub fn atom_test(
    op: &MultiplierOperator,
    levels: &[f64],
    profile: AtomProfile,
    dilate: f64,
) -> Result<AtomReport> {
    if levels.is_empty() {
        return Err(invalid("no levels"));
    }
    let grid = op.grid();
    let d = grid.dim();
    let center = vec![0.0; d];
    let dv = grid.cell_volume();
    let mut rows = Vec::new();
    for &level in levels {
        let atom = make_atom(grid, &center, level, profile)?;
        let rho = dilate * atom.radius();
        let ta = op.apply(atom.samples())?;
        let tb = op.apply(&atom.without_cancellation())?;
        let (mut far, mut near, mut abl, mut count) = (0.0, 0.0, 0.0, 0usize);
        for i in 0..grid.len() {
            let r = dist(&grid.coords(i)[..d], &center);
            if r >= rho {
                far += ta.values()[i].norm();
                abl += tb.values()[i].norm();
            } else {
                near += ta.values()[i].norm();
                count += 1;
            }
        }
        rows.push(AtomRow {
            level,
            total: ta.l1(),
            far: far * dv,
            near: near * dv,
            near_bound: (count as f64 * dv).sqrt() * op.symbol_sup() * atom.samples().l2(),
            ablation_far: abl * dv,
        });
    }
    let fars: Vec<f64> = rows.iter().map(|r| r.far).collect();
    let min = fars.iter().cloned().fold(f64::INFINITY, f64::min);
    let inner: Vec<f64> = rows.iter().filter(|r| r.level.abs() <= 3.0).map(|r| r.far).collect();
    let lowest = rows.iter().min_by(|a, b| a.level.total_cmp(&b.level)).expect("non-empty");
    Ok(AtomReport {
        dilate,
        far_spread: stats::max(&fars) / min,
        far_growth: stats::max(&fars) / stats::max(&inner),
        ablation_ratio: lowest.ablation_far / lowest.far,
        near_field_holds: rows.iter().all(|r| r.near <= r.near_bound * (1.0 + 1e-9)),
        rows,
    })
}
