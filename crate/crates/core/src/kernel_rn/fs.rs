use super::RadialKernel;
use crate::error::{invalid, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FsReport {
    pub sup: f64,
    /// (|y|, ∫_{|x|>2|y|^{1−θ}} |K(x−y) − K(x)| dx).
    pub profile: Vec<(f64, f64)>,
}

/// sup over the samples of ∫_{|x| > 2|y|^{1−θ}} |K(x−y) − K(x)| dx, for 0 < |y| ≤ 1.
pub fn fefferman_stein_condition(k: &RadialKernel, theta: f64, ys: &[Vec<f64>]) -> Result<FsReport> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(invalid(format!("theta = {theta} must lie in (0, 1)")));
    }
    let grid = k.grid().clone();
    let h = grid.cell_volume();
    let mut profile = Vec::with_capacity(ys.len());
    for y in ys {
        let r: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r == 0.0 {
            return Err(invalid("y = 0 is not an admissible sample"));
        }
        if r > 1.0 {
            return Err(invalid(format!("|y| = {r} > 1 is outside the condition's range")));
        }
        let shifted = k.translated(y)?;
        let cut = 2.0 * r.powf(1.0 - theta);
        let v: f64 = shifted
            .values()
            .iter()
            .zip(k.kernel().values())
            .enumerate()
            .filter(|(i, _)| grid.euclidean_radius(*i) > cut)
            .map(|(_, (a, b))| (a - b).norm())
            .sum::<f64>()
            * h;
        profile.push((r, v));
    }
    Ok(FsReport {
        sup: profile.iter().map(|p| p.1).fold(0.0, f64::max),
        profile,
    })
}

/// y = 2^{−k} along the first axis, k = 1..=count.
pub fn dyadic_shifts(n: usize, count: u32) -> Vec<Vec<f64>> {
    (1..=count)
        .map(|k| {
            let mut y = vec![0.0; n];
            y[0] = 2f64.powi(-(k as i32));
            y
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::UniformGrid;
    use crate::kernel_rn::kernel_of_radial_multiplier;
    use crate::multiplier::MultiplierSpec;
    use crate::window::Band;

    #[test]
    fn zero_kernel_and_triangle_bound() {
        let g = UniformGrid::line(1024, 64.0).unwrap();
        let zero = kernel_of_radial_multiplier(&MultiplierSpec::constant(0.0), 1, Band::upper(8.0), &g).unwrap();
        assert_eq!(fefferman_stein_condition(&zero, 0.5, &dyadic_shifts(1, 4)).unwrap().sup, 0.0);
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let k = kernel_of_radial_multiplier(&m, 1, Band::upper(16.0), &g).unwrap();
        let r = fefferman_stein_condition(&k, 0.5, &dyadic_shifts(1, 6)).unwrap();
        assert!(r.sup <= 2.0 * k.l1() + 1e-12);
    }

    #[test]
    fn bad_samples_rejected() {
        let g = UniformGrid::line(256, 32.0).unwrap();
        let k = kernel_of_radial_multiplier(&MultiplierSpec::constant(1.0), 1, Band::upper(4.0), &g).unwrap();
        assert!(fefferman_stein_condition(&k, 0.5, &[vec![0.0]]).is_err());
        assert!(fefferman_stein_condition(&k, 0.5, &[vec![2.0]]).is_err());
        assert!(fefferman_stein_condition(&k, 1.0, &[vec![0.5]]).is_err());
    }
}
