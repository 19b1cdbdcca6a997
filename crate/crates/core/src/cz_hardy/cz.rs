use crate::error::{invalid, Result};
use crate::grid::{SampledFunction, UniformGrid};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

/// A selected dyadic cube: `corner` in grid indices, side `2^cells_log2` cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicCube {
    pub corner: Vec<usize>,
    pub cells_log2: u32,
    /// log₂ of the half-side, so the cube sits inside the ball of radius ≈ 2^L about its centre.
    pub level: f64,
    pub average_abs: f64,
}

impl DyadicCube {
    pub fn side_cells(&self) -> usize {
        1 << self.cells_log2
    }

    pub fn contains(&self, ks: &[usize]) -> bool {
        ks.iter().zip(&self.corner).all(|(k, c)| *k >= *c && *k < c + self.side_cells())
    }

    pub fn measure(&self, grid: &UniformGrid) -> f64 {
        (self.side_cells() as f64).powi(grid.dim() as i32) * grid.cell_volume()
    }
}

/// f = g + Σ_B b_B at height α.
#[derive(Clone, Debug)]
pub struct CzDecomposition {
    pub alpha: f64,
    pub cubes: Vec<DyadicCube>,
    pub good: SampledFunction,
    /// b_B as (flat index, value) lists, one per cube.
    pub bad: Vec<Vec<(usize, Complex64)>>,
    f: SampledFunction,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CzInvariants {
    /// max |f − g − Σb| over the grid.
    pub reconstruction_error: f64,
    pub good_sup: f64,
    pub good_bound: f64,
    /// max over cubes of |∫b_B|.
    pub worst_mean: f64,
    /// max over cubes of ‖b_B‖₁ / (2·2ⁿα|B|).
    pub worst_local_l1: f64,
    pub bad_l1: f64,
    pub f_l1: f64,
    pub cube_measure: f64,
    pub measure_bound: f64,
    pub violations: Vec<String>,
}

impl CzInvariants {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_grid(grid: &UniformGrid) -> Result<()> {
    let n0 = grid.axis(0).n;
    if grid.axes().iter().any(|a| a.n != n0) || (0..grid.dim()).any(|i| (grid.spacing(i) - grid.spacing(0)).abs() > 1e-15 * grid.spacing(0)) {
        return Err(invalid("dyadic cubes need a grid with equal axes"));
    }
    Ok(())
}

/// Dyadic stopping time: a cube is selected when the average of |f| over it first exceeds α.
///
/// The grid itself is the child of a virtual parent of measure 2ⁿ|Ω| on which f vanishes, so α must
/// exceed ‖f‖₁/(2ⁿ|Ω|) for every selected cube to have average at most 2ⁿα.
pub fn cz_decompose(f: &SampledFunction, alpha: f64) -> Result<CzDecomposition> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(invalid(format!("height α = {alpha} must be positive")));
    }
    let grid = f.grid();
    check_grid(grid)?;
    let d = grid.dim();
    let n = grid.axis(0).n;
    let depth = n.trailing_zeros();
    let omega = grid.len() as f64 * grid.cell_volume();
    if f.l1() / (2f64.powi(d as i32) * omega) >= alpha {
        return Err(invalid(format!(
            "α = {alpha} is below ‖f‖₁/(2ⁿ|Ω|) = {}; enlarge the grid",
            f.l1() / (2f64.powi(d as i32) * omega)
        )));
    }
    let abs: Vec<f64> = f.values().iter().map(|v| v.norm()).collect();
    let h = grid.spacing(0);
    let mut cubes = Vec::new();
    let mut stack = vec![(vec![0usize; d], depth)];
    while let Some((corner, lg)) = stack.pop() {
        let side = 1usize << lg;
        let cells = cube_cells(grid, &corner, side);
        let avg = cells.iter().map(|&i| abs[i]).sum::<f64>() / cells.len() as f64;
        if avg > alpha {
            cubes.push(DyadicCube {
                corner,
                cells_log2: lg,
                level: (side as f64 * h / 2.0).log2(),
                average_abs: avg,
            });
        } else if lg > 0 {
            let half = side / 2;
            for child in 0..(1usize << d) {
                let c: Vec<usize> = (0..d).map(|a| corner[a] + if child >> a & 1 == 1 { half } else { 0 }).collect();
                stack.push((c, lg - 1));
            }
        }
    }
    cubes.sort_by(|a, b| a.corner.cmp(&b.corner));
    let mut good = f.values().to_vec();
    let mut bad = Vec::with_capacity(cubes.len());
    for cube in &cubes {
        let cells = cube_cells(grid, &cube.corner, cube.side_cells());
        let mean = cells.iter().map(|&i| f.values()[i]).sum::<Complex64>() / cells.len() as f64;
        let b: Vec<(usize, Complex64)> = cells.iter().map(|&i| (i, f.values()[i] - mean)).collect();
        for &i in &cells {
            good[i] = mean;
        }
        bad.push(b);
    }
    Ok(CzDecomposition {
        alpha,
        cubes,
        good: SampledFunction::new(grid.clone(), good)?,
        bad,
        f: f.clone(),
    })
}

/// A random sparse input on the cube [−4, 4)^d with `points` cells per axis, and a height above the
/// virtual-parent threshold: spikes, plateaus and a smooth background of mixed sign.
pub fn random_cz_input(rng: &mut impl Rng, dim: usize, points: usize) -> Result<(SampledFunction, f64)> {
    let grid = UniformGrid::cube(dim, points, 4.0)?;
    let mut vals = vec![Complex64::new(0.0, 0.0); grid.len()];
    for _ in 0..rng.gen_range(1..=12) {
        let i = rng.gen_range(0..grid.len());
        vals[i] += Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-5.0..5.0));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let c = grid.coords(rng.gen_range(0..grid.len()));
        let (r, a) = (rng.gen_range(0.05..1.0), rng.gen_range(-8.0..8.0));
        for (i, v) in vals.iter_mut().enumerate() {
            let x = grid.coords(i);
            if (0..dim).all(|k| (x[k] - c[k]).abs() < r) {
                *v += a;
            }
        }
    }
    let bg = rng.gen_range(0.0..0.5);
    for (i, v) in vals.iter_mut().enumerate() {
        let x = grid.coords(i);
        *v += bg * (3.0 * x[0]).sin() * (-x[..dim].iter().map(|t| t * t).sum::<f64>()).exp();
    }
    let f = SampledFunction::new(grid, vals)?;
    let omega = f.grid().len() as f64 * f.grid().cell_volume();
    let floor = f.l1() / (2f64.powi(dim as i32) * omega);
    let top = f.linf().max(floor * 4.0);
    let alpha = floor * (top / floor).powf(rng.gen_range(0.02..1.0));
    Ok((f, alpha))
}

fn cube_cells(grid: &UniformGrid, corner: &[usize], side: usize) -> Vec<usize> {
    let d = grid.dim();
    let total = side.pow(d as u32);
    (0..total)
        .map(|mut r| {
            let mut ks = [0usize; 3];
            for a in (0..d).rev() {
                ks[a] = corner[a] + r % side;
                r /= side;
            }
            grid.flatten(&ks[..d])
        })
        .collect()
}

impl CzDecomposition {
    pub fn input(&self) -> &SampledFunction {
        &self.f
    }

    /// All five structural properties, each with its own tolerance for rounding.
    pub fn check(&self) -> CzInvariants {
        let g = self.f.grid();
        let dv = g.cell_volume();
        let two_n = 2f64.powi(g.dim() as i32);
        let scale = self.f.linf().max(f64::MIN_POSITIVE);
        let mut inv = CzInvariants {
            f_l1: self.f.l1(),
            good_sup: self.good.linf(),
            good_bound: two_n * self.alpha,
            measure_bound: self.f.l1() / self.alpha,
            ..Default::default()
        };
        let mut recon = self.good.values().to_vec();
        for (cube, b) in self.cubes.iter().zip(&self.bad) {
            let measure = cube.measure(g);
            let mut mean = Complex64::new(0.0, 0.0);
            let mut l1 = 0.0;
            for &(i, v) in b {
                recon[i] += v;
                mean += v;
                l1 += v.norm();
                let ks = g.unflatten(i);
                if !cube.contains(&ks[..g.dim()]) {
                    inv.violations.push(format!("b_B escapes its cube at index {i}"));
                }
            }
            let mean_abs = mean.norm() * dv;
            let l1 = l1 * dv;
            inv.worst_mean = inv.worst_mean.max(mean_abs);
            if mean_abs > 1e-12 * (l1 + scale * measure) {
                inv.violations.push(format!("∫b_B = {mean_abs:e} on cube {:?}", cube.corner));
            }
            let local = l1 / (2.0 * two_n * self.alpha * measure);
            inv.worst_local_l1 = inv.worst_local_l1.max(local);
            if local > 1.0 + 1e-12 {
                inv.violations.push(format!("‖b_B‖₁ exceeds 2·2ⁿα|B| on cube {:?}", cube.corner));
            }
            inv.bad_l1 += l1;
            inv.cube_measure += measure;
        }
        inv.reconstruction_error = recon
            .iter()
            .zip(self.f.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if inv.reconstruction_error > 4.0 * f64::EPSILON * scale {
            inv.violations.push(format!("f ≠ g + Σb: error {:e}", inv.reconstruction_error));
        }
        if inv.good_sup > inv.good_bound * (1.0 + 1e-12) {
            inv.violations.push(format!("‖g‖_∞ = {} > 2ⁿα = {}", inv.good_sup, inv.good_bound));
        }
        if inv.bad_l1 > 2.0 * inv.f_l1 * (1.0 + 1e-12) {
            inv.violations.push(format!("Σ‖b_B‖₁ = {} > 2‖f‖₁", inv.bad_l1));
        }
        if inv.cube_measure > inv.measure_bound * (1.0 + 1e-12) {
            inv.violations.push(format!("Σ|B| = {} > ‖f‖₁/α = {}", inv.cube_measure, inv.measure_bound));
        }
        inv
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_height_selects_nothing() {
        let g = UniformGrid::line(64, 4.0).unwrap();
        let f = SampledFunction::from_real_fn(g, |x| 0.5 * (-x[0] * x[0]).exp()).unwrap();
        let cz = cz_decompose(&f, 1.0).unwrap();
        assert!(cz.cubes.is_empty());
        assert_eq!(cz.good, f);
        assert!(cz.check().holds());
    }

    #[test]
    fn constant_block_is_its_own_cube() {
        // 2α on [0,1), a dyadic-aligned block of the grid
        let g = UniformGrid::line(64, 4.0).unwrap();
        let alpha = 1.5;
        let f = SampledFunction::from_real_fn(g, |x| if (0.0..1.0).contains(&x[0]) { 2.0 * alpha } else { 0.0 }).unwrap();
        let cz = cz_decompose(&f, alpha).unwrap();
        assert_eq!(cz.cubes.len(), 1);
        assert_eq!(cz.cubes[0].corner, vec![32]);
        assert_eq!(cz.cubes[0].side_cells(), 8);
        assert_eq!(cz.good, f);
        assert!(cz.bad[0].iter().all(|(_, v)| v.norm() == 0.0));
    }

    #[test]
    fn rejects_bad_heights() {
        let g = UniformGrid::line(16, 1.0).unwrap();
        let f = SampledFunction::from_real_fn(g, |_| 1.0).unwrap();
        assert!(cz_decompose(&f, 0.0).is_err());
        assert!(cz_decompose(&f, 0.4).is_err());
        assert!(cz_decompose(&f, 0.6).is_ok());
    }
}
