use crate::error::{invalid, Result};
use crate::grid::{SampledFunction, UniformGrid};
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

/// Radii 2^k·h for the dyadic ladder, up to the diameter of the grid.
fn radii(grid: &UniformGrid) -> Vec<f64> {
    let h = (0..grid.dim()).map(|i| grid.spacing(i)).fold(f64::INFINITY, f64::min);
    let diam = 2.0 * (grid.dim() as f64).sqrt() * grid.axes().iter().map(|a| a.extent).fold(0.0, f64::max);
    let mut r = h;
    let mut out = Vec::new();
    while r <= 2.0 * diam {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// Centred Hardy–Littlewood maximal function over dyadic radii.
///
/// Each average divides by the number of lattice points in the ball, so `Mf ≤ sup|f|` holds exactly.
pub fn hl_maximal(f: &SampledFunction) -> Result<SampledFunction> {
    let g = f.grid();
    let abs: Vec<f64> = f.values().iter().map(|v| v.norm()).collect();
    let rs = radii(g);
    let out = if g.dim() == 1 {
        maximal_line(&abs, g.spacing(0), &rs)
    } else {
        maximal_fft(&abs, g, &rs)
    };
    SampledFunction::new(g.clone(), out.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

fn maximal_line(a: &[f64], h: f64, rs: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + a[i];
    }
    (0..n)
        .map(|i| {
            rs.iter()
                .map(|&r| {
                    let m = (r / h + 1e-9).floor() as usize;
                    let lo = i.saturating_sub(m);
                    let hi = (i + m + 1).min(n);
                    (prefix[hi] - prefix[lo]) / (2 * m + 1) as f64
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

fn fft_nd(data: &mut [Complex64], dims: &[usize], inverse: bool) {
    let mut planner = FftPlanner::new();
    for ax in 0..dims.len() {
        let n = dims[ax];
        let plan = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
        let inner: usize = dims[ax + 1..].iter().product();
        let outer = data.len() / (n * inner);
        let mut lane = vec![Complex64::new(0.0, 0.0); n];
        for o in 0..outer {
            for i in 0..inner {
                let base = o * n * inner + i;
                for k in 0..n {
                    lane[k] = data[base + k * inner];
                }
                plan.process(&mut lane);
                for k in 0..n {
                    data[base + k * inner] = lane[k];
                }
            }
        }
    }
}

// zero-padded circular convolution with ball indicators, one per radius
fn maximal_fft(a: &[f64], g: &UniformGrid, rs: &[f64]) -> Vec<f64> {
    let d = g.dim();
    let dims: Vec<usize> = g.axes().iter().map(|ax| 2 * ax.n).collect();
    let total: usize = dims.iter().product();
    let flat = |ks: &[usize]| ks.iter().zip(&dims).fold(0, |acc, (k, n)| acc * n + k);
    let mut fa = vec![Complex64::new(0.0, 0.0); total];
    for (i, v) in a.iter().enumerate() {
        let ks = g.unflatten(i);
        fa[flat(&ks[..d])] = Complex64::new(*v, 0.0);
    }
    fft_nd(&mut fa, &dims, false);
    let mut best = vec![0.0f64; a.len()];
    for &r in rs {
        let mut ball = vec![Complex64::new(0.0, 0.0); total];
        let mut count = 0usize;
        let mut idx = vec![0usize; d];
        for lin in 0..total {
            let mut rem = lin;
            for ax in (0..d).rev() {
                idx[ax] = rem % dims[ax];
                rem /= dims[ax];
            }
            let dist2: f64 = (0..d)
                .map(|ax| {
                    let k = idx[ax] as i64;
                    let n = dims[ax] as i64;
                    let off = if k > n / 2 { k - n } else { k };
                    (off as f64 * g.spacing(ax)).powi(2)
                })
                .sum();
            if dist2 <= r * r * (1.0 + 1e-12) {
                ball[lin] = Complex64::new(1.0, 0.0);
                count += 1;
            }
        }
        fft_nd(&mut ball, &dims, false);
        for (b, v) in ball.iter_mut().zip(&fa) {
            *b *= v;
        }
        fft_nd(&mut ball, &dims, true);
        let norm = 1.0 / (total as f64 * count as f64);
        for (i, m) in best.iter_mut().enumerate() {
            let ks = g.unflatten(i);
            *m = m.max(ball[flat(&ks[..d])].re * norm);
        }
    }
    best
}

/// Indicator of the ball B(center, r) on `grid`.
pub fn ball_indicator(grid: &UniformGrid, center: &[f64], r: f64) -> Result<SampledFunction> {
    if center.len() != grid.dim() || r <= 0.0 {
        return Err(invalid("ball centre has the wrong dimension or the radius is not positive"));
    }
    SampledFunction::from_real_fn(grid.clone(), |x| {
        let d2: f64 = x.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum();
        if d2 <= r * r {
            1.0
        } else {
            0.0
        }
    })
}

/// Range of M(χ_B)(x)·(1 + |x − x_B|/r_B)^n over the grid.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CharComparison {
    pub lower: f64,
    pub upper: f64,
}

pub fn maximal_char_comparison(grid: &UniformGrid, center: &[f64], r: f64) -> Result<CharComparison> {
    let chi = ball_indicator(grid, center, r)?;
    let m = hl_maximal(&chi)?;
    let n = grid.dim() as i32;
    let (mut lower, mut upper) = (f64::INFINITY, 0.0f64);
    for (i, v) in m.values().iter().enumerate() {
        let x = grid.coords(i);
        let dist: f64 = center.iter().enumerate().map(|(a, c)| (x[a] - c).powi(2)).sum::<f64>().sqrt();
        let w = v.re * (1.0 + dist / r).powi(n);
        lower = lower.min(w);
        upper = upper.max(w);
    }
    Ok(CharComparison { lower, upper })
}

/// ‖(Σ (Mχ_i)²)^{1/2}‖₂ / ‖(Σ χ_i²)^{1/2}‖₂ for a family of balls.
pub fn fefferman_stein_vector(grid: &UniformGrid, balls: &[(Vec<f64>, f64)]) -> Result<f64> {
    if balls.is_empty() {
        return Err(invalid("empty ball family"));
    }
    let mut num = vec![0.0; grid.len()];
    let mut den = vec![0.0; grid.len()];
    for (c, r) in balls {
        let chi = ball_indicator(grid, c, *r)?;
        let m = hl_maximal(&chi)?;
        for i in 0..grid.len() {
            num[i] += m.values()[i].re.powi(2);
            den[i] += chi.values()[i].re.powi(2);
        }
    }
    let a: f64 = num.iter().sum();
    let b: f64 = den.iter().sum();
    if b == 0.0 {
        return Err(invalid("balls contain no grid points"));
    }
    Ok((a / b).sqrt())
}
