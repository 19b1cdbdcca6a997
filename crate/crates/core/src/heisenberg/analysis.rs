use super::group::{HeisenbergPoint, Q};
use super::synthesis::{spectral_cutoff, sublaplacian_kernel, SynthesisConfig};
use crate::error::{invalid, Result};
use crate::grid::{weighted_l2, AmbientNorm, Axis, SampledFunction, UniformGrid};
use crate::multiplier::{dyadic_piece, MultiplierSpec, PieceGrid};
use crate::stats;
use crate::window::DyadicWindow;
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

pub type SpectralFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A named function of √𝓛.
#[derive(Clone)]
pub struct SpectralMember {
    pub label: String,
    pub h: SpectralFn,
}

impl SpectralMember {
    pub fn new(label: impl Into<String>, h: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        SpectralMember {
            label: label.into(),
            h: Arc::new(h),
        }
    }

    pub fn real(label: impl Into<String>, h: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(label, move |u| Complex64::new(h(u), 0.0))
    }
}

/// ∫₀^∞ |h(u)|² u^{Q−1} du by Gauss–Legendre panels up to the spectral cutoff.
pub fn spectral_moment(h: &(dyn Fn(f64) -> Complex64 + Sync), tol: f64) -> Result<f64> {
    let top = spectral_cutoff(h, tol)?.sqrt();
    let gl = gauss_quad::GaussLegendre::new(20).expect("valid degree");
    let panels = 400;
    let w = top / panels as f64;
    Ok((0..panels)
        .map(|i| gl.integrate(i as f64 * w, (i + 1) as f64 * w, |u| h(u).norm_sqr() * u.powi(Q as i32 - 1)))
        .sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct PlancherelRow {
    pub label: String,
    pub kernel_l2_sq: f64,
    pub spectral: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlancherelReport {
    pub rows: Vec<PlancherelRow>,
    /// max/min of the ratios.
    pub spread: f64,
    pub constant: f64,
}

/// Ratios ‖𝒦_h‖₂² / ∫|h(u)|²u^{Q−1}du across a family.
pub fn plancherel_check(family: &[SpectralMember], grid: &UniformGrid, cfg: &SynthesisConfig) -> Result<PlancherelReport> {
    if family.is_empty() {
        return Err(invalid("empty multiplier family"));
    }
    let mut rows = Vec::new();
    for m in family {
        let k = sublaplacian_kernel(m.h.as_ref(), m.label.clone(), grid, cfg)?;
        let l2 = k.l2();
        let spectral = spectral_moment(m.h.as_ref(), cfg.lambda_tol)?;
        rows.push(PlancherelRow {
            label: m.label.clone(),
            kernel_l2_sq: l2 * l2,
            spectral,
            ratio: l2 * l2 / spectral,
        });
    }
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    Ok(PlancherelReport {
        spread: stats::max(&ratios) / stats::min_positive(&ratios),
        constant: stats::median(&ratios),
        rows,
    })
}

/// φ(·/2), φ, φ², e^{−μ²}, μ²e^{−μ²}; the first two are a dilation pair.
pub fn default_plancherel_family() -> Vec<SpectralMember> {
    let w = DyadicWindow::standard();
    let (w1, w2, w3) = (w.clone(), w.clone(), w);
    vec![
        SpectralMember::real("phi(u/2)", move |u| w3.eval(0.5 * u)),
        SpectralMember::real("phi", move |u| w1.eval(u)),
        SpectralMember::real("phi^2", move |u| w2.eval(u).powi(2)),
        SpectralMember::real("exp(-u^2)", |u| (-u * u).exp()),
        SpectralMember::real("u^2 exp(-u^2)", |u| u * u * (-u * u).exp()),
    ]
}

/// The default group grid dilated by δ_r: extents r·8, r·8, r²·16.
pub fn dilated_grid(r: f64) -> UniformGrid {
    UniformGrid::new(vec![
        Axis { n: 128, extent: 8.0 * r },
        Axis { n: 128, extent: 8.0 * r },
        Axis { n: 256, extent: 16.0 * r * r },
    ])
    .expect("valid dilated grid")
}

#[derive(Clone, Debug, Serialize)]
pub struct DyadicScaling {
    pub js: Vec<i32>,
    pub l2_sq: Vec<f64>,
    /// Slope of log₂‖Φ_j‖₂² against j.
    pub slope: f64,
}

/// ‖Φ_j‖₂² for Φ_j the kernel of φ(2^{−j}√𝓛), each on the grid dilated by 2^{−j}.
pub fn dyadic_l2_scaling(js: &[i32], cfg: &SynthesisConfig) -> Result<DyadicScaling> {
    let w = DyadicWindow::standard();
    let mut l2_sq = Vec::new();
    for &j in js {
        let wj = w.clone();
        let s = 2f64.powi(-j);
        let k = sublaplacian_kernel(&move |u: f64| Complex64::new(wj.eval(s * u), 0.0), format!("Phi_{j}"), &dilated_grid(s), cfg)?;
        l2_sq.push(k.l2().powi(2));
    }
    let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
    Ok(DyadicScaling {
        js: js.to_vec(),
        slope: stats::log2_slope(&xs, &l2_sq),
        l2_sq,
    })
}

#[derive(Clone, Debug)]
pub struct HorizontalDerivatives {
    /// X = ∂_x − (y/2)∂_t
    pub x: SampledFunction,
    /// Y = ∂_y + (x/2)∂_t
    pub y: SampledFunction,
    /// max |D_h − D_{2h}|/3 relative to max |D_h| over both fields: the error estimate of the
    /// plain centred difference, an upper bound for the extrapolated values stored here.
    pub richardson_error: f64,
}

fn partial(f: &SampledFunction, axis: usize, step: usize) -> Vec<Complex64> {
    let g = f.grid();
    let n = g.axis(axis).n;
    let h = g.spacing(axis) * step as f64;
    let stride: usize = g.axes()[axis + 1..].iter().map(|a| a.n).product();
    let v = f.values();
    (0..g.len())
        .map(|i| {
            let k = (i / stride) % n;
            if k < step || k + step >= n {
                Complex64::new(0.0, 0.0)
            } else {
                (v[i + step * stride] - v[i - step * stride]) / (2.0 * h)
            }
        })
        .collect()
}

/// Centred differences for X and Y, Richardson-extrapolated as (4D_h − D_{2h})/3; boundary layers are zero.
pub fn horizontal_derivatives(f: &SampledFunction) -> Result<HorizontalDerivatives> {
    let g = f.grid();
    if g.dim() != 3 {
        return Err(invalid("horizontal derivatives need (x, y, t) grids"));
    }
    let build = |step: usize| {
        let (dx, dy, dt) = (partial(f, 0, step), partial(f, 1, step), partial(f, 2, step));
        let mut xs = Vec::with_capacity(g.len());
        let mut ys = Vec::with_capacity(g.len());
        for i in 0..g.len() {
            let c = g.coords(i);
            xs.push(dx[i] - dt[i] * (c[1] / 2.0));
            ys.push(dy[i] + dt[i] * (c[0] / 2.0));
        }
        (xs, ys)
    };
    let (x1, y1) = build(1);
    let (x2, y2) = build(2);
    // compare away from the layers where either stencil was cut off
    let inner = |i: usize| {
        let k = g.unflatten(i);
        (0..3).all(|a| k[a] >= 2 && k[a] + 2 < g.axis(a).n)
    };
    let mut diff = 0.0f64;
    let mut top = 0.0f64;
    for i in (0..g.len()).filter(|&i| inner(i)) {
        diff = diff.max((x1[i] - x2[i]).norm()).max((y1[i] - y2[i]).norm());
        top = top.max(x1[i].norm()).max(y1[i].norm());
    }
    let extrapolate = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (u, v))| if inner(i) { (u * 4.0 - v) / 3.0 } else { *u })
            .collect()
    };
    Ok(HorizontalDerivatives {
        x: SampledFunction::new(g.clone(), extrapolate(&x1, &x2))?,
        y: SampledFunction::new(g.clone(), extrapolate(&y1, &y2))?,
        richardson_error: if top > 0.0 { diff / 3.0 / top } else { 0.0 },
    })
}

/// ‖𝒦(1+|·|^s)‖₂ with the Korányi norm; with `with_derivative`, (‖X𝒦(1+|·|^s)‖₂² + ‖Y𝒦(1+|·|^s)‖₂²)^{1/2}.
pub fn weighted_l2_group(k: &SampledFunction, s: f64, with_derivative: bool) -> Result<f64> {
    if k.grid().dim() != 3 {
        return Err(invalid("group kernels live on (x, y, t) grids"));
    }
    if !with_derivative {
        return Ok(weighted_l2(k, s, AmbientNorm::Koranyi));
    }
    let d = horizontal_derivatives(k)?;
    if d.richardson_error > 5e-2 {
        log::warn!("horizontal derivatives: Richardson error {:.2e}", d.richardson_error);
    }
    let a = weighted_l2(&d.x, s, AmbientNorm::Koranyi);
    let b = weighted_l2(&d.y, s, AmbientNorm::Koranyi);
    Ok((a * a + b * b).sqrt())
}

/// sup over samples of |h(x·y) − h(x)|(1+|x|)^N / |y|, requiring |y| ≤ |x|/10.
pub fn mean_value_check(
    h: &dyn Fn(&HeisenbergPoint) -> f64,
    n_exp: f64,
    samples: &[(HeisenbergPoint, HeisenbergPoint)],
) -> Result<f64> {
    let mut sup = 0.0f64;
    for (x, y) in samples {
        let (nx, ny) = (x.norm(), y.norm());
        if ny > nx / 10.0 * (1.0 + 1e-12) {
            return Err(invalid(format!("sample with |y| = {ny} > |x|/10 = {}", nx / 10.0)));
        }
        if ny == 0.0 {
            continue;
        }
        sup = sup.max((h(&x.mul(y)) - h(x)).abs() * (1.0 + nx).powf(n_exp) / ny);
    }
    Ok(sup)
}

/// Point on the Korányi sphere of radius r with horizontal angle α and latitude β ∈ [−π/2, π/2].
fn sphere_point(r: f64, alpha: f64, beta: f64) -> HeisenbergPoint {
    let rho = beta.cos().max(0.0).sqrt();
    HeisenbergPoint::new(rho * alpha.cos(), rho * alpha.sin(), beta.sin() / 4.0).dilate(r)
}

/// Deterministic (x, y) pairs: |x| ∈ [1/4, 8] on a lattice whose density scales with `density`,
/// |y| ∈ {1, 1/8, 1/64}·|x|/10 over (6·density)² directions.
pub fn mean_value_samples(density: usize) -> Vec<(HeisenbergPoint, HeisenbergPoint)> {
    use std::f64::consts::PI;
    let nr = 8 * density;
    let na = 8 * density;
    let nb = 8 * density + 1;
    let mut out = Vec::new();
    for i in 0..nr {
        let r = 0.25 * 32f64.powf(i as f64 / (nr - 1) as f64);
        for a in 0..na {
            for b in 0..nb {
                let x = sphere_point(r, 2.0 * PI * a as f64 / na as f64, -PI / 2.0 + PI * b as f64 / (nb - 1) as f64);
                for frac in [1.0, 0.125, 0.015625] {
                    let ny = 6 * density;
                    for ya in 0..ny {
                        for yb in 0..ny {
                            let y = sphere_point(
                                r / 10.0 * frac,
                                2.0 * PI * ya as f64 / ny as f64,
                                -PI / 2.0 + PI * (yb as f64 + 0.5) / ny as f64,
                            );
                            out.push((x, y));
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone)]
pub struct KeyLieMember {
    pub label: String,
    pub spec: MultiplierSpec,
    pub j: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyLieRow {
    pub label: String,
    pub j: i32,
    pub l1: f64,
    /// (s, ‖m^j‖_{L²_s}) for each s in the grid.
    pub sobolev: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KeyLieReport {
    pub rows: Vec<KeyLieRow>,
    /// (s, sup over the family of ‖𝒦_{m^j}‖₁ / ‖m^j‖_{L²_s}).
    pub sup_ratio: Vec<(f64, f64)>,
    /// (s, slope of log₂ ratio against j on the oscillating members).
    pub slopes: Vec<(f64, f64)>,
    /// Smallest s whose slope is at most 0.05, if any.
    pub critical_s: Option<f64>,
}

/// m^j of m_{1/2,Q} for j = 1..=4 and e^{iwμ}φ(μ) for w = 1, 2, 4.
pub fn default_key_lie_family() -> Result<Vec<KeyLieMember>> {
    let m = MultiplierSpec::oscillating(0.5, Q as f64)?;
    let mut out: Vec<KeyLieMember> = (1..=4)
        .map(|j| KeyLieMember {
            label: format!("m_(1/2,4)^{j}"),
            spec: m.clone(),
            j,
        })
        .collect();
    for w in [1.0, 2.0, 4.0] {
        out.push(KeyLieMember {
            label: format!("bump_w{w}"),
            spec: MultiplierSpec::custom(format!("exp(i{w}u)"), 0.0, 0.0, move |u| Complex64::from_polar(1.0, w * u))?,
            j: 0,
        });
    }
    Ok(out)
}

/// ‖𝒦_{m^j}‖₁ / ‖m^j‖_{L²_s} on H¹ across a family, for each s; emits data without a verdict.
pub fn key_lie_probe(
    family: &[KeyLieMember],
    s_grid: &[f64],
    grid: &UniformGrid,
    cfg: &SynthesisConfig,
) -> Result<KeyLieReport> {
    if family.is_empty() || s_grid.is_empty() {
        return Err(invalid("empty family or s-grid"));
    }
    let window = DyadicWindow::standard();
    let mut rows = Vec::new();
    for mem in family {
        let piece = dyadic_piece(&mem.spec, &window, mem.j, &PieceGrid::default())?;
        let norms = piece.sobolev_norms(s_grid)?;
        let (spec, w, scale) = (mem.spec.clone(), window.clone(), 2f64.powi(mem.j));
        let h = move |u: f64| {
            let p = w.eval(u);
            if p == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                spec.eval(scale * u) * p
            }
        };
        let k = sublaplacian_kernel(&h, mem.label.clone(), grid, cfg)?;
        rows.push(KeyLieRow {
            label: mem.label.clone(),
            j: mem.j,
            l1: k.l1(),
            sobolev: s_grid.iter().cloned().zip(norms).collect(),
        });
    }
    let ratio = |r: &KeyLieRow, i: usize| r.l1 / r.sobolev[i].1;
    let sup_ratio = s_grid
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, rows.iter().map(|r| ratio(r, i)).fold(0.0, f64::max)))
        .collect();
    let osc: Vec<&KeyLieRow> = rows.iter().filter(|r| r.j != 0).collect();
    let js: Vec<f64> = osc.iter().map(|r| r.j as f64).collect();
    let slopes: Vec<(f64, f64)> = s_grid
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, stats::log2_slope(&js, &osc.iter().map(|r| ratio(r, i)).collect::<Vec<_>>())))
        .collect();
    let critical_s = slopes.iter().find(|(_, sl)| *sl <= 0.05).map(|(s, _)| *s);
    Ok(KeyLieReport {
        rows,
        sup_ratio,
        slopes,
        critical_s,
    })
}

/// (∫f(δ_r p)dp, r^{−Q}∫f(p)dp) by the midpoint rule on `grid`.
pub fn haar_homogeneity(f: &dyn Fn(&HeisenbergPoint) -> f64, r: f64, grid: &UniformGrid) -> (f64, f64) {
    let dv = grid.cell_volume();
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..grid.len() {
        let c = grid.coords(i);
        let p = HeisenbergPoint::new(c[0], c[1], c[2]);
        a += f(&p.dilate(r));
        b += f(&p);
    }
    (a * dv, b * dv * r.powi(-(Q as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_derivative_of_t_squared() {
        let g = UniformGrid::cube(3, 32, 4.0).unwrap();
        let f = SampledFunction::from_real_fn(g.clone(), |c| c[2] * c[2]).unwrap();
        let d = horizontal_derivatives(&f).unwrap();
        let i = g.flatten(&[20, 24, 17]);
        let c = g.coords(i);
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 2.0).abs() < 1e-12);
        assert!((d.x.values()[i].re + 2.0 * c[2]).abs() < 1e-12);
        assert!((d.y.values()[i].re - c[2]).abs() < 1e-12);
    }

    #[test]
    fn weight_zero_is_twice_l2() {
        let g = UniformGrid::cube(3, 16, 3.0).unwrap();
        let f = SampledFunction::from_real_fn(g, |c| (-(c[0] * c[0] + c[1] * c[1] + c[2] * c[2])).exp()).unwrap();
        assert!((weighted_l2_group(&f, 0.0, false).unwrap() - 2.0 * f.l2()).abs() < 1e-12);
    }

    #[test]
    fn identity_shift_gives_zero() {
        let h = |p: &HeisenbergPoint| (-p.x * p.x - p.y * p.y - p.t * p.t).exp();
        let x = HeisenbergPoint::new(1.0, 0.5, 0.2);
        assert_eq!(mean_value_check(&h, 4.0, &[(x, HeisenbergPoint::IDENTITY)]).unwrap(), 0.0);
        assert!(mean_value_check(&h, 4.0, &[(x, HeisenbergPoint::new(1.0, 0.0, 0.0))]).is_err());
    }

    #[test]
    fn sphere_points_have_the_right_norm() {
        for (a, b) in [(0.3, -1.2), (2.0, 0.0), (5.0, 1.5707963267948966)] {
            assert!((sphere_point(2.5, a, b).norm() - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn moment_of_gaussian() {
        // ∫ e^{−2u²} u³ du = 1/8
        let m = spectral_moment(&|u| Complex64::new((-u * u).exp(), 0.0), 1e-13).unwrap();
        assert!((m - 0.125).abs() < 1e-10, "{m}");
    }
}
