use super::MultiplierSpec;
use crate::error::{Error, Result};
use crate::grid::{SampledFunction, SobolevProfile, UniformGrid};
use crate::window::DyadicWindow;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Mutex;

/// Resolution of the ℝ¹ grid [−4, 4) on which pieces are sampled and zero-extended.
///
/// With `adaptive`, each piece gets the smallest power-of-two density (at least `min`) for which
/// its largest instantaneous frequency stays below half the Nyquist frequency.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceGrid {
    pub min_points_per_unit: usize,
    pub max_points_per_unit: usize,
    pub adaptive: bool,
}

impl Default for PieceGrid {
    fn default() -> Self {
        PieceGrid {
            min_points_per_unit: 1 << 10,
            max_points_per_unit: 1 << 19,
            adaptive: true,
        }
    }
}

impl PieceGrid {
    pub fn fixed(points_per_unit: usize) -> Self {
        PieceGrid {
            min_points_per_unit: points_per_unit,
            max_points_per_unit: points_per_unit,
            adaptive: false,
        }
    }

    /// Largest |d/dλ arg m(2^jλ)| over λ ∈ [1/2, 2].
    pub fn piece_frequency(spec: &MultiplierSpec, j: i32) -> f64 {
        let scale = 2f64.powi(j);
        spec.phase_derivative_bound(0.5 * scale, 2.0 * scale)
            .map_or(0.0, |b| b * scale)
    }

    pub fn resolve(&self, spec: &MultiplierSpec, j: i32) -> Result<usize> {
        let ppu0 = self.min_points_per_unit;
        if !ppu0.is_power_of_two() || ppu0 < 128 {
            return Err(crate::error::invalid(format!(
                "points per unit {ppu0} must be a power of two ≥ 128"
            )));
        }
        let freq = Self::piece_frequency(spec, j);
        let needed = (2.0 * freq / PI).ceil().max(1.0) as usize;
        let ppu = if self.adaptive {
            ppu0.max(needed.next_power_of_two())
        } else {
            ppu0
        };
        let limit = 0.5 * PI * ppu.min(self.max_points_per_unit) as f64;
        if freq > limit || ppu > self.max_points_per_unit {
            return Err(Error::Resolution {
                what: format!("instantaneous frequency of piece j = {j}"),
                value: freq,
                limit,
            });
        }
        Ok(ppu)
    }
}

/// m^j(λ) = m(2^jλ)φ(λ) sampled on [−4, 4) with its norms.
#[derive(Debug)]
pub struct DyadicPiece {
    j: i32,
    points_per_unit: usize,
    samples: SampledFunction,
    sup: f64,
    l2: f64,
    sobolev: Mutex<Vec<(f64, f64)>>,
}

pub fn dyadic_piece(
    spec: &MultiplierSpec,
    window: &DyadicWindow,
    j: i32,
    grid: &PieceGrid,
) -> Result<DyadicPiece> {
    let ppu = grid.resolve(spec, j)?;
    let g = UniformGrid::line(8 * ppu, 4.0)?;
    let scale = 2f64.powi(j);
    let axis = g.axis(0);
    let mut values = vec![Complex64::new(0.0, 0.0); g.len()];
    let lo = axis.center() + ppu / 2;
    let hi = axis.center() + 2 * ppu;
    for (k, v) in values.iter_mut().enumerate().take(hi + 1).skip(lo) {
        let lambda = axis.point(k);
        let w = window.eval(lambda);
        if w == 0.0 {
            continue;
        }
        let m = spec.eval(scale * lambda);
        if !(m.re.is_finite() && m.im.is_finite()) {
            return Err(Error::NonFinite { j, lambda });
        }
        *v = m * w;
    }
    let samples = SampledFunction::new(g, values)?.with_support_radius(2.0)?;
    let sup = samples.linf();
    let l2 = samples.l2();
    Ok(DyadicPiece {
        j,
        points_per_unit: ppu,
        samples,
        sup,
        l2,
        sobolev: Mutex::new(Vec::new()),
    })
}

impl DyadicPiece {
    pub fn j(&self) -> i32 {
        self.j
    }

    pub fn points_per_unit(&self) -> usize {
        self.points_per_unit
    }

    pub fn samples(&self) -> &SampledFunction {
        &self.samples
    }

    /// ‖m^j‖_∞ over the grid.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn sobolev_norm(&self, s: f64) -> Result<f64> {
        Ok(self.sobolev_norms(&[s])?[0])
    }

    /// Norms for several exponents from a single transform; each value is cached once computed.
    pub fn sobolev_norms(&self, exponents: &[f64]) -> Result<Vec<f64>> {
        let mut cache = self.sobolev.lock().expect("norm cache poisoned");
        let lookup = |c: &Vec<(f64, f64)>, s: f64| c.iter().find(|e| e.0 == s).map(|e| e.1);
        if exponents.iter().any(|&s| lookup(&cache, s).is_none()) {
            let profile = SobolevProfile::new(&self.samples)?;
            for &s in exponents {
                if s < 0.0 {
                    return Err(crate::error::invalid(format!("Sobolev exponent {s} < 0")));
                }
                if lookup(&cache, s).is_none() {
                    cache.push((s, profile.norm(s)));
                }
            }
        }
        Ok(exponents.iter().map(|&s| lookup(&cache, s).unwrap()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_quad::GaussLegendre;

    fn w() -> DyadicWindow {
        DyadicWindow::standard()
    }

    #[test]
    fn identity_multiplier_gives_window() {
        let one = MultiplierSpec::constant(1.0);
        for j in [-5, 0, 7] {
            let p = dyadic_piece(&one, &w(), j, &PieceGrid::default()).unwrap();
            assert!((p.sup() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unimodular_factor_keeps_sup() {
        for y in [0.5, 3.0, 40.0] {
            let m = MultiplierSpec::modulated(MultiplierSpec::constant(1.0), y).unwrap();
            let p = dyadic_piece(&m, &w(), 3, &PieceGrid::default()).unwrap();
            assert!((p.sup() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_matches_dense_oracle() {
        // 2^{−2}·max λ^{−1/4}φ(λ) from a dense scan independent of the piece grid
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let p = dyadic_piece(&m, &w(), 8, &PieceGrid::default()).unwrap();
        let oracle = (0..=200_000)
            .map(|k| {
                let l = 0.5 + 1.5 * k as f64 / 200_000.0;
                0.25 * l.powf(-0.25) * w().eval(l)
            })
            .fold(0.0, f64::max);
        assert!((p.sup() - oracle).abs() / oracle < 0.01);
    }

    #[test]
    fn l2_bounded_by_sup() {
        let m = MultiplierSpec::oscillating(2.0, 0.5).unwrap();
        for j in 1..5 {
            let p = dyadic_piece(&m, &w(), j, &PieceGrid::default()).unwrap();
            assert!(p.l2() <= p.sup() * 1.5f64.sqrt() + 1e-12);
            assert!(p.samples().effective_support(0.0) <= 2.0);
        }
    }

    #[test]
    fn sobolev_one_matches_quadrature() {
        // oracle: ∫|m^j|² + |(m^j)′|² with the analytic derivative of the phase
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let j = 6;
        let p = dyadic_piece(&m, &w(), j, &PieceGrid::default()).unwrap();
        let f = |l: f64| m.eval(2f64.powi(j) * l) * w().eval(l);
        let gl = GaussLegendre::new(30).unwrap();
        let mut acc = 0.0;
        for q in 0..600 {
            let a = 0.5 + 1.5 * q as f64 / 600.0;
            let b = a + 1.5 / 600.0;
            acc += gl.integrate(a, b, |l| {
                let e = 1e-6;
                let d = (f(l + e) - f(l - e)) / (2.0 * e);
                f(l).norm_sqr() + d.norm_sqr()
            });
        }
        let got = p.sobolev_norm(1.0).unwrap();
        assert!((got - acc.sqrt()).abs() / acc.sqrt() < 1e-5, "{got} {}", acc.sqrt());
    }

    #[test]
    fn cache_and_batch_agree() {
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let p = dyadic_piece(&m, &w(), 4, &PieceGrid::default()).unwrap();
        let batch = p.sobolev_norms(&[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(p.sobolev_norm(1.0).unwrap(), batch[1]);
        assert!(batch[0] <= batch[1] && batch[1] <= batch[2]);
    }

    #[test]
    fn resolution_is_enforced() {
        let m = MultiplierSpec::oscillating(2.0, 0.0).unwrap();
        assert!(dyadic_piece(&m, &w(), 12, &PieceGrid::fixed(1024)).is_err());
        assert!(dyadic_piece(&m, &w(), 4, &PieceGrid::fixed(1024)).is_ok());
        let p = dyadic_piece(&m, &w(), 8, &PieceGrid::default()).unwrap();
        assert!(p.points_per_unit() > 1024);
    }

    #[test]
    fn non_finite_evaluator_reports_location() {
        let m = MultiplierSpec::custom("bad", 0.0, 0.0, |l| {
            if l > 1.5 {
                Complex64::new(f64::NAN, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .unwrap();
        match dyadic_piece(&m, &w(), 0, &PieceGrid::default()) {
            Err(Error::NonFinite { j, lambda }) => assert!(j == 0 && lambda > 1.5),
            other => panic!("{other:?}"),
        }
    }
}
