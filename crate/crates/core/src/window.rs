//! Smooth steps, the dyadic window φ and the cutoffs χ± built from it.

use std::fmt;
use std::sync::Arc;

/// C^∞ step: 0 for t ≤ 0, 1 for t ≥ 1, strictly monotone in between.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

/// χ₊: 0 for λ ≤ 1, 1 for λ ≥ 2.
pub fn chi_plus(lambda: f64) -> f64 {
    if lambda <= 1.0 {
        0.0
    } else {
        smooth_step(lambda.log2())
    }
}

/// χ₋: 1 for λ ≤ 1/2, 0 for λ ≥ 1.
pub fn chi_minus(lambda: f64) -> f64 {
    if lambda <= 0.5 {
        1.0
    } else {
        1.0 - smooth_step(lambda.log2() + 1.0)
    }
}

/// Smooth frequency band: 1 on [2·lo, hi/2], 0 below lo and above hi.
///
/// A bound of `None` leaves that side open.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Band {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Band {
    pub fn new(lo: Option<f64>, hi: Option<f64>) -> Self {
        Band { lo, hi }
    }

    pub fn upper(hi: f64) -> Self {
        Band {
            lo: None,
            hi: Some(hi),
        }
    }

    pub fn factor(&self, lambda: f64) -> f64 {
        let lambda = lambda.abs();
        let mut v = 1.0;
        if let Some(hi) = self.hi {
            if lambda >= hi {
                return 0.0;
            }
            v *= 1.0 - smooth_step((2.0 * lambda / hi).log2());
        }
        if let Some(lo) = self.lo {
            if lambda <= lo {
                return 0.0;
            }
            v *= smooth_step((lambda / lo).log2());
        }
        v
    }
}

type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The window φ of the dyadic decomposition, supported in [1/2, 2].
#[derive(Clone)]
pub struct DyadicWindow {
    name: String,
    profile: Profile,
    partition: bool,
}

impl fmt::Debug for DyadicWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DyadicWindow")
            .field("name", &self.name)
            .field("partition", &self.partition)
            .finish()
    }
}

impl Default for DyadicWindow {
    fn default() -> Self {
        Self::standard()
    }
}

impl DyadicWindow {
    /// φ(λ) = S(log₂λ + 1) − S(log₂λ); the dyadic sum telescopes to exactly 1.
    pub fn standard() -> Self {
        DyadicWindow {
            name: "telescoping-smooth-step".into(),
            profile: Arc::new(|l: f64| {
                let u = l.log2();
                smooth_step(u + 1.0) - smooth_step(u)
            }),
            partition: true,
        }
    }

    /// Inject another window; values outside [1/2, 2] are forced to zero.
    pub fn custom(
        name: impl Into<String>,
        partition: bool,
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        DyadicWindow {
            name: name.into(),
            profile: Arc::new(profile),
            partition,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_partition(&self) -> bool {
        self.partition
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        if (0.5..=2.0).contains(&lambda) {
            (self.profile)(lambda)
        } else {
            0.0
        }
    }

    /// Σ_{j=−J}^{J} φ(2^{−j}λ).
    pub fn partition_sum(&self, lambda: f64, big_j: i32) -> f64 {
        (-big_j..=big_j)
            .map(|j| self.eval(lambda * 2f64.powi(-j)))
            .sum()
    }

    /// Samples on `n` uniform points of [1/4, 4].
    pub fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        let h = 3.75 / (n - 1) as f64;
        (0..n)
            .map(|k| {
                let l = 0.25 + k as f64 * h;
                (l, self.eval(l))
            })
            .collect()
    }

    /// max φ, located by a fine scan of the support.
    pub fn max(&self) -> f64 {
        (0..=6000)
            .map(|k| self.eval(0.5 + 1.5 * k as f64 / 6000.0))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_limits_and_symmetry() {
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(1.5), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        for t in [0.1, 0.3, 0.45] {
            assert!((smooth_step(t) + smooth_step(1.0 - t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cutoffs() {
        assert_eq!(chi_plus(1.0), 0.0);
        assert_eq!(chi_plus(0.3), 0.0);
        assert_eq!(chi_plus(2.0), 1.0);
        assert_eq!(chi_minus(0.5), 1.0);
        assert_eq!(chi_minus(1.0), 0.0);
        assert_eq!(chi_minus(3.0), 0.0);
    }

    #[test]
    fn window_support_and_peak() {
        let w = DyadicWindow::standard();
        assert_eq!(w.eval(0.49), 0.0);
        assert_eq!(w.eval(2.01), 0.0);
        assert_eq!(w.eval(1.0), 1.0);
        assert!((w.max() - 1.0).abs() < 1e-12);
        assert!(w.samples(300).iter().all(|(_, v)| *v >= 0.0));
    }

    #[test]
    fn partition_of_unity() {
        let w = DyadicWindow::standard();
        let big_j = 6;
        let lo = 2f64.powi(-big_j + 1);
        let hi = 2f64.powi(big_j - 1);
        for k in 0..=2000 {
            let l = lo * (hi / lo).powf(k as f64 / 2000.0);
            assert!((w.partition_sum(l, big_j) - 1.0).abs() < 1e-12, "{l}");
        }
    }

    #[test]
    fn band_factor() {
        let b = Band::new(Some(1.0), Some(64.0));
        assert_eq!(b.factor(1.0), 0.0);
        assert_eq!(b.factor(2.0), 1.0);
        assert_eq!(b.factor(32.0), 1.0);
        assert_eq!(b.factor(-32.0), 1.0);
        assert_eq!(b.factor(64.0), 0.0);
        assert!(b.factor(48.0) > 0.0 && b.factor(48.0) < 1.0);
        assert_eq!(Band::default().factor(1e9), 1.0);
    }
}
