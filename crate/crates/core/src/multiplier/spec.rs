use crate::error::{invalid, Error, Result};
use crate::window::{chi_minus, chi_plus};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Low- or high-frequency cutoff attached to a multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cutoff {
    /// χ₊: vanishes for λ ≤ 1.
    ChiPlus,
    /// χ₋: vanishes for λ ≥ 1.
    ChiMinus,
    None,
}

impl Cutoff {
    /// χ₊ for θ > 0, χ₋ for θ < 0, none for θ = 0.
    pub fn auto(theta: f64) -> Cutoff {
        if theta > 0.0 {
            Cutoff::ChiPlus
        } else if theta < 0.0 {
            Cutoff::ChiMinus
        } else {
            Cutoff::None
        }
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        match self {
            Cutoff::ChiPlus => chi_plus(lambda),
            Cutoff::ChiMinus => chi_minus(lambda),
            Cutoff::None => 1.0,
        }
    }
}

pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum MultiplierKind {
    /// e^{iλ^θ} λ^{−θβ/2}.
    Oscillating { theta: f64, beta: f64 },
    /// The model multiplier of e^{i|x|^{−a}}|x|^{−b} on ℝⁿ, evaluated as m_{θ,β} with derived θ, β.
    HardyStrong { a: f64, b: f64, n: u32 },
    /// λ^{iy}·base.
    Modulated { base: Box<MultiplierSpec>, y: f64 },
    /// λ^{(θ/2)(β − (dim+δ)z)}·base.
    AnalyticFamily {
        base: Box<MultiplierSpec>,
        delta: f64,
        z: Complex64,
        dim: f64,
    },
    Custom {
        label: String,
        evaluator: Evaluator,
        theta: f64,
        beta: f64,
    },
}

/// A spectral multiplier on (0, ∞) with its oscillation and decay exponents.
#[derive(Clone)]
pub struct MultiplierSpec {
    kind: MultiplierKind,
    cutoff: Cutoff,
}

impl fmt::Debug for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// n(2+a)/2: the strongly singular multiplier is bounded iff b does not exceed it.
pub fn boundedness_threshold(a: f64, n: u32) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid(format!("a = {a} must be positive")));
    }
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(n as f64 * (2.0 + a) / 2.0)
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(invalid(format!("theta = {theta}")));
    }
    if theta == 1.0 {
        return Err(Error::WaveCase);
    }
    Ok(())
}

impl MultiplierSpec {
    pub fn oscillating(theta: f64, beta: f64) -> Result<Self> {
        check_theta(theta)?;
        if !beta.is_finite() {
            return Err(invalid(format!("beta = {beta}")));
        }
        Ok(MultiplierSpec {
            kind: MultiplierKind::Oscillating { theta, beta },
            cutoff: Cutoff::auto(theta),
        })
    }

    pub fn hardy_strong(a: f64, b: f64, n: u32) -> Result<Self> {
        boundedness_threshold(a, n)?;
        if !b.is_finite() {
            return Err(invalid(format!("b = {b}")));
        }
        let theta = a / (1.0 + a);
        Ok(MultiplierSpec {
            kind: MultiplierKind::HardyStrong { a, b, n },
            cutoff: Cutoff::auto(theta),
        })
    }

    pub fn modulated(base: MultiplierSpec, y: f64) -> Result<Self> {
        if !y.is_finite() {
            return Err(invalid(format!("y = {y}")));
        }
        let cutoff = base.cutoff;
        Ok(MultiplierSpec {
            kind: MultiplierKind::Modulated {
                base: Box::new(base),
                y,
            },
            cutoff,
        })
    }

    pub fn analytic_family(base: MultiplierSpec, delta: f64, z: Complex64, dim: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(invalid(format!("delta = {delta} must be positive")));
        }
        if !(0.0..=1.0).contains(&z.re) || !z.im.is_finite() {
            return Err(invalid(format!("Re z = {} must lie in [0, 1]", z.re)));
        }
        if !(dim > 0.0) {
            return Err(invalid(format!("dim = {dim} must be positive")));
        }
        let cutoff = base.cutoff;
        Ok(MultiplierSpec {
            kind: MultiplierKind::AnalyticFamily {
                base: Box::new(base),
                delta,
                z,
                dim,
            },
            cutoff,
        })
    }

    pub fn custom(
        label: impl Into<String>,
        theta: f64,
        beta: f64,
        evaluator: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_theta(theta)?;
        Ok(MultiplierSpec {
            kind: MultiplierKind::Custom {
                label: label.into(),
                evaluator: Arc::new(evaluator),
                theta,
                beta,
            },
            cutoff: Cutoff::auto(theta),
        })
    }

    /// m ≡ c, declared with θ = β = 0.
    pub fn constant(c: f64) -> Self {
        Self::custom(format!("constant({c})"), 0.0, 0.0, move |_| Complex64::new(c, 0.0))
            .expect("θ = 0 is admissible")
    }

    /// Override the automatic cutoff; on wrappers the override reaches the innermost multiplier.
    pub fn with_cutoff(mut self, cutoff: Cutoff) -> Self {
        self.cutoff = cutoff;
        match &mut self.kind {
            MultiplierKind::Modulated { base, .. } | MultiplierKind::AnalyticFamily { base, .. } => {
                let inner = std::mem::replace(base.as_mut(), MultiplierSpec::constant(0.0));
                **base = inner.with_cutoff(cutoff);
            }
            _ => {}
        }
        self
    }

    pub fn kind(&self) -> &MultiplierKind {
        &self.kind
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    /// Declared or derived (θ, β).
    pub fn theta_beta(&self) -> (f64, f64) {
        match &self.kind {
            MultiplierKind::Oscillating { theta, beta } => (*theta, *beta),
            MultiplierKind::HardyStrong { a, b, n } => {
                let n = *n as f64;
                (a / (1.0 + a), ((2.0 + a) * n - 2.0 * b) / a)
            }
            MultiplierKind::Modulated { base, .. } | MultiplierKind::AnalyticFamily { base, .. } => {
                base.theta_beta()
            }
            MultiplierKind::Custom { theta, beta, .. } => (*theta, *beta),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta_beta().0
    }

    pub fn beta(&self) -> f64 {
        self.theta_beta().1
    }

    /// m(λ) for λ > 0.
    pub fn eval(&self, lambda: f64) -> Complex64 {
        debug_assert!(lambda > 0.0);
        match &self.kind {
            MultiplierKind::Oscillating { .. } | MultiplierKind::HardyStrong { .. } => {
                let c = self.cutoff.eval(lambda);
                if c == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let (theta, beta) = self.theta_beta();
                let amp = c * lambda.powf(-theta * beta / 2.0);
                Complex64::from_polar(amp, lambda.powf(theta))
            }
            MultiplierKind::Modulated { base, y } => {
                Complex64::from_polar(1.0, y * lambda.ln()) * base.eval(lambda)
            }
            MultiplierKind::AnalyticFamily { .. } => {
                let w = self.analytic_exponent();
                (w * lambda.ln()).exp() * self.analytic_base().eval(lambda)
            }
            MultiplierKind::Custom { evaluator, .. } => {
                let c = self.cutoff.eval(lambda);
                if c == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                evaluator(lambda) * c
            }
        }
    }

    /// Value used at the frequency origin, where λ^θ and λ^{iy} have no limit.
    ///
    /// Convention: the constant value when the multiplier is λ-independent near 0, else 0.
    pub fn eval_at_origin(&self) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match &self.kind {
            MultiplierKind::Oscillating { .. } | MultiplierKind::HardyStrong { .. } => {
                let (theta, _) = self.theta_beta();
                if theta == 0.0 && self.cutoff != Cutoff::ChiPlus {
                    Complex64::from_polar(1.0, 1.0)
                } else {
                    zero
                }
            }
            MultiplierKind::Modulated { base, y } => {
                if *y == 0.0 {
                    base.eval_at_origin()
                } else {
                    zero
                }
            }
            MultiplierKind::AnalyticFamily { base, .. } => {
                if self.analytic_exponent() == zero {
                    base.eval_at_origin()
                } else {
                    zero
                }
            }
            MultiplierKind::Custom { evaluator, .. } => {
                if self.cutoff == Cutoff::ChiPlus {
                    return zero;
                }
                let v = evaluator(0.0);
                if v.re.is_finite() && v.im.is_finite() {
                    v
                } else {
                    zero
                }
            }
        }
    }

    fn analytic_base(&self) -> &MultiplierSpec {
        match &self.kind {
            MultiplierKind::AnalyticFamily { base, .. } => base,
            _ => unreachable!(),
        }
    }

    fn analytic_exponent(&self) -> Complex64 {
        match &self.kind {
            MultiplierKind::AnalyticFamily { base, delta, z, dim } => {
                let (theta, beta) = base.theta_beta();
                (Complex64::new(beta, 0.0) - z * (dim + delta)) * (theta / 2.0)
            }
            _ => unreachable!(),
        }
    }

    /// Upper bound for |d/dλ arg m| on [a, b] ⊂ (0, ∞); `None` for opaque evaluators.
    pub fn phase_derivative_bound(&self, a: f64, b: f64) -> Option<f64> {
        let at_ends = |f: &dyn Fn(f64) -> f64| f(a).max(f(b));
        match &self.kind {
            MultiplierKind::Oscillating { .. } | MultiplierKind::HardyStrong { .. } => {
                let theta = self.theta();
                Some(at_ends(&|l: f64| theta.abs() * l.powf(theta - 1.0)))
            }
            MultiplierKind::Modulated { base, y } => {
                Some(base.phase_derivative_bound(a, b)? + y.abs() / a)
            }
            MultiplierKind::AnalyticFamily { base, .. } => {
                Some(base.phase_derivative_bound(a, b)? + self.analytic_exponent().im.abs() / a)
            }
            MultiplierKind::Custom { theta, .. } => {
                if *theta == 0.0 {
                    None
                } else {
                    Some(at_ends(&|l: f64| theta.abs() * l.powf(theta - 1.0)))
                }
            }
        }
    }

    pub fn is_serializable(&self) -> bool {
        self.to_doc().is_some()
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            MultiplierKind::Oscillating { theta, beta } => format!("m[{theta},{beta}]"),
            MultiplierKind::HardyStrong { a, b, n } => format!("hardy_strong[a={a},b={b},n={n}]"),
            MultiplierKind::Modulated { base, y } => format!("lambda^(i{y})*{}", base.describe()),
            MultiplierKind::AnalyticFamily { base, delta, z, dim } => format!(
                "analytic[delta={delta},z={}{:+}i,dim={dim}]*{}",
                z.re,
                z.im,
                base.describe()
            ),
            MultiplierKind::Custom { label, .. } => label.clone(),
        }
    }

    pub fn to_doc(&self) -> Option<MultiplierDoc> {
        let cutoff = CutoffDoc::from_spec(self.cutoff, self.theta());
        Some(match &self.kind {
            MultiplierKind::Oscillating { theta, beta } => MultiplierDoc::Oscillating {
                theta: *theta,
                beta: *beta,
                cutoff,
            },
            MultiplierKind::HardyStrong { a, b, n } => MultiplierDoc::HardyStrong {
                a: *a,
                b: *b,
                n: *n,
                cutoff,
            },
            MultiplierKind::Modulated { base, y } => MultiplierDoc::Modulated {
                base: Box::new(base.to_doc()?),
                y: *y,
            },
            MultiplierKind::AnalyticFamily { base, delta, z, dim } => MultiplierDoc::AnalyticFamily {
                base: Box::new(base.to_doc()?),
                delta: *delta,
                z: [z.re, z.im],
                dim: *dim,
            },
            MultiplierKind::Custom { label, .. } => {
                let c = label.strip_prefix("constant(")?.strip_suffix(')')?.parse().ok()?;
                MultiplierDoc::Constant { value: c }
            }
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = self
            .to_doc()
            .ok_or_else(|| invalid("custom evaluators cannot be serialised"))?;
        serde_json::to_string(&doc).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MultiplierDoc =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        doc.build()
    }
}

/// `"auto"` or an explicit cutoff.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffDoc {
    #[default]
    Auto,
    ChiPlus,
    ChiMinus,
    None,
}

impl CutoffDoc {
    fn from_spec(c: Cutoff, theta: f64) -> Self {
        if c == Cutoff::auto(theta) {
            return CutoffDoc::Auto;
        }
        match c {
            Cutoff::ChiPlus => CutoffDoc::ChiPlus,
            Cutoff::ChiMinus => CutoffDoc::ChiMinus,
            Cutoff::None => CutoffDoc::None,
        }
    }

    fn resolve(self) -> Option<Cutoff> {
        match self {
            CutoffDoc::Auto => None,
            CutoffDoc::ChiPlus => Some(Cutoff::ChiPlus),
            CutoffDoc::ChiMinus => Some(Cutoff::ChiMinus),
            CutoffDoc::None => Some(Cutoff::None),
        }
    }
}

/// JSON form of a multiplier, e.g. `{"kind": "oscillating", "theta": 0.5, "beta": 1.0, "cutoff": "auto"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MultiplierDoc {
    Oscillating {
        theta: f64,
        beta: f64,
        #[serde(default)]
        cutoff: CutoffDoc,
    },
    HardyStrong {
        a: f64,
        b: f64,
        n: u32,
        #[serde(default)]
        cutoff: CutoffDoc,
    },
    Modulated {
        base: Box<MultiplierDoc>,
        y: f64,
    },
    AnalyticFamily {
        base: Box<MultiplierDoc>,
        delta: f64,
        z: [f64; 2],
        dim: f64,
    },
    Constant {
        value: f64,
    },
}

impl MultiplierDoc {
    pub fn build(&self) -> Result<MultiplierSpec> {
        let with = |spec: MultiplierSpec, c: &CutoffDoc| match c.resolve() {
            Some(c) => spec.with_cutoff(c),
            None => spec,
        };
        match self {
            MultiplierDoc::Oscillating { theta, beta, cutoff } => {
                Ok(with(MultiplierSpec::oscillating(*theta, *beta)?, cutoff))
            }
            MultiplierDoc::HardyStrong { a, b, n, cutoff } => {
                Ok(with(MultiplierSpec::hardy_strong(*a, *b, *n)?, cutoff))
            }
            MultiplierDoc::Modulated { base, y } => MultiplierSpec::modulated(base.build()?, *y),
            MultiplierDoc::AnalyticFamily { base, delta, z, dim } => {
                MultiplierSpec::analytic_family(base.build()?, *delta, Complex64::new(z[0], z[1]), *dim)
            }
            MultiplierDoc::Constant { value } => Ok(MultiplierSpec::constant(*value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-13
    }

    #[test]
    fn wave_case_rejected() {
        assert!(matches!(MultiplierSpec::oscillating(1.0, 0.0), Err(Error::WaveCase)));
        assert!(matches!(
            MultiplierSpec::custom("w", 1.0, 0.0, |_| Complex64::new(1.0, 0.0)),
            Err(Error::WaveCase)
        ));
    }

    #[test]
    fn chi_plus_kills_low_frequencies() {
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        assert_eq!(m.cutoff(), Cutoff::ChiPlus);
        assert_eq!(m.eval(0.5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn direct_formula_without_decay() {
        let m = MultiplierSpec::oscillating(2.0, 0.0).unwrap();
        assert!(close(m.eval(2.0), Complex64::from_polar(1.0, 4.0)));
    }

    #[test]
    fn negative_theta_uses_chi_minus() {
        let m = MultiplierSpec::oscillating(-1.0, 2.0).unwrap();
        assert_eq!(m.cutoff(), Cutoff::ChiMinus);
        assert_eq!(m.eval(1.0), Complex64::new(0.0, 0.0));
        assert!(close(m.eval(0.25), Complex64::from_polar(0.25, 4.0)));
        assert_eq!(MultiplierSpec::oscillating(0.0, 3.0).unwrap().cutoff(), Cutoff::None);
    }

    #[test]
    fn hardy_strong_parameters() {
        let m = MultiplierSpec::hardy_strong(1.0, 1.0, 1).unwrap();
        let (t, b) = m.theta_beta();
        assert!((t - 0.5).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
        assert!(close(m.eval(5.0), MultiplierSpec::oscillating(0.5, 1.0).unwrap().eval(5.0)));
    }

    #[test]
    fn thresholds() {
        assert_eq!(boundedness_threshold(1.0, 1).unwrap(), 1.5);
        assert_eq!(boundedness_threshold(2.0, 3).unwrap(), 6.0);
        assert!(boundedness_threshold(0.0, 1).is_err());
        // b at the threshold gives β = 0 and a bounded multiplier
        let m = MultiplierSpec::hardy_strong(2.0, 6.0, 3).unwrap();
        assert!(m.beta().abs() < 1e-15);
        assert!((1..200).all(|k| m.eval(k as f64 * 0.7).norm() <= 1.0 + 1e-15));
        // b above the threshold gives β < 0
        assert!(MultiplierSpec::hardy_strong(2.0, 6.5, 3).unwrap().beta() < 0.0);
    }

    #[test]
    fn modulation_is_unimodular() {
        let base = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let m = MultiplierSpec::modulated(base.clone(), 3.0).unwrap();
        for l in [1.5, 3.0, 10.0] {
            assert!((m.eval(l).norm() - base.eval(l).norm()).abs() < 1e-14);
        }
        let m0 = MultiplierSpec::modulated(base.clone(), 0.0).unwrap();
        assert!(close(m0.eval(7.0), base.eval(7.0)));
    }

    #[test]
    fn analytic_family_at_zero() {
        let base = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let m = MultiplierSpec::analytic_family(base.clone(), 0.3, Complex64::new(0.0, 0.0), 1.0)
            .unwrap();
        for l in [2.5, 9.0] {
            let want = base.eval(l) * l.powf(0.5 * 1.0 / 2.0);
            assert!(close(m.eval(l), want));
        }
        // z = 1 with δ → the endpoint decay λ^{−θ(n+δ)/2}
        let m1 = MultiplierSpec::analytic_family(base.clone(), 0.5, Complex64::new(1.0, 0.0), 1.0)
            .unwrap();
        assert!((m1.eval(16.0).norm() - 16f64.powf(-0.5 * 1.5 / 2.0)).abs() < 1e-14);
        assert!(MultiplierSpec::analytic_family(base, 0.5, Complex64::new(1.5, 0.0), 1.0).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"kind": "oscillating", "theta": 0.5, "beta": 1.0, "cutoff": "auto"}"#;
        let m = MultiplierSpec::from_json(text).unwrap();
        assert_eq!(m.theta_beta(), (0.5, 1.0));
        let again = MultiplierSpec::from_json(&m.to_json().unwrap()).unwrap();
        assert!(close(again.eval(3.0), m.eval(3.0)));
        let nested = MultiplierSpec::modulated(
            MultiplierSpec::hardy_strong(1.0, 1.0, 1).unwrap().with_cutoff(Cutoff::None),
            2.0,
        )
        .unwrap();
        let back = MultiplierSpec::from_json(&nested.to_json().unwrap()).unwrap();
        assert!(close(back.eval(0.7), nested.eval(0.7)));
        assert!(MultiplierSpec::from_json(r#"{"kind": "oscillating", "theta": 0.5, "beta": 1, "gamma": 2}"#).is_err());
        assert!(MultiplierSpec::from_json(r#"{"kind": "oscillating", "theta": 1.0, "beta": 1}"#).is_err());
        let custom = MultiplierSpec::custom("f", 0.0, 0.0, |_| Complex64::new(2.0, 0.0)).unwrap();
        assert!(custom.to_json().is_err());
        assert!(MultiplierSpec::constant(1.0).to_json().is_ok());
    }

    #[test]
    fn phase_bounds() {
        let m = MultiplierSpec::oscillating(2.0, 0.0).unwrap();
        assert_eq!(m.phase_derivative_bound(1.0, 3.0), Some(6.0));
        let y = MultiplierSpec::modulated(m, 4.0).unwrap();
        assert_eq!(y.phase_derivative_bound(1.0, 3.0), Some(10.0));
        assert_eq!(MultiplierSpec::constant(1.0).phase_derivative_bound(1.0, 2.0), None);
    }
}
