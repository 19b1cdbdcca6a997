use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

fn check_theta(theta: f64) -> Result<()> {
    if theta == 1.0 || !theta.is_finite() {
        return Err(Error::WaveCase);
    }
    Ok(())
}

/// j(1−θ) + L, the exponent that decides membership in N.
pub fn pair_exponent(j: i32, level: f64, theta: f64) -> f64 {
    j as f64 * (1.0 - theta) + level
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PairPartition {
    /// j(1−θ) + L ≤ 0.
    pub near: Vec<(i32, f64)>,
    pub far: Vec<(i32, f64)>,
}

/// N = {(j,B) : jθ > 0, j(1−θ)+L(B) ≤ 0} and its complement P within the pair set.
pub fn partition_pairs(js: &[i32], levels: &[f64], theta: f64) -> Result<PairPartition> {
    check_theta(theta)?;
    if let Some(j) = js.iter().find(|&&j| j as f64 * theta <= 0.0) {
        return Err(invalid(format!("j = {j} has jθ ≤ 0")));
    }
    let mut out = PairPartition::default();
    for &j in js {
        for &l in levels {
            if pair_exponent(j, l, theta) <= 0.0 {
                out.near.push((j, l));
            } else {
                out.far.push((j, l));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    /// j + threshold ≤ 0: the atom's cancellation is used.
    N1,
    N2,
}

/// Which half of N a pair falls in; the literal threshold is the homogeneous dimension.
pub fn classify_split(j: i32, threshold: f64) -> Split {
    if j as f64 + threshold <= 0.0 {
        Split::N1
    } else {
        Split::N2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaParams {
    pub theta: f64,
    /// Homogeneous dimension (n on ℝⁿ).
    pub q: f64,
    /// Sobolev exponent above q/2.
    pub s: f64,
    /// Sobolev exponent below q/2, used for the near part of the N₁ split.
    pub s_low: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaChoice {
    pub lambda: f64,
    /// log₂ of the near-part bound S_Λ at the returned Λ.
    pub log2_near: f64,
    /// log₂ of the far-part bound L_Λ.
    pub log2_far: f64,
    /// S_Λ + L_Λ.
    pub bound: f64,
    /// N₂ only: Λ from the half-weight rule 2^{sΛ} = 2^{−(s−q/2)(j+L)}·2^{jθs/2}, which does not balance the two
    /// exponents (the balancing solution has jθs in place of jθs/2).
    pub printed_lambda: Option<f64>,
}

fn exponents(split: Split, j: i32, level: f64, p: &LambdaParams, lambda: f64) -> (f64, f64) {
    let a = pair_exponent(j, level, p.theta);
    let jf = j as f64;
    match split {
        Split::N1 => ((p.q / 2.0 - p.s_low) * (a + lambda), -(p.s - p.q / 2.0) * (a + lambda)),
        Split::N2 => (
            lambda * p.q / 2.0 - jf * p.theta * p.q / 2.0,
            -(p.s - p.q / 2.0) * (a + lambda),
        ),
    }
}

/// Λ balancing the near and far estimates for a pair in N.
pub fn optimal_lambda(j: i32, level: f64, split: Split, p: &LambdaParams) -> Result<LambdaChoice> {
    check_theta(p.theta)?;
    if !(p.s > p.q / 2.0) || !(p.s_low < p.q / 2.0) {
        return Err(invalid(format!("need s_low < q/2 < s, got {} and {}", p.s_low, p.s)));
    }
    let a = pair_exponent(j, level, p.theta);
    if j as f64 * p.theta <= 0.0 || a > 0.0 {
        return Err(Error::OutOfRegime(format!("(j, L) = ({j}, {level}) is not in N for θ = {}", p.theta)));
    }
    let jf = j as f64;
    let (lambda, printed) = match split {
        Split::N1 => (-a, None),
        Split::N2 => (
            (jf * p.theta * p.q / 2.0 - (p.s - p.q / 2.0) * a) / p.s,
            Some((-(p.s - p.q / 2.0) * (jf + level) + jf * p.theta * p.s / 2.0) / p.s),
        ),
    };
    let (ln, lf) = exponents(split, j, level, p, lambda);
    Ok(LambdaChoice {
        lambda,
        log2_near: ln,
        log2_far: lf,
        bound: 2f64.powf(ln) + 2f64.powf(lf),
        printed_lambda: printed,
    })
}

/// (S_Λ, L_Λ) exponents at an arbitrary Λ, for checking the balance.
pub fn split_exponents(j: i32, level: f64, split: Split, p: &LambdaParams, lambda: f64) -> (f64, f64) {
    exponents(split, j, level, p, lambda)
}
