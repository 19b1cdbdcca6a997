//! Small regression and order-statistics helpers shared by the diagnostics.

/// Least-squares slope of `ys` against `xs`; 0 when fewer than two distinct abscissae.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Slope of `log2 y` against `x`, skipping non-positive values.
pub fn log2_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let (px, py): (Vec<f64>, Vec<f64>) = xs
        .iter()
        .zip(ys)
        .filter(|(_, y)| **y > 0.0 && y.is_finite())
        .map(|(x, y)| (*x, y.log2()))
        .unzip();
    slope(&px, &py)
}

/// Indices of the half of `keys` with largest magnitude (at least two when available).
pub fn upper_half(keys: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].abs().total_cmp(&keys[b].abs()));
    let keep = (keys.len() / 2).max(keys.len().min(2));
    let mut out = idx.split_off(keys.len() - keep);
    out.sort_unstable();
    out
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

pub fn max(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

pub fn min_positive(values: &[f64]) -> f64 {
    values
        .iter()
        .copied()
        .filter(|v| *v > 0.0)
        .fold(f64::INFINITY, f64::min)
}

/// `n` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        assert!((slope(&xs, &ys) - 3.0).abs() < 1e-12);
        assert_eq!(slope(&[1.0], &[2.0]), 0.0);
    }

    #[test]
    fn upper_half_picks_large_magnitudes() {
        assert_eq!(upper_half(&[-1.0, -2.0, -3.0, -4.0]), vec![2, 3]);
        assert_eq!(upper_half(&[1.0, 2.0, 3.0]), vec![1, 2]);
        assert_eq!(upper_half(&[5.0]), vec![0]);
    }

    #[test]
    fn median_and_log_space() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        let g = log_space(0.25, 1.0, 3);
        assert!((g[1] - 0.5).abs() < 1e-12 && g[2] == 1.0);
    }
}
