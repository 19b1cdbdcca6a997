use oscmult::heisenberg::*;
use oscmult::multiplier::MultiplierSpec;
use oscmult::Complex64;
use proptest::prelude::*;

fn pt() -> impl Strategy<Value = HeisenbergPoint> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y, t)| HeisenbergPoint::new(x, y, t))
}

proptest! {
    #[test]
    fn group_axioms(p in pt(), q in pt(), r in pt()) {
        let a = (p * q) * r;
        let b = p * (q * r);
        prop_assert!((a.x - b.x).abs() < 1e-12 && (a.y - b.y).abs() < 1e-12 && (a.t - b.t).abs() < 1e-12);
        prop_assert_eq!(p * HeisenbergPoint::IDENTITY, p);
        prop_assert_eq!(HeisenbergPoint::IDENTITY * p, p);
        let e = p * p.inverse();
        prop_assert!(e.x == 0.0 && e.y == 0.0 && e.t == 0.0);
    }

    #[test]
    fn norm_is_homogeneous(p in pt(), r in 0.01..50.0f64) {
        prop_assert!((p.dilate(r).norm() - r * p.norm()).abs() <= 1e-12 * (1.0 + r * p.norm()));
    }
}

#[test]
fn homogeneous_dimension() {
    assert_eq!(Q, 1 * 2 + 2 * 1);
}

#[test]
fn haar_measure_scales_like_r_to_minus_q() {
    let g = dilated_grid(1.0);
    let f = |p: &HeisenbergPoint| (-(p.x * p.x + p.y * p.y) - p.t * p.t / 4.0).exp();
    for r in [0.5, 1.5, 2.0] {
        let (a, b) = haar_homogeneity(&f, r, &g);
        assert!((a - b).abs() / b < 0.01, "r = {r}: {a} vs {b}");
    }
}

#[test]
fn heat_kernel_matches_oracle_and_has_unit_mass() {
    let start = std::time::Instant::now();
    let k = heat_kernel(&default_group_grid(), &SynthesisConfig::default()).unwrap();
    let g = k.grid().clone();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for i in 0..g.len() {
        let c = g.coords(i);
        let rho2 = c[0] * c[0] + c[1] * c[1];
        if rho2 + c[2].abs() > 4.0 {
            continue;
        }
        let want = heat_kernel_oracle(rho2, c[2]);
        let got = k.kernel().values()[i];
        worst = worst.max((got.re - want).abs() / want.abs()).max(got.im.abs() / want.abs());
        checked += 1;
    }
    assert!(checked > 1000);
    assert!(worst < 1e-6, "worst relative error {worst:e}");
    let mass = k.mass();
    assert!((mass.re - 1.0).abs() < 1e-3 && mass.im.abs() < 1e-12, "{mass}");
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn plancherel_ratio_is_constant() {
    let r = plancherel_check(&default_plancherel_family(), &default_group_grid(), &SynthesisConfig::default()).unwrap();
    for row in &r.rows {
        println!("{} {:.6}", row.label, row.ratio);
    }
    assert!(r.spread < 1.02, "{:?}", r.rows);
    // ‖𝒦_h‖₂² = (1/8)∫|h|²u³du from Laguerre orthogonality and Σ(2k+1)^{−2} = π²/8
    assert!((r.constant - 0.125).abs() < 0.125 * 0.02, "{}", r.constant);
    let a = r.rows.iter().find(|x| x.label == "phi").unwrap().ratio;
    let b = r.rows.iter().find(|x| x.label == "phi(u/2)").unwrap().ratio;
    assert!((a - b).abs() / a < 0.005);
}

#[test]
fn dyadic_kernels_scale_with_q() {
    let s = dyadic_l2_scaling(&[-2, -1, 0, 1, 2], &SynthesisConfig::default()).unwrap();
    assert!((s.slope - 4.0).abs() < 0.05, "{}", s.slope);
}

#[test]
fn derivative_weighted_norm_is_finite_and_richardson_small() {
    let k = heat_kernel(&default_group_grid(), &SynthesisConfig::default()).unwrap();
    let d = horizontal_derivatives(k.kernel()).unwrap();
    assert!(d.richardson_error < 5e-2, "{}", d.richardson_error);
    let w = weighted_l2_group(k.kernel(), 1.0, true).unwrap();
    assert!(w.is_finite() && w > 0.0);
}

#[test]
fn mean_value_constant_is_refinement_stable() {
    let h = |p: &HeisenbergPoint| (-(p.x * p.x + p.y * p.y + p.t * p.t)).exp();
    let a = mean_value_check(&h, 4.0, &mean_value_samples(2)).unwrap();
    let b = mean_value_check(&h, 4.0, &mean_value_samples(4)).unwrap();
    assert!(a.is_finite() && a > 0.0);
    assert!((a - b).abs() / b < 0.1, "{a} {b}");
}

#[test]
fn mean_value_first_order_scaling() {
    let h = |p: &HeisenbergPoint| (-(p.x * p.x + p.y * p.y + p.t * p.t)).exp();
    let x = HeisenbergPoint::new(0.8, -0.3, 0.4);
    for dir in [HeisenbergPoint::new(1.0, 0.0, 0.0), HeisenbergPoint::new(0.0, 0.6, 0.1)] {
        let y = dir.dilate(1e-3);
        let d1 = (h(&x.mul(&y)) - h(&x)).abs();
        let d2 = (h(&x.mul(&y.dilate(2.0))) - h(&x)).abs();
        assert!(d2 <= 2.0 * d1 * 1.2, "{d1} {d2}");
    }
}

#[test]
fn weighted_ratio_bounded_over_pieces() {
    use oscmult::multiplier::{dyadic_piece, PieceGrid};
    use oscmult::window::DyadicWindow;
    let m = MultiplierSpec::oscillating(0.5, 4.0).unwrap();
    let w = DyadicWindow::standard();
    let mut ratios = Vec::new();
    for j in 1..=4 {
        let piece = dyadic_piece(&m, &w, j, &PieceGrid::default()).unwrap();
        let (m2, w2, sc) = (m.clone(), w.clone(), 2f64.powi(j));
        let h = move |u: f64| if w2.eval(u) == 0.0 { Complex64::new(0.0, 0.0) } else { m2.eval(sc * u) * w2.eval(u) };
        let k = sublaplacian_kernel(&h, "piece", &default_group_grid(), &SynthesisConfig::default()).unwrap();
        ratios.push(weighted_l2_group(k.kernel(), 2.1, false).unwrap() / piece.sobolev_norm(2.1).unwrap());
    }
    let spread = ratios.iter().cloned().fold(0.0, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread < 4.0, "{ratios:?}");
}

#[test]
fn key_lie_probe_is_monotone_in_s() {
    let s_grid = [1.0, 1.5, 2.0, 2.5];
    let r = key_lie_probe(&default_key_lie_family().unwrap(), &s_grid, &default_group_grid(), &SynthesisConfig::default()).unwrap();
    for w in r.sup_ratio.windows(2) {
        assert!(w[1].1 <= w[0].1 * (1.0 + 1e-12));
    }
    assert!(r.sup_ratio[3].1.is_finite());
    println!("{:?}\n{:?}", r.sup_ratio, r.slopes);
}

/// Composite Simpson in λ on [0, 60]; the prefactor follows from unit mass:
/// integrating over (x, y, t) leaves 2π·4π at λ = 0, so c = 1/(8π²).
fn simpson_heat(rho2: f64, t: f64) -> f64 {
    let f = |l: f64| {
        if l == 0.0 {
            return (-rho2 / 4.0).exp();
        }
        (l / l.sinh()) * (-(l / l.tanh()) * rho2 / 4.0).exp() * (l * t).cos()
    };
    let n = 24_000;
    let h = 60.0 / n as f64;
    let mut s = f(0.0) + f(60.0);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    2.0 * (s * h / 3.0) / (8.0 * std::f64::consts::PI.powi(2))
}

#[test]
fn heat_oracle_agrees_with_simpson() {
    for (rho2, t) in [(0.0, 0.0), (1.0, 0.5), (4.0, -1.5), (0.25, 3.0), (9.0, 0.0), (2.0, 6.0)] {
        let a = heat_kernel_oracle(rho2, t);
        let b = simpson_heat(rho2, t);
        assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-6), "({rho2}, {t}): {a} vs {b}");
    }
}
