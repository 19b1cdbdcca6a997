use oscmult::multiplier::{
    check_condition_neg, class_membership, default_s_grid, dyadic_piece, ClassTolerances, CutoffDoc, MultiplierDoc,
    MultiplierSpec, PieceGrid, Status, Verdict,
};
use oscmult::window::DyadicWindow;
use oscmult::Complex64;
use proptest::prelude::*;

fn coarse() -> PieceGrid {
    PieceGrid {
        min_points_per_unit: 256,
        max_points_per_unit: 1 << 14,
        adaptive: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn window_sums_to_one(e in -20.0..20.0f64) {
        let w = DyadicWindow::standard();
        let lambda = 2f64.powf(e);
        let total: f64 = (-24..=24).map(|j| w.eval(2f64.powi(-j) * lambda)).sum();
        prop_assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn pieces_resum_to_the_multiplier(e in -6.0..10.0f64, theta in 0.1..0.9f64, beta in 0.0..3.0f64) {
        let w = DyadicWindow::standard();
        let m = MultiplierSpec::oscillating(theta, beta).unwrap();
        let lambda = 2f64.powf(e);
        let sum: Complex64 = (-12..=14).map(|j| m.eval(lambda) * w.eval(2f64.powi(-j) * lambda)).sum();
        prop_assert!((sum - m.eval(lambda)).norm() <= 1e-8 * m.eval(lambda).norm().max(1e-300));
    }

    #[test]
    fn analytic_family_at_zero_restores_decay(l in 1.5..500.0f64, theta in 0.1..0.9f64, beta in 0.0..3.0f64) {
        let base = MultiplierSpec::oscillating(theta, beta).unwrap();
        let m = MultiplierSpec::analytic_family(base.clone(), 0.4, Complex64::new(0.0, 0.0), 1.0).unwrap();
        let want = base.eval(l) * l.powf(theta * beta / 2.0);
        prop_assert!((m.eval(l) - want).norm() <= 1e-12 * want.norm().max(1e-300));
    }

    #[test]
    fn doc_roundtrips_through_json(theta in -2.0..0.9f64, beta in -1.0..4.0f64, y in -5.0..5.0f64) {
        prop_assume!(theta.abs() > 1e-3);
        let doc = MultiplierDoc::Modulated {
            base: Box::new(MultiplierDoc::Oscillating { theta, beta, cutoff: CutoffDoc::Auto }),
            y,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let back: MultiplierDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let (a, b) = (doc.build().unwrap(), back.build().unwrap());
        prop_assert_eq!(a.eval(3.7), b.eval(3.7));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modulation_leaves_piece_sup_unchanged(j in -4i32..8, y in -20.0..20.0f64) {
        let w = DyadicWindow::standard();
        let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
        let my = MultiplierSpec::modulated(m.clone(), y).unwrap();
        let a = dyadic_piece(&m, &w, j, &PieceGrid::fixed(1024)).unwrap().sup();
        let b = dyadic_piece(&my, &w, j, &PieceGrid::fixed(1024)).unwrap().sup();
        // |λ^{iy}| = 1 up to one rounding of the complex product
        prop_assert!((a - b).abs() <= 4.0 * f64::EPSILON * a, "{a} {b}");
    }

    #[test]
    fn weighted_sup_is_flat_in_j(theta in 0.2..1.8f64, beta in 0.0..3.0f64) {
        prop_assume!((theta - 1.0).abs() > 0.05);
        let w = DyadicWindow::standard();
        let m = MultiplierSpec::oscillating(theta, beta).unwrap();
        let top = ((8.0 / theta) as i32).max(2);
        let v: Vec<f64> = (1..=top)
            .map(|j| 2f64.powf(j as f64 * theta * beta / 2.0) * dyadic_piece(&m, &w, j, &coarse()).unwrap().sup())
            .collect();
        let max = v.iter().cloned().fold(0.0, f64::max);
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!(max / min <= 4.0, "{v:?}");
    }
}

#[test]
fn piece_sup_against_dense_evaluation() {
    // oracle: sup over a fine λ-mesh of |m(2^jλ)|φ(λ), independent of the piece grid
    let w = DyadicWindow::standard();
    let m = MultiplierSpec::oscillating(0.5, 2.0).unwrap();
    for j in [1, 4, 9] {
        let dense = (0..200_000)
            .map(|k| 0.5 + 1.5 * k as f64 / 199_999.0)
            .map(|l| m.eval(2f64.powi(j) * l).norm() * w.eval(l))
            .fold(0.0, f64::max);
        let got = dyadic_piece(&m, &w, j, &PieceGrid::default()).unwrap().sup();
        assert!((got - dense).abs() / dense < 1e-4, "j={j}: {got} vs {dense}");
    }
}

#[test]
fn member_at_s_keeps_neg_condition_at_smaller_s() {
    let w = DyadicWindow::standard();
    let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
    let tol = ClassTolerances::default();
    let r = class_membership(&m, &w, 0.5, 1.0, 1.0, &default_s_grid(1.0), -12..=20, &coarse(), &tol).unwrap();
    assert_eq!(r.verdict, Verdict::Member);
    for s in [0.3, 0.6, 0.9] {
        let neg = check_condition_neg(&m, &w, s, -12..=20, &coarse()).unwrap();
        assert!(neg.sup <= r.neg.sup * (1.0 + 1e-12) || r.neg.status == Status::Bounded, "{s}");
        assert!(neg.slope <= tol.finite_slope, "{s}: {}", neg.slope);
    }
}

#[test]
fn too_slow_decay_is_not_a_member() {
    // m_{1/2,1} fails the growth condition declared with β = 2
    let w = DyadicWindow::standard();
    let m = MultiplierSpec::oscillating(0.5, 1.0).unwrap();
    let r = class_membership(&m, &w, 0.5, 2.0, 1.0, &[1.0], -4..=24, &coarse(), &ClassTolerances::default()).unwrap();
    assert_eq!(r.verdict, Verdict::NotMember);
}
