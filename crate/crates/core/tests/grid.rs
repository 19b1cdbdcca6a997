use oscmult::grid::{
    fourier, inverse_fourier, l1_tail, read_binary, sobolev_norm, weighted_l2, write_binary, write_csv, AmbientNorm,
    SampledFunction, UniformGrid, CSV_MAX_POINTS,
};
use oscmult::kernel_rn::{key_estimate_ratio, random_smooth_symbol};
use oscmult::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gaussian(g: &UniformGrid, shift: f64) -> SampledFunction {
    SampledFunction::from_real_fn(g.clone(), |x| {
        let r2: f64 = x.iter().enumerate().map(|(i, v)| if i == 0 { (v - shift).powi(2) } else { v * v }).sum();
        (-0.5 * r2).exp()
    })
    .unwrap()
}

#[test]
fn gaussian_transform_closed_form() {
    for (dim, n) in [(1, 512), (2, 128)] {
        let g = UniformGrid::cube(dim, n, 16.0).unwrap();
        for a in [0.0, 1.5] {
            let f = fourier(&gaussian(&g, a)).unwrap();
            let dual = f.grid().clone();
            let worst = (0..dual.len())
                .map(|i| {
                    let c = dual.coords(i);
                    let r2: f64 = c[..dim].iter().map(|v| v * v).sum();
                    let want = Complex64::from_polar((-0.5 * r2).exp(), -a * c[0]);
                    (f.values()[i] - want).norm()
                })
                .fold(0.0, f64::max);
            assert!(worst < 1e-12, "dim {dim} shift {a}: {worst:e}");
        }
    }
}

#[test]
fn gaussian_sobolev_norm_closed_form() {
    // ∫(1+ξ²)^s e^{−ξ²} dξ: √π for s = 0, 3√π/2 for s = 1, 11√π/4 for s = 2
    let want = [(0.0, 1.0), (1.0, 1.5), (2.0, 2.75)];
    for n in [256, 1024, 4096] {
        let g = UniformGrid::line(n, 16.0).unwrap();
        let f = gaussian(&g, 0.0);
        for (s, c) in want {
            let got = sobolev_norm(&f, s).unwrap();
            let exact = (c * std::f64::consts::PI.sqrt()).sqrt();
            assert!((got - exact).abs() / exact < 1e-10, "n={n} s={s}: {got} vs {exact}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval_and_inversion(seed in any::<u64>(), log_n in 4usize..10, extent in 1.0..50.0f64) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 << log_n;
        let g = UniformGrid::line(n, extent).unwrap();
        let v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = SampledFunction::new(g, v).unwrap();
        let fh = fourier(&f).unwrap();
        prop_assert!((fh.l2() - f.l2()).abs() <= 1e-12 * f.l2());
        let back = inverse_fourier(&fh).unwrap();
        prop_assert!(back.max_abs_diff(&f) <= 1e-12 * f.linf());
    }

    #[test]
    fn weight_only_increases_the_norm(s in 0.0..4.0f64, width in 0.3..3.0f64) {
        let g = UniformGrid::cube(2, 64, 12.0).unwrap();
        let k = SampledFunction::from_real_fn(g, |x| (-(x[0] * x[0] + x[1] * x[1]) / (2.0 * width * width)).exp()).unwrap();
        prop_assert!(weighted_l2(&k, s, AmbientNorm::Euclidean) >= k.l2());
    }

    #[test]
    fn tails_shrink_outward(r0 in 0.0..6.0f64, dr in 0.0..6.0f64) {
        let g = UniformGrid::line(1024, 16.0).unwrap();
        let k = SampledFunction::from_real_fn(g, |x| 1.0 / (1.0 + x[0] * x[0])).unwrap();
        prop_assert!(l1_tail(&k, r0 + dr, AmbientNorm::Euclidean) <= l1_tail(&k, r0, AmbientNorm::Euclidean));
        prop_assert!(l1_tail(&k, r0, AmbientNorm::Euclidean) <= k.l1() * (1.0 + 1e-15));
    }
}

#[test]
fn weighted_norm_is_stable_under_refinement() {
    // (1+|x|)·e^{−|x|²/2}: the L² norm converges as the mesh halves
    let norms: Vec<f64> = [256, 512, 1024]
        .iter()
        .map(|&n| weighted_l2(&gaussian(&UniformGrid::line(n, 16.0).unwrap(), 0.0), 1.0, AmbientNorm::Euclidean))
        .collect();
    for w in norms.windows(2) {
        assert!((w[0] - w[1]).abs() / w[1] < 1e-3, "{norms:?}");
    }
}

#[test]
fn key_estimate_chain_on_random_symbols() {
    // ‖K‖₁ ≤ ‖(1+|x|²)^{−s/2}‖₂ ‖(1+|x|²)^{s/2}K‖₂, with the weighted norm computed in x directly
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (dim, n, extent) in [(1usize, 1024usize, 8.0), (2, 64, 8.0)] {
        let fg = UniformGrid::cube(dim, n, extent).unwrap();
        for s in [0.6, 1.0, 1.5] {
            let f = random_smooth_symbol(&mut rng, &fg).unwrap();
            let est = key_estimate_ratio(&f, s, dim).unwrap();
            let k = inverse_fourier(&f).unwrap();
            let g = k.grid();
            let direct: f64 = (0..g.len())
                .map(|i| {
                    let r2: f64 = g.coords(i)[..dim].iter().map(|v| v * v).sum();
                    (1.0 + r2).powf(s) * k.values()[i].norm_sqr()
                })
                .sum::<f64>()
                * g.cell_volume();
            assert!((direct.sqrt() - est.sobolev).abs() <= 1e-10 * est.sobolev, "{dim} {s}");
            assert!(est.holds(), "{dim} {s}: {} > {}", est.ratio, est.constant);
        }
    }
}

#[test]
fn binary_roundtrip_is_exact() {
    let g = UniformGrid::new(vec![
        oscmult::grid::Axis { n: 16, extent: 2.0 },
        oscmult::grid::Axis { n: 32, extent: 3.5 },
    ])
    .unwrap();
    let f = SampledFunction::from_fn(g, |x| Complex64::new(x[0].sin(), x[1] * 1e-300)).unwrap();
    let mut buf = Vec::new();
    write_binary(&f, &mut buf).unwrap();
    assert_eq!(buf.len(), 8 + 2 * 16 + 512 * 16);
    let back = read_binary(&buf[..]).unwrap();
    assert_eq!(back.values(), f.values());
    assert!(back.grid().matches(f.grid()));
    assert!(read_binary(&buf[..buf.len() - 1]).is_err());
}

#[test]
fn csv_refuses_large_grids() {
    let g = UniformGrid::line(2 * CSV_MAX_POINTS, 1.0).unwrap();
    assert!(write_csv(&SampledFunction::zeros(g), std::io::sink()).is_err());
    let small = gaussian(&UniformGrid::line(16, 2.0).unwrap(), 0.0);
    let mut out = Vec::new();
    write_csv(&small, &mut out).unwrap();
    assert!(String::from_utf8(out).unwrap().lines().count() >= 16);
}
