use super::params::*;
use super::{suite, Experiment, Record};
use crate::cz_hardy::{
    atom_test, classify_split, cz_decompose, default_weak_family, optimal_lambda, partition_pairs, random_cz_input,
    spike, split_exponents, tail_sum_criterion, weak_type_ladder,
};
use crate::error::{invalid, Result};
use crate::grid::{write_binary, UniformGrid};
use crate::heisenberg::{
    default_group_grid, default_key_lie_family, default_plancherel_family, dyadic_l2_scaling, heat_kernel,
    heat_kernel_oracle, key_lie_probe, mean_value_check, mean_value_samples, plancherel_check, sublaplacian_kernel,
    weighted_l2_group, HeisenbergPoint, Q,
};
use crate::kernel_rn::{
    dyadic_shifts, fefferman_stein_condition, kernel_of_radial_multiplier, key_estimate_audit, large_part_l1, lp_scan,
    LpVerdict, MultiplierOperator,
};
use crate::multiplier::{class_membership, default_s_grid, dyadic_piece, MultiplierDoc, MultiplierSpec, CutoffDoc};
use crate::stats;
use crate::window::{Band, DyadicWindow};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub(super) struct Table {
    pub name: String,
    pub records: Vec<Record>,
    ctx: Record,
}

impl Table {
    pub fn new(name: &str) -> Self {
        Table {
            name: name.into(),
            records: Vec::new(),
            ctx: Record {
                experiment: name.into(),
                ..Default::default()
            },
        }
    }

    fn context(&mut self, n: Option<usize>, theta: Option<f64>, beta: Option<f64>, s: Option<f64>) {
        self.ctx.n = n;
        self.ctx.theta = theta;
        self.ctx.beta = beta;
        self.ctx.s = s;
    }

    fn row(&mut self, key: impl Into<String>, quantity: &str, value: f64) {
        self.records.push(Record {
            key: key.into(),
            quantity: quantity.into(),
            value,
            ..self.ctx.clone()
        });
    }

    fn check(&mut self, key: impl Into<String>, quantity: &str, value: f64, tolerance: f64, pass: bool) {
        self.records.push(Record {
            key: key.into(),
            quantity: quantity.into(),
            value,
            tolerance: Some(tolerance),
            pass: Some(pass),
            ..self.ctx.clone()
        });
    }
}

type Metrics = BTreeMap<String, Value>;

fn theta_beta(doc: &MultiplierDoc) -> Result<(MultiplierSpec, f64, f64)> {
    let spec = doc.build()?;
    let (t, b) = spec.theta_beta();
    Ok((spec, t, b))
}

fn line(g: &GridParams, n: usize) -> Result<UniformGrid> {
    if !(1..=3).contains(&n) {
        return Err(invalid(format!("n = {n} must be 1, 2 or 3")));
    }
    UniformGrid::cube(n, g.points, g.extent)
}

pub(super) fn dispatch(e: &Experiment, seed: u64, t: &mut Table, m: &mut Metrics) -> Result<()> {
    match e {
        Experiment::ClassCheck(p) => class_check(p, t, m),
        Experiment::Kernel(p) => kernel(p, t, m),
        Experiment::FsCondition(p) => fs(p, t, m),
        Experiment::KeyEstimate(p) => key(p, seed, t, m),
        Experiment::LpScan(p) => lp(p, seed, t, m),
        Experiment::Plancherel(p) => plancherel(p, t, m),
        Experiment::HeatOracle(p) => heat(p, t, m),
        Experiment::WeightedL2(p) => weighted(p, t, m),
        Experiment::MeanValue(p) => mean_value(p, t, m),
        Experiment::KeyLieProbe(p) => key_lie(p, t, m),
        Experiment::Cz(p) => cz(p, seed, t, m),
        Experiment::WeakType(p) => weak(p, t, m),
        Experiment::AtomTest(p) => atom(p, t, m),
        Experiment::TailSum(p) => tail(p, t, m),
        Experiment::Lambda(p) => lambda(p, t, m),
        Experiment::PaperSuite(p) => paper_suite(p, seed, t, m),
    }
}

fn class_check(p: &ClassCheckParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    if !(1..=3).contains(&p.n) {
        return Err(invalid(format!("n = {} must be 1, 2 or 3", p.n)));
    }
    let own = p.multiplier.is_none();
    let doc = p.multiplier.clone().unwrap_or(MultiplierDoc::Oscillating {
        theta: p.theta,
        beta: p.beta,
        cutoff: CutoffDoc::Auto,
    });
    let spec = doc.build()?;
    let reach = if p.theta == 0.0 { 8 } else { ((16.0 / p.theta.abs()).floor() as i32).min(36) };
    let (j_min, j_max) = (p.j_min.unwrap_or(-reach), p.j_max.unwrap_or(reach));
    if j_min > j_max {
        return Err(invalid(format!("empty j range {j_min}..={j_max}")));
    }
    let r = class_membership(
        &spec,
        &DyadicWindow::standard(),
        p.theta,
        p.beta,
        p.s,
        &default_s_grid(p.s),
        j_min..=j_max,
        &p.piece_grid,
        &p.tolerances,
    )?;
    t.context(Some(p.n), Some(p.theta), Some(p.beta), Some(p.s));
    for row in &r.rows {
        t.row(format!("j={}", row.j), "linf", row.linf);
        for (sp, v) in &row.sobolev {
            t.row(format!("j={};s'={sp}", row.j), "sobolev", *v);
        }
    }
    for c in std::iter::once(&r.neg).chain(&r.pos) {
        t.row(c.label.clone(), "sup", c.sup);
        t.row(c.label.clone(), "slope", c.slope);
    }
    if own {
        // m_{θ,β} itself: the large-j trends are forced
        let large: Vec<_> = r.rows.iter().filter(|x| x.j as f64 * p.theta > 0.0).collect();
        let js: Vec<f64> = large.iter().map(|x| x.j as f64).collect();
        let idx = stats::upper_half(&js);
        let x: Vec<f64> = idx.iter().map(|&i| js[i]).collect();
        let linf: Vec<f64> = idx.iter().map(|&i| large[i].linf).collect();
        let sob: Vec<f64> = idx
            .iter()
            .map(|&i| large[i].sobolev.iter().find(|e| e.0 == p.s).map_or(0.0, |e| e.1))
            .collect();
        let (want_l, want_s) = (-p.theta * p.beta / 2.0, p.theta * (2.0 * p.s - p.beta) / 2.0);
        if x.len() >= 2 {
            let (gl, gs) = (stats::log2_slope(&x, &linf), stats::log2_slope(&x, &sob));
            t.check("expected=-theta*beta/2", "slope_linf", gl, p.slope_tolerance, (gl - want_l).abs() <= p.slope_tolerance);
            t.check("expected=theta*(2s-beta)/2", "slope_sobolev", gs, p.slope_tolerance, (gs - want_s).abs() <= p.slope_tolerance);
        }
    }
    if let Some(want) = p.expect {
        t.check(format!("verdict={:?}", r.verdict).to_lowercase(), "verdict_matches", 0.0, 0.0, r.verdict == want);
    }
    m.insert("verdict".into(), json!(r.verdict));
    m.insert("class_constant".into(), json!(r.class_constant()));
    m.insert("j_range".into(), json!([j_min, j_max]));
    Ok(())
}

fn kernel(p: &KernelParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let grid = line(&p.grid, p.n)?;
    let k = kernel_of_radial_multiplier(&spec, p.n, Band::upper(p.band_hi), &grid)?;
    t.context(Some(p.n), Some(th), Some(be), None);
    let key = format!("R={}", p.band_hi);
    t.row(key.clone(), "l1", k.l1());
    t.row(key.clone(), "l2", k.l2());
    for r0 in [1.0, 4.0, 16.0] {
        t.row(format!("{key};r0={r0}"), "tail_l1", k.tail(r0));
    }
    // unitary transform: the two L² norms agree to rounding
    let rel = (k.l2() - k.symbol_l2()).abs() / k.symbol_l2().max(f64::MIN_POSITIVE);
    t.check(key, "plancherel_defect", rel, 1e-10, rel <= 1e-10);
    if let Some(path) = &p.dump {
        write_binary(k.kernel(), std::io::BufWriter::new(std::fs::File::create(path)?))?;
        m.insert("dump".into(), json!(path));
    }
    m.insert("origin".into(), json!(k.origin()));
    Ok(())
}

fn fs(p: &FsConditionParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let grid = line(&p.grid, p.n)?;
    let k = kernel_of_radial_multiplier(&spec, p.n, Band::upper(p.band_hi), &grid)?;
    let r = fefferman_stein_condition(&k, th, &dyadic_shifts(p.n, p.shifts))?;
    t.context(Some(p.n), Some(th), Some(be), None);
    for (y, v) in &r.profile {
        t.row(format!("|y|={y}"), "fs_integral", *v);
    }
    match p.bound {
        Some(b) => t.check("sup", "fs_sup", r.sup, b, r.sup <= b),
        None => t.row("sup", "fs_sup", r.sup),
    }
    m.insert("sup".into(), json!(r.sup));
    Ok(())
}

fn key(p: &KeyEstimateParams, seed: u64, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let grid = line(&p.grid, p.n)?;
    let a = key_estimate_audit(p.count, p.s, &grid, seed)?;
    t.context(Some(p.n), None, None, Some(p.s));
    for (i, r) in a.ratios.iter().enumerate() {
        t.row(format!("sample={i}"), "ratio", *r);
    }
    t.check("constant", "max_ratio", a.max_ratio, a.constant, a.violations == 0);
    m.insert("violations".into(), json!(a.violations));
    m.insert("constant".into(), json!(a.constant));
    if let Some(lp) = &p.large_part {
        let (spec, th, be) = theta_beta(&lp.multiplier)?;
        let r = large_part_l1(&spec, &DyadicWindow::standard(), p.n, lp.s_prime, lp.j_max, &lp.kernel_grid)?;
        t.context(Some(p.n), Some(th), Some(be), Some(lp.s_prime));
        for row in &r.rows {
            t.row(format!("j={}", row.j), "kernel_l1", row.l1);
            t.row(format!("j={}", row.j), "majorant", row.majorant);
            t.row(format!("j={}", row.j), "partial_sum", row.partial_sum);
        }
        let rel = (r.fitted_rate - r.expected_rate).abs() / r.expected_rate.abs();
        t.check(format!("expected={}", r.expected_rate), "fitted_rate", r.fitted_rate, lp.rate_tolerance, rel <= lp.rate_tolerance);
        t.row(format!("expected={}", r.expected_rate), "majorant_rate", r.majorant_rate);
        t.check(format!("j_max={}", lp.j_max), "tail_estimate", r.tail_estimate, lp.tail_tolerance, r.tail_estimate < lp.tail_tolerance);
        m.insert("large_part".into(), json!({"fitted_rate": r.fitted_rate, "majorant_rate": r.majorant_rate, "expected_rate": r.expected_rate, "tail_estimate": r.tail_estimate, "last_term": r.last_term}));
    }
    Ok(())
}

fn lp(p: &LpScanParams, seed: u64, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let cfg = crate::kernel_rn::LpScanConfig { seed, ..p.scan.clone() };
    let r = lp_scan(&spec, &cfg)?;
    t.context(Some(1), Some(th), Some(be), None);
    for row in &r.rows {
        t.row(format!("p={};R={};input={}", row.p, row.truncation, row.input), "bound", row.bound);
    }
    let eps = 1e-9;
    for l in &r.lines {
        let key = format!("p={};d={}", l.p, l.distance);
        if l.distance <= p.stable_distance + eps {
            t.check(key, "spread", l.spread, cfg.stable_spread, l.verdict == LpVerdict::Stable);
        } else if l.distance >= p.growth_distance - eps {
            t.check(key, "exponent", l.exponent, 0.0, l.verdict == LpVerdict::Growing && l.exponent > 0.0);
        } else {
            t.row(key, "spread", l.spread);
        }
    }
    m.insert("lines".into(), json!(r.lines));
    Ok(())
}

fn plancherel(p: &PlancherelParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let family = match p.family {
        SpectralFamily::Default => default_plancherel_family(),
    };
    let r = plancherel_check(&family, &default_group_grid(), &p.synthesis)?;
    t.context(Some(Q), None, None, None);
    for row in &r.rows {
        t.row(format!("h={}", row.label), "ratio", row.ratio);
    }
    t.check("family", "spread", r.spread, 1.0 + p.spread_tolerance, r.spread <= 1.0 + p.spread_tolerance);
    m.insert("constant".into(), json!(r.constant));
    if !p.scaling_js.is_empty() {
        let s = dyadic_l2_scaling(&p.scaling_js, &p.synthesis)?;
        for (j, v) in s.js.iter().zip(&s.l2_sq) {
            t.row(format!("j={j}"), "phi_j_l2_sq", *v);
        }
        let ok = (s.slope - Q as f64).abs() <= p.slope_tolerance;
        t.check(format!("expected={Q}"), "dyadic_slope", s.slope, p.slope_tolerance, ok);
    }
    Ok(())
}

fn heat(p: &HeatOracleParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let k = heat_kernel(&default_group_grid(), &p.synthesis)?;
    let g = k.grid().clone();
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for i in 0..g.len() {
        let c = g.coords(i);
        let rho2 = c[0] * c[0] + c[1] * c[1];
        if rho2 + c[2].abs() > p.region {
            continue;
        }
        let want = heat_kernel_oracle(rho2, c[2]);
        let got = k.kernel().values()[i];
        worst = worst.max((got.re - want).abs() / want.abs()).max(got.im.abs() / want.abs());
        count += 1;
    }
    t.context(Some(Q), None, None, None);
    for (x, tt) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.0, 2.0)] {
        let i = g.flatten(&[g.axis(0).center() + (x / g.spacing(0)) as usize, g.axis(1).center(), g.axis(2).center() + (tt / g.spacing(2)) as usize]);
        let c = g.coords(i);
        t.row(format!("x={};t={}", c[0], c[2]), "kernel", k.kernel().values()[i].re);
        t.row(format!("x={};t={}", c[0], c[2]), "oracle", heat_kernel_oracle(c[0] * c[0] + c[1] * c[1], c[2]));
    }
    t.check(format!("region={}", p.region), "max_rel_error", worst, p.tolerance, worst < p.tolerance && count > 0);
    let mass = k.mass();
    let ok = (mass.re - 1.0).abs() < p.mass_tolerance && mass.im.abs() < p.mass_tolerance;
    t.check("mass", "integral", mass.re, p.mass_tolerance, ok);
    if let Some(path) = &p.dump {
        k.save(std::path::Path::new(path))?;
        m.insert("dump".into(), json!(path));
    }
    m.insert("points_compared".into(), json!(count));
    m.insert("sidecar".into(), serde_json::to_value(k.sidecar()).expect("sidecar"));
    Ok(())
}

/// h(u) = m(2^j u)φ(u), the spectral function of the piece m^j.
fn piece_function(spec: &MultiplierSpec, w: &DyadicWindow, j: i32) -> impl Fn(f64) -> Complex64 + Sync {
    let (spec, w, sc) = (spec.clone(), w.clone(), 2f64.powi(j));
    move |u: f64| {
        let phi = w.eval(u);
        if phi == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            spec.eval(sc * u) * phi
        }
    }
}

fn weighted(p: &WeightedL2Params, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let w = DyadicWindow::standard();
    t.context(Some(Q), Some(th), Some(be), Some(p.s));
    let mut ratios = Vec::new();
    for &j in &p.js {
        let piece = dyadic_piece(&spec, &w, j, &Default::default())?;
        let h = piece_function(&spec, &w, j);
        let k = sublaplacian_kernel(&h, format!("piece j={j}"), &default_group_grid(), &p.synthesis)?;
        let v = weighted_l2_group(k.kernel(), p.s, p.with_derivative)?;
        let ratio = v / piece.sobolev_norm(p.s)?;
        t.row(format!("j={j}"), "weighted_l2", v);
        t.row(format!("j={j}"), "ratio", ratio);
        ratios.push(ratio);
    }
    if ratios.is_empty() {
        return Err(invalid("no pieces"));
    }
    let spread = stats::max(&ratios) / stats::min_positive(&ratios);
    t.check("pieces", "ratio_spread", spread, p.max_spread, spread <= p.max_spread);
    m.insert("ratios".into(), json!(ratios));
    Ok(())
}

fn mean_value(p: &MeanValueParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    if p.densities.is_empty() {
        return Err(invalid("no densities"));
    }
    let h = |q: &HeisenbergPoint| (-(q.x * q.x + q.y * q.y + q.t * q.t)).exp();
    t.context(Some(Q), None, None, None);
    let mut prev: Option<f64> = None;
    let mut consts = Vec::new();
    for &d in &p.densities {
        let c = mean_value_check(&h, p.n_exp, &mean_value_samples(d))?;
        t.row(format!("density={d}"), "constant", c);
        if let Some(a) = prev {
            let rel = (c - a).abs() / c;
            t.check(format!("density={d}"), "relative_change", rel, p.tolerance, rel < p.tolerance);
        }
        prev = Some(c);
        consts.push(c);
    }
    m.insert("constants".into(), json!(consts));
    Ok(())
}

fn key_lie(p: &KeyLieParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let r = key_lie_probe(&default_key_lie_family()?, &p.s_grid, &default_group_grid(), &p.synthesis)?;
    t.context(Some(Q), None, None, None);
    for row in &r.rows {
        t.row(format!("h={}", row.label), "kernel_l1", row.l1);
        for (s, v) in &row.sobolev {
            t.row(format!("h={};s={s}", row.label), "sobolev", *v);
        }
    }
    for ((s, v), (_, sl)) in r.sup_ratio.iter().zip(&r.slopes) {
        t.row(format!("s={s}"), "sup_ratio", *v);
        t.row(format!("s={s}"), "slope", *sl);
    }
    // the Sobolev norm increases with s, so the sup ratio cannot
    let monotone = r.sup_ratio.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-12));
    t.check("s_grid", "monotone", if monotone { 1.0 } else { 0.0 }, 0.0, monotone);
    m.insert("critical_s".into(), json!(r.critical_s));
    Ok(())
}

fn cz(p: &CzParams, seed: u64, t: &mut Table, m: &mut Metrics) -> Result<()> {
    if p.dims.is_empty() || p.dims.len() != p.points.len() {
        return Err(invalid("dims and points must be non-empty and of equal length"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for (k, (&d, &pts)) in p.dims.iter().zip(&p.points).enumerate() {
        let cases = p.cases / p.dims.len() + usize::from(k < p.cases % p.dims.len());
        let mut violations = 0usize;
        let (mut worst_mean, mut worst_local, mut worst_measure) = (0.0f64, 0.0f64, 0.0f64);
        for c in 0..cases {
            let (f, alpha) = random_cz_input(&mut rng, d, pts)?;
            let inv = cz_decompose(&f, alpha)?.check();
            worst_mean = worst_mean.max(inv.worst_mean);
            worst_local = worst_local.max(inv.worst_local_l1);
            if inv.measure_bound > 0.0 {
                worst_measure = worst_measure.max(inv.cube_measure / inv.measure_bound);
            }
            if !inv.holds() {
                violations += 1;
                failures.push(format!("n={d} case={c}: {}", inv.violations.join("; ")));
            }
        }
        t.context(Some(d), None, None, None);
        t.row(format!("cases={cases}"), "worst_abs_mean", worst_mean);
        t.row(format!("cases={cases}"), "worst_local_l1_ratio", worst_local);
        t.row(format!("cases={cases}"), "worst_measure_ratio", worst_measure);
        t.check(format!("cases={cases}"), "violations", violations as f64, 0.0, violations == 0);
    }
    m.insert("failures".into(), json!(failures));
    Ok(())
}

fn weak(p: &WeakTypeParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let grid = line(&p.grid, 1)?;
    let family = match p.family {
        WeakFamily::Spike => vec![("spike".to_string(), spike(&grid, &[0.0])?)],
        WeakFamily::Default => default_weak_family(&grid)?,
    };
    let l = weak_type_ladder(&spec, &p.ladder, &grid, &family)?;
    t.context(Some(1), Some(th), Some(be), None);
    for (lam, c) in &l.rows {
        t.row(format!("R={lam}"), "weak_constant", *c);
    }
    match p.expect {
        LadderExpectation::Stable => t.check("ladder", "spread", l.spread, p.max_spread, l.spread < p.max_spread),
        LadderExpectation::Growing => t.check("ladder", "increasing", l.spread, 0.0, l.increasing),
    }
    m.insert("spread".into(), json!(l.spread));
    m.insert("increasing".into(), json!(l.increasing));
    Ok(())
}

fn atom(p: &AtomTestParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let grid = line(&p.grid, 1)?;
    let op = MultiplierOperator::radial(&spec, Band::upper(p.truncation), &grid)?;
    let r = atom_test(&op, &p.levels, p.profile, p.dilate)?;
    t.context(Some(1), Some(th), Some(be), None);
    for row in &r.rows {
        let key = format!("L={}", row.level);
        t.row(key.clone(), "far", row.far);
        t.row(key.clone(), "near", row.near);
        t.row(key.clone(), "near_bound", row.near_bound);
        t.row(key, "ablation_far", row.ablation_far);
    }
    t.check("levels", "far_spread", r.far_spread, p.max_spread, r.far_spread <= p.max_spread);
    t.check("lowest_level", "ablation_ratio", r.ablation_ratio, p.min_ablation, r.ablation_ratio >= p.min_ablation);
    t.check("levels", "near_field", if r.near_field_holds { 1.0 } else { 0.0 }, 0.0, r.near_field_holds);
    m.insert("far_growth".into(), json!(r.far_growth));
    Ok(())
}

fn tail(p: &TailSumParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let (spec, th, be) = theta_beta(&p.multiplier)?;
    let r = tail_sum_criterion(&spec, &DyadicWindow::standard(), &p.config)?;
    t.context(Some(1), Some(th), Some(be), Some(r.s));
    for row in &r.rows {
        let key = format!("j={};L={}", row.j, row.level);
        t.row(key.clone(), "summand", row.summand);
        t.row(key, "majorant", row.majorant);
    }
    let ok = (r.majorant_slope - r.expected_slope).abs() <= p.slope_tolerance;
    t.check(format!("expected={}", r.expected_slope), "majorant_slope", r.majorant_slope, p.slope_tolerance, ok);
    t.row(format!("expected={}", r.expected_slope), "summand_slope", r.summand_slope);
    t.check("pairs", "violations", r.violations as f64, 0.0, r.violations == 0);
    m.insert("per_level".into(), json!(r.per_level));
    Ok(())
}

fn lambda(p: &LambdaExperimentParams, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let pr = &p.params;
    let split = p.split.unwrap_or_else(|| classify_split(p.j, p.threshold.unwrap_or(pr.q)));
    let c = optimal_lambda(p.j, p.level, split, pr)?;
    t.context(Some(pr.q as usize), Some(pr.theta), None, Some(pr.s));
    let key = format!("j={};L={};split={split:?}", p.j, p.level);
    t.row(key.clone(), "lambda", c.lambda);
    t.row(key.clone(), "log2_near", c.log2_near);
    t.row(key.clone(), "log2_far", c.log2_far);
    if let Some(pl) = c.printed_lambda {
        let (a, b) = split_exponents(p.j, p.level, split, pr, pl);
        t.row(key.clone(), "printed_lambda", pl);
        t.row(key.clone(), "printed_imbalance", (a - b).abs());
    }
    let gap = (c.log2_near - c.log2_far).abs();
    t.check(key, "imbalance", gap, 1e-9, gap <= 1e-9);
    let part = partition_pairs(&p.js, &p.levels, pr.theta)?;
    t.row("pairs", "near_count", part.near.len() as f64);
    t.row("pairs", "far_count", part.far.len() as f64);
    let total = p.js.len() * p.levels.len();
    let whole = part.near.len() + part.far.len() == total;
    t.check("pairs", "partition_total", total as f64, 0.0, whole);
    m.insert("choice".into(), json!(c));
    m.insert("split".into(), json!(split));
    Ok(())
}

fn paper_suite(p: &SuiteParams, seed: u64, t: &mut Table, m: &mut Metrics) -> Result<()> {
    let ids: Vec<u8> = if p.only.is_empty() { (1..=10).collect() } else { p.only.clone() };
    for id in ids {
        let r = suite::run_criterion(id, seed)?;
        t.context(None, None, None, None);
        t.check(format!("criterion={id}"), r.quantity, r.value, r.tolerance, r.pass);
        m.insert(format!("criterion_{id:02}"), json!({"title": r.title, "pass": r.pass, "detail": r.detail, "seconds": r.seconds}));
    }
    Ok(())
}
