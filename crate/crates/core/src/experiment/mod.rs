//! Config-driven experiment runner: one JSON document in, CSV rows plus a JSON summary and manifest out.
//!
//! ```json
//! {"seed": 7, "experiment": {"kind": "class-check", "theta": 0.5, "beta": 1.0, "s": 1.0, "n": 1}}
//! ```

mod params;
mod runners;
pub mod suite;

pub use params::*;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub experiment: Experiment,
    /// Directory receiving `<kind>.csv`, `summary.json` and `manifest.json`.
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    ClassCheck(ClassCheckParams),
    Kernel(KernelParams),
    FsCondition(FsConditionParams),
    KeyEstimate(KeyEstimateParams),
    LpScan(LpScanParams),
    Plancherel(PlancherelParams),
    HeatOracle(HeatOracleParams),
    WeightedL2(WeightedL2Params),
    MeanValue(MeanValueParams),
    KeyLieProbe(KeyLieParams),
    Cz(CzParams),
    WeakType(WeakTypeParams),
    AtomTest(AtomTestParams),
    TailSum(TailSumParams),
    Lambda(LambdaExperimentParams),
    #[serde(alias = "acceptance-suite")]
    PaperSuite(SuiteParams),
}

/// (kind, what it checks) for every experiment, in `--list` order.
pub const EXPERIMENTS: [(&str, &str); 16] = [
    ("class-check", "membership of a multiplier in the class M(theta, beta, s) from its dyadic pieces"),
    ("kernel", "convolution kernel of a band-limited radial multiplier on R^n, optional binary dump"),
    ("fs-condition", "Fefferman-Stein smoothness integral of the kernel over dyadic shifts"),
    ("key-estimate", "L1 kernel bound by the Sobolev norm on random symbols; optional large-part sums"),
    ("lp-scan", "operator-norm lower bounds along a truncation ladder for a grid of exponents p"),
    ("plancherel", "Heisenberg kernel L2 norms against the spectral moment, and dyadic Q-scaling"),
    ("heat-oracle", "Laguerre-synthesised heat kernel on H1 against the closed-form quadrature"),
    ("weighted-l2", "Korányi-weighted L2 norms of group kernels of dyadic pieces"),
    ("mean-value", "mean-value constant on H1 under sample refinement"),
    ("key-lie-probe", "key-estimate ratio on H1 across Sobolev exponents"),
    ("cz", "Calderón-Zygmund decomposition invariants on random inputs"),
    ("weak-type", "empirical weak (1,1) constant along a truncation ladder"),
    ("atom-test", "far-field L1 mass of T applied to atoms, with the no-cancellation ablation"),
    ("tail-sum", "far-field kernel tails per (j, L) against their weighted-L2 majorant"),
    ("lambda", "balancing truncation for a near pair, and the near/far pair partition"),
    ("paper-suite", "the ten-criterion acceptance battery"),
];

impl Experiment {
    pub fn kind(&self) -> &'static str {
        let v = serde_json::to_value(self).expect("params serialize");
        let k = v["kind"].as_str().expect("tagged").to_string();
        EXPERIMENTS.iter().find(|e| e.0 == k).expect("listed").0
    }
}

/// Parse a config, reporting the JSON path of the first offending field.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Config(format!("at `{}`: {}", e.path(), e.inner())))
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Set `a.b.c = value` in a JSON tree, creating objects along the way.
pub fn set_path(root: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut cur = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::Config(format!("empty segment in `{path}`")));
        }
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("`{path}`: `{}` is not an object", parts[..i].join("."))))?;
        if i + 1 == parts.len() {
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        cur = obj.entry(part.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!()
}

/// Apply `path=value` overrides (value parsed as JSON, else taken as a string) and re-validate.
pub fn with_overrides(cfg: &ExperimentConfig, sets: &[(String, String)]) -> Result<ExperimentConfig> {
    let mut v = serde_json::to_value(cfg).map_err(|e| Error::Config(e.to_string()))?;
    for (k, raw) in sets {
        let val = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.clone()));
        set_path(&mut v, k, val)?;
    }
    parse_config(&v.to_string())
}

/// One CSV row. Empty optional cells are written as empty strings.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Record {
    pub experiment: String,
    pub n: Option<usize>,
    pub theta: Option<f64>,
    pub beta: Option<f64>,
    pub s: Option<f64>,
    pub key: String,
    pub quantity: String,
    pub value: f64,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
}

pub const CSV_HEADER: [&str; 10] = ["experiment", "n", "theta", "beta", "s", "key", "quantity", "value", "tolerance", "pass"];

fn num(v: f64) -> String {
    // −0 prints as 0
    format!("{:.12e}", v + 0.0)
}

impl Record {
    fn cells(&self) -> [String; 10] {
        let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
        [
            self.experiment.clone(),
            self.n.map(|n| n.to_string()).unwrap_or_default(),
            opt(self.theta),
            opt(self.beta),
            opt(self.s),
            self.key.clone(),
            self.quantity.clone(),
            num(self.value),
            opt(self.tolerance),
            self.pass.map(|p| p.to_string()).unwrap_or_default(),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub experiment: String,
    pub params: Value,
    pub metrics: BTreeMap<String, Value>,
    #[serde(skip)]
    pub records: Vec<Record>,
    pub pass: bool,
}

impl Outcome {
    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| r.pass == Some(false)).collect()
    }

    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        out.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.records {
            out.write_record(r.cells()).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    crate_version: &'static str,
    threads: usize,
    config: &'a ExperimentConfig,
}

/// `<dir>/<kind>.csv`, `<dir>/summary.json` and `<dir>/manifest.json`.
pub fn write_artifacts(cfg: &ExperimentConfig, outcome: &Outcome, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    outcome.write_csv(std::fs::File::create(dir.join(format!("{}.csv", outcome.experiment)))?)?;
    std::fs::write(dir.join("summary.json"), outcome.summary_json())?;
    let manifest = Manifest {
        crate_version: env!("CARGO_PKG_VERSION"),
        threads: rayon::current_num_threads(),
        config: cfg,
    };
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest).expect("manifest"))?;
    Ok(())
}

/// Run the experiment; `Ok` carries pass/fail, `Err` is a config or numerical error.
pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut t = runners::Table::new(cfg.experiment.kind());
    let mut metrics = BTreeMap::new();
    runners::dispatch(&cfg.experiment, cfg.seed, &mut t, &mut metrics)?;
    let params = serde_json::to_value(&cfg.experiment).expect("params serialize");
    let pass = t.records.iter().all(|r| r.pass != Some(false));
    Ok(Outcome {
        experiment: t.name.clone(),
        params,
        metrics,
        records: t.records,
        pass,
    })
}

/// Exit status for an error: 2 for anything the caller can fix in the config, 3 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) | Error::WaveCase | Error::OutOfRegime(_) => 2,
        _ => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_mandatory() {
        let e = parse_config(r#"{"experiment": {"kind": "lambda"}}"#).unwrap_err();
        assert!(e.to_string().contains("seed"), "{e}");
    }

    #[test]
    fn unknown_field_reports_its_path() {
        let e = parse_config(r#"{"seed": 1, "experiment": {"kind": "cz", "cases": 3, "bogus": 1}}"#).unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
        let e = parse_config(r#"{"seed": 1, "extra": 0, "experiment": {"kind": "cz"}}"#).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");
    }

    #[test]
    fn overrides_reach_nested_fields() {
        let c = parse_config(r#"{"seed": 1, "experiment": {"kind": "lambda"}}"#).unwrap();
        let c = with_overrides(&c, &[("experiment.j".into(), "3".into()), ("seed".into(), "9".into())]).unwrap();
        assert_eq!(c.seed, 9);
        match c.experiment {
            Experiment::Lambda(p) => assert_eq!(p.j, 3),
            _ => panic!(),
        }
    }

    #[test]
    fn every_kind_is_listed() {
        for (k, _) in EXPERIMENTS {
            let c = parse_config(&format!(r#"{{"seed": 0, "experiment": {{"kind": "{k}"}}}}"#)).unwrap();
            assert_eq!(c.experiment.kind(), k);
        }
    }
}
