use clap::{Args, Parser, Subcommand};
use oscmult::experiment::{
    exit_code, load_config, parse_config, run, suite, with_overrides, write_artifacts, ExperimentConfig, EXPERIMENTS,
};
use oscmult::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oscmult", version, about = "Experiments on oscillating spectral multipliers")]
struct Cli {
    /// List every experiment and exit.
    #[arg(long)]
    list: bool,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// Base JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// RNG seed (0 when neither this nor a config gives one).
    #[arg(long)]
    seed: Option<u64>,
    /// Write <kind>.csv, summary.json and manifest.json into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON summary instead of CSV.
    #[arg(long)]
    json: bool,
    /// Override a config field by path, e.g. --set experiment.grid.points=4096.
    #[arg(long = "set", value_name = "PATH=JSON", value_parser = parse_kv)]
    sets: Vec<(String, String)>,
}

#[derive(Args, Clone, Debug, Default)]
struct Osc {
    /// θ of the oscillating multiplier.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// β of the oscillating multiplier.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    ClassCheck {
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        j_min: Option<i32>,
        #[arg(long, allow_negative_numbers = true)]
        j_max: Option<i32>,
        #[command(flatten)]
        common: Common,
    },
    Kernel {
        #[command(flatten)]
        osc: Osc,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        band_hi: Option<f64>,
        /// Binary dump path.
        #[arg(long)]
        dump: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    FsCondition {
        #[command(flatten)]
        osc: Osc,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    KeyEstimate {
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        /// Also sum the large part of m_{1/2,2}.
        #[arg(long)]
        large_part: bool,
        #[command(flatten)]
        common: Common,
    },
    LpScan {
        #[command(flatten)]
        osc: Osc,
        #[command(flatten)]
        common: Common,
    },
    Plancherel {
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    HeatOracle {
        /// Binary dump path; a .json sidecar is written next to it.
        #[arg(long)]
        dump: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    WeightedL2 {
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        with_derivative: bool,
        #[command(flatten)]
        common: Common,
    },
    MeanValue {
        #[command(flatten)]
        common: Common,
    },
    KeyLieProbe {
        #[command(flatten)]
        common: Common,
    },
    Cz {
        #[arg(long)]
        cases: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    WeakType {
        #[command(flatten)]
        osc: Osc,
        /// stable or growing
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    AtomTest {
        #[command(flatten)]
        osc: Osc,
        #[command(flatten)]
        common: Common,
    },
    TailSum {
        #[command(flatten)]
        osc: Osc,
        #[arg(long)]
        s: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    Lambda {
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i32>,
        #[arg(long, allow_negative_numbers = true)]
        level: Option<f64>,
        /// n1 or n2; default is the literal threshold rule.
        #[arg(long)]
        split: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance battery.
    #[command(alias = "acceptance-suite")]
    PaperSuite {
        /// Criterion numbers; all ten when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a JSON config.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long = "set", value_name = "PATH=JSON", value_parser = parse_kv)]
        sets: Vec<(String, String)>,
    },
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("expected PATH=VALUE, got `{s}`"))
}

struct Plan {
    kind: &'static str,
    common: Common,
    flags: Vec<(String, String)>,
}

fn push<T: ToString>(flags: &mut Vec<(String, String)>, path: &str, v: Option<T>) {
    if let Some(v) = v {
        flags.push((format!("experiment.{path}"), v.to_string()));
    }
}

fn quoted(v: Option<String>) -> Option<String> {
    v.map(|s| format!("\"{s}\""))
}

fn plan(cmd: Cmd) -> Plan {
    let mut f = Vec::new();
    let osc = |f: &mut Vec<(String, String)>, o: Osc| {
        push(f, "multiplier.theta", o.theta);
        push(f, "multiplier.beta", o.beta);
    };
    let (kind, common) = match cmd {
        Cmd::ClassCheck { theta, beta, s, n, j_min, j_max, common } => {
            push(&mut f, "theta", theta);
            push(&mut f, "beta", beta);
            push(&mut f, "s", s);
            push(&mut f, "n", n);
            push(&mut f, "j_min", j_min);
            push(&mut f, "j_max", j_max);
            ("class-check", common)
        }
        Cmd::Kernel { osc: o, n, band_hi, dump, common } => {
            osc(&mut f, o);
            push(&mut f, "n", n);
            push(&mut f, "band_hi", band_hi);
            push(&mut f, "dump", quoted(dump));
            ("kernel", common)
        }
        Cmd::FsCondition { osc: o, n, common } => {
            osc(&mut f, o);
            push(&mut f, "n", n);
            ("fs-condition", common)
        }
        Cmd::KeyEstimate { s, count, large_part, common } => {
            push(&mut f, "s", s);
            push(&mut f, "count", count);
            if large_part {
                push(&mut f, "large_part", Some("{}"));
            }
            ("key-estimate", common)
        }
        Cmd::LpScan { osc: o, common } => {
            osc(&mut f, o);
            ("lp-scan", common)
        }
        Cmd::Plancherel { family, common } => {
            push(&mut f, "family", quoted(family));
            ("plancherel", common)
        }
        Cmd::HeatOracle { dump, common } => {
            push(&mut f, "dump", quoted(dump));
            ("heat-oracle", common)
        }
        Cmd::WeightedL2 { s, with_derivative, common } => {
            push(&mut f, "s", s);
            if with_derivative {
                push(&mut f, "with_derivative", Some(true));
            }
            ("weighted-l2", common)
        }
        Cmd::MeanValue { common } => ("mean-value", common),
        Cmd::KeyLieProbe { common } => ("key-lie-probe", common),
        Cmd::Cz { cases, common } => {
            push(&mut f, "cases", cases);
            ("cz", common)
        }
        Cmd::WeakType { osc: o, expect, common } => {
            osc(&mut f, o);
            push(&mut f, "expect", quoted(expect));
            ("weak-type", common)
        }
        Cmd::AtomTest { osc: o, common } => {
            osc(&mut f, o);
            ("atom-test", common)
        }
        Cmd::TailSum { osc: o, s, common } => {
            osc(&mut f, o);
            push(&mut f, "config.s", s);
            ("tail-sum", common)
        }
        Cmd::Lambda { j, level, split, common } => {
            push(&mut f, "j", j);
            push(&mut f, "level", level);
            push(&mut f, "split", quoted(split.map(|s| s.to_lowercase())));
            ("lambda", common)
        }
        Cmd::PaperSuite { only, common } => {
            if !only.is_empty() {
                push(&mut f, "only", Some(format!("{only:?}")));
            }
            ("paper-suite", common)
        }
        Cmd::Run { config, seed, out, json, sets } => (
            "",
            Common {
                config: Some(config),
                seed,
                out,
                json,
                sets,
            },
        ),
    };
    Plan { kind, common, flags: f }
}

fn resolve(p: &Plan) -> oscmult::Result<ExperimentConfig> {
    let base = match (&p.common.config, p.kind) {
        (Some(path), kind) => {
            let c = load_config(path)?;
            if !kind.is_empty() && c.experiment.kind() != kind {
                return Err(Error::Config(format!("{} holds a `{}` experiment, not `{kind}`", path.display(), c.experiment.kind())));
            }
            c
        }
        (None, kind) => parse_config(&format!(r#"{{"seed": 0, "experiment": {{"kind": "{kind}"}}}}"#))?,
    };
    let mut sets = p.flags.clone();
    if let Some(s) = p.common.seed {
        sets.push(("seed".into(), s.to_string()));
    }
    if let Some(o) = &p.common.out {
        sets.push(("output_dir".into(), serde_json::to_string(o).expect("path")));
    }
    sets.extend(p.common.sets.iter().cloned());
    with_overrides(&base, &sets)
}

fn threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("OSCMULT_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("OSCMULT_THREADS = `{v}` is not a positive integer"))?;
        if n == 0 {
            return Err("OSCMULT_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if cli.list {
        for (kind, what) in EXPERIMENTS {
            println!("{kind:<14} {what}");
        }
        println!();
        for (i, t) in suite::TITLES.iter().enumerate() {
            println!("criterion {:>2}   {t}", i + 1);
        }
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.cmd else {
        eprintln!("error: no experiment given; see --list or --help");
        return ExitCode::from(2);
    };
    let p = plan(cmd);
    let cfg = match resolve(&p) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match &cfg.output_dir {
        Some(dir) => write_artifacts(&cfg, &outcome, dir).map(|_| eprintln!("wrote {}", dir.display())),
        None if p.common.json => {
            println!("{}", outcome.summary_json());
            Ok(())
        }
        None => outcome.write_csv(std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    for r in outcome.failures() {
        eprintln!("FAIL {} {} = {:e} (tolerance {:e})", r.key, r.quantity, r.value, r.tolerance.unwrap_or(f64::NAN));
    }
    for (k, v) in &outcome.metrics {
        if k.starts_with("criterion_") || v.is_string() || v.is_number() || v.is_boolean() {
            eprintln!("{k}: {v}");
        }
    }
    eprintln!("{}: {}", outcome.experiment, if outcome.pass { "pass" } else { "fail" });
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
