//! Drive an experiment from JSON, override a field, and print the CSV rows.
//!
//! cargo run --release --example config_run [-- path/to/config.json]

use oscmult::experiment::{load_config, parse_config, run, with_overrides};

fn main() -> oscmult::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(p) => load_config(p.as_ref())?,
        None => parse_config(r#"{"seed": 9, "experiment": {"kind": "cz", "cases": 20}}"#)?,
    };
    let cfg = with_overrides(&cfg, &[("seed".into(), "10".into())])?;
    let out = run(&cfg)?;
    out.write_csv(std::io::stdout().lock())?;
    eprintln!("{}: {}", out.experiment, if out.pass { "pass" } else { "fail" });
    Ok(())
}
