//! Far-field kernel tails per (j, L) against their weighted-L² majorant.
//!
//! cargo run --release --example tail_sum

use oscmult::cz_hardy::{tail_sum_criterion, TailSumConfig};
use oscmult::multiplier::MultiplierSpec;
use oscmult::window::DyadicWindow;

fn main() -> oscmult::Result<()> {
    let cfg = TailSumConfig { j_max: 8, ..Default::default() };
    let r = tail_sum_criterion(&MultiplierSpec::oscillating(0.5, 1.0)?, &DyadicWindow::standard(), &cfg)?;
    for (u, v) in r.per_level.iter().step_by(2) {
        println!("u = {u:>5.2}: sum {v:.4e}");
    }
    println!(
        "majorant slope {:.4} (expected {}), summand slope {:.3}, {} violations",
        r.majorant_slope, r.expected_slope, r.summand_slope, r.violations
    );
    Ok(())
}
