//! Lower bounds for ‖T_Λ‖_{p→p} along a truncation ladder.
//!
//! cargo run --release --example lp_scan

use oscmult::kernel_rn::{lp_scan, p_grid_from_distances, LpScanConfig};
use oscmult::multiplier::MultiplierSpec;

fn main() -> oscmult::Result<()> {
    let cfg = LpScanConfig {
        p_grid: p_grid_from_distances(&[0.0, 0.2, 0.4]),
        ladder: vec![16.0, 64.0, 256.0],
        points: 1 << 15,
        random_sign_inputs: 4,
        ..Default::default()
    };
    let r = lp_scan(&MultiplierSpec::oscillating(0.5, 0.5)?, &cfg)?;
    for l in &r.lines {
        let b: Vec<String> = l.bounds.iter().map(|v| format!("{v:.3}")).collect();
        println!("p = {:.3} (|1/p-1/2| = {:.2}): {} -> {:?}", l.p, l.distance, b.join(" "), l.verdict);
    }
    Ok(())
}
