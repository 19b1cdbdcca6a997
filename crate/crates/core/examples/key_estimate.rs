//! ‖𝒦_F‖₁ ≤ C‖F‖_{L²_s} on random smooth symbols, and the large-part sum for β > n.
//!
//! cargo run --release --example key_estimate

use oscmult::grid::UniformGrid;
use oscmult::kernel_rn::{key_estimate_audit, large_part_l1, PieceKernelGrid};
use oscmult::multiplier::MultiplierSpec;
use oscmult::window::DyadicWindow;

fn main() -> oscmult::Result<()> {
    for s in [0.6, 0.75, 1.0] {
        let a = key_estimate_audit(50, s, &UniformGrid::line(1 << 12, 8.0)?, 1)?;
        println!("s = {s}: max ratio {:.4}, C = {:.4}, {} violations", a.max_ratio, a.constant, a.violations);
    }
    let m = MultiplierSpec::oscillating(0.5, 2.0)?;
    let r = large_part_l1(&m, &DyadicWindow::standard(), 1, 0.75, 16, &PieceKernelGrid::default())?;
    println!(
        "large part of m_(1/2,2): fitted rate {:.4} (expected {:.4}), tail {:.3e}",
        r.fitted_rate, r.expected_rate, r.tail_estimate
    );
    Ok(())
}
