//! Empirical weak (1,1) constants along a truncation ladder.
//!
//! cargo run --release --example weak_type

use oscmult::cz_hardy::{default_weak_family, weak_type_ladder};
use oscmult::grid::UniformGrid;
use oscmult::multiplier::MultiplierSpec;

fn main() -> oscmult::Result<()> {
    let g = UniformGrid::line(1 << 15, 16.0)?;
    let fam = default_weak_family(&g)?;
    for beta in [1.0, 0.5, -0.5] {
        let r = weak_type_ladder(&MultiplierSpec::oscillating(0.5, beta)?, &[16.0, 64.0, 256.0, 1024.0], &g, &fam)?;
        let c: Vec<String> = r.rows.iter().map(|(l, v)| format!("{l}:{v:.3}")).collect();
        println!("beta {beta:>4}: {}  spread {:.3} increasing {}", c.join(" "), r.spread, r.increasing);
    }
    Ok(())
}
