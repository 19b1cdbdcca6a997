//! ‖𝒦_h‖₂² against ∫|h(u)|²u^{Q−1}du on H¹.
//!
//! cargo run --release --example plancherel

use oscmult::grid::{Axis, UniformGrid};
use oscmult::heisenberg::{default_plancherel_family, plancherel_check, SynthesisConfig};

fn main() -> oscmult::Result<()> {
    let g = UniformGrid::new(vec![
        Axis { n: 64, extent: 8.0 },
        Axis { n: 64, extent: 8.0 },
        Axis { n: 128, extent: 16.0 },
    ])?;
    let r = plancherel_check(&default_plancherel_family(), &g, &SynthesisConfig::default())?;
    for row in &r.rows {
        println!("{row:?}");
    }
    println!("spread {:.5}, constant {:.5} (1/8 = 0.125)", r.spread, r.constant);
    Ok(())
}
