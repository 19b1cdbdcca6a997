//! The smoothness integral ∫_{|x|>2|y|^{1−θ}} |K(x−y) − K(x)| dx over dyadic shifts y.
//!
//! cargo run --release --example fs_condition

use oscmult::grid::UniformGrid;
use oscmult::kernel_rn::{dyadic_shifts, fefferman_stein_condition, kernel_of_radial_multiplier};
use oscmult::multiplier::MultiplierSpec;
use oscmult::window::Band;

fn main() -> oscmult::Result<()> {
    let g = UniformGrid::line(1 << 14, 64.0)?;
    let m = MultiplierSpec::oscillating(0.5, 1.0)?;
    for hi in [4.0, 8.0, 16.0] {
        let k = kernel_of_radial_multiplier(&m, 1, Band::upper(hi), &g)?;
        let r = fefferman_stein_condition(&k, 0.5, &dyadic_shifts(1, 6))?;
        let prof: Vec<String> = r.profile.iter().map(|(y, v)| format!("{y}:{v:.3}")).collect();
        println!("band {hi:>4}: sup {:.4}  [{}]", r.sup, prof.join(" "));
    }
    Ok(())
}
