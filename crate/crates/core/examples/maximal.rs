//! Hardy–Littlewood maximal function of ball indicators, and the vector-valued ratio.
//!
//! cargo run --release --example maximal

use oscmult::grid::UniformGrid;
use oscmult::kernel_rn::{fefferman_stein_vector, maximal_char_comparison};

fn main() -> oscmult::Result<()> {
    let line = UniformGrid::line(1 << 12, 32.0)?;
    for r in [0.25, 1.0, 4.0] {
        let c = maximal_char_comparison(&line, &[0.0], r)?;
        println!("r = {r}: M(chi_B)(x)(1+|x|/r) in [{:.3}, {:.3}]", c.lower, c.upper);
    }
    let plane = UniformGrid::cube(2, 128, 16.0)?;
    let balls: Vec<(Vec<f64>, f64)> = (0..8).map(|k| (vec![-6.0 + 1.7 * k as f64, 0.5 * k as f64 - 2.0], 0.5 + 0.2 * k as f64)).collect();
    println!("vector ratio over 8 balls: {:.4}", fefferman_stein_vector(&plane, &balls)?);
    Ok(())
}
