//! Calderón–Zygmund decomposition of a random input on the line.
//!
//! cargo run --release --example cz_decomposition

use oscmult::cz_hardy::{cz_decompose, random_cz_input};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> oscmult::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (f, alpha) = random_cz_input(&mut rng, 1, 1024)?;
    let cz = cz_decompose(&f, alpha)?;
    println!("alpha = {alpha:.4}, |f|_1 = {:.4}, {} cubes", f.l1(), cz.cubes.len());
    for c in cz.cubes.iter().take(8) {
        println!("  corner {:?} side {} level {:.2} average {:.3}", c.corner, c.side_cells(), c.level, c.average_abs);
    }
    let inv = cz.check();
    println!(
        "|g|_inf {:.4} <= {:.4}, sum |B| {:.4} <= {:.4}, violations {}",
        inv.good_sup,
        inv.good_bound,
        inv.cube_measure,
        inv.measure_bound,
        inv.violations.len()
    );
    Ok(())
}
