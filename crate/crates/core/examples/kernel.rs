//! Convolution kernels of radial multipliers on ℝ and ℝ².
//!
//! cargo run --release --example kernel

use oscmult::grid::UniformGrid;
use oscmult::kernel_rn::kernel_of_radial_multiplier;
use oscmult::multiplier::MultiplierSpec;
use oscmult::window::Band;
use oscmult::Complex64;

fn main() -> oscmult::Result<()> {
    // e^{−λ²} has kernel 2^{−n/2} e^{−|x|²/4}
    let gauss = MultiplierSpec::custom("exp(-l^2)", 0.0, 0.0, |l| Complex64::new((-l * l).exp(), 0.0))?;
    let g = UniformGrid::line(4096, 64.0)?;
    let k = kernel_of_radial_multiplier(&gauss, 1, Band::upper(12.0), &g)?;
    let at0 = k.kernel().values()[g.origin_index()].re;
    println!("gaussian: K(0) = {at0:.12} (exact {:.12})", 2f64.powf(-0.5));

    let m = MultiplierSpec::oscillating(0.5, 1.0)?;
    for (n, points, extent) in [(1, 1 << 14, 256.0), (2, 1024, 64.0)] {
        let g = UniformGrid::cube(n, points, extent)?;
        let k = kernel_of_radial_multiplier(&m, n, Band::upper(16.0), &g)?;
        println!(
            "m_(1/2,1) on R^{n}: |K|_1 = {:.4}, |K|_2 = {:.6}, |m|_2 = {:.6}, tail beyond 8 = {:.3e}",
            k.l1(),
            k.l2(),
            k.symbol_l2(),
            k.tail(8.0)
        );
    }
    Ok(())
}
