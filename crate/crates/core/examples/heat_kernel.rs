//! Heat kernel of the sub-Laplacian on H¹ by Laguerre synthesis, against the closed form.
//!
//! cargo run --release --example heat_kernel

use oscmult::grid::{Axis, UniformGrid};
use oscmult::heisenberg::{heat_kernel, heat_kernel_oracle, SynthesisConfig};

fn main() -> oscmult::Result<()> {
    let g = UniformGrid::new(vec![
        Axis { n: 64, extent: 8.0 },
        Axis { n: 64, extent: 8.0 },
        Axis { n: 128, extent: 16.0 },
    ])?;
    let k = heat_kernel(&g, &SynthesisConfig::default())?;
    println!("mass {:.6}, k_max {}, truncation error {:.2e}", k.mass().re, k.k_max, k.truncation_error + 0.0);
    for idx in [g.origin_index(), g.flatten(&[36, 32, 64]), g.flatten(&[32, 40, 72])] {
        let c = g.coords(idx);
        let want = heat_kernel_oracle(c[0] * c[0] + c[1] * c[1], c[2]);
        let got = k.kernel().values()[idx].re;
        println!("({:.3}, {:.3}, {:.3}): {got:.10} vs {want:.10}", c[0], c[1], c[2]);
    }
    Ok(())
}
