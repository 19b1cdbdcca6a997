//! Is m_{θ,β}(λ) = λ^{−θβ/2} e^{iλ^θ} in the class for a few (θ, β)?
//!
//! cargo run --release --example class_check

use oscmult::multiplier::{class_membership, default_s_grid, ClassTolerances, MultiplierSpec, PieceGrid};
use oscmult::window::DyadicWindow;

fn main() -> oscmult::Result<()> {
    let w = DyadicWindow::standard();
    let grid = PieceGrid::default();
    let tol = ClassTolerances::default();
    let cases = [
        (0.5, 1.0, 1.0, -8..=24),
        (0.5, 1.0, 2.0, -8..=24),
        (2.0, 0.0, 0.0, -8..=8),
        (-1.0, 2.0, 2.0, -17..=8),
    ];
    for (theta, beta, declared, range) in cases {
        let m = MultiplierSpec::oscillating(theta, beta)?;
        let r = class_membership(&m, &w, theta, declared, 1.0, &default_s_grid(1.0), range, &grid, &tol)?;
        println!(
            "theta {theta:>4} beta {beta:>3} declared beta {declared:>3}: {:?} (linf slope {:.4})",
            r.verdict, r.linf_slope
        );
    }
    Ok(())
}
