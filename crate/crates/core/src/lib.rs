//! Oscillating spectral multipliers m(λ) ~ λ^{−θβ/2} e^{iλ^θ} on ℝⁿ and on the Heisenberg group H¹.
//!
//! Dyadic class membership lives in [`multiplier`], kernels and L¹/L^p probes on ℝⁿ in [`kernel_rn`],
//! the sub-Laplacian calculus in [`heisenberg`], and the Calderón–Zygmund and atom machinery in
//! [`cz_hardy`]. [`experiment`] wraps all of it behind JSON configs for the `oscmult` binary.
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── class_check.rs        membership verdicts for a few (θ, β)
//! ├── kernel.rs             Gaussian closed form, Plancherel on ℝ and ℝ²
//! ├── fs_condition.rs       kernel smoothness integral over dyadic shifts
//! ├── key_estimate.rs       ‖𝒦_F‖₁ ≤ C‖F‖_{L²_s} audit, large-part sums
//! ├── lp_scan.rs            operator-norm lower bounds across p
//! ├── heat_kernel.rs        Laguerre synthesis against the closed form
//! ├── plancherel.rs         L² norms of group kernels vs the spectral moment
//! ├── cz_decomposition.rs   cubes and invariants for a random input
//! ├── weak_type.rs          weak (1,1) constants along a ladder
//! ├── atom_test.rs          far field of T a with and without cancellation
//! ├── tail_sum.rs           tails per (j, L) vs the weighted-L² majorant
//! ├── lambda.rs             pair partition and balancing Λ
//! ├── maximal.rs            maximal function of ball indicators
//! ├── config_run.rs         JSON config in, CSV out
//! └── configs/              inputs for `oscmult run`
//! ```
//!
//! ```bash
//! cargo run --release --example class_check
//! cargo run --release --bin oscmult -- run crates/core/examples/configs/class_check.json
//! ```

pub mod cz_hardy;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod heisenberg;
pub mod kernel_rn;
pub mod multiplier;
pub mod stats;
pub mod window;

pub use error::{Error, Result};
pub use num_complex::Complex64;
