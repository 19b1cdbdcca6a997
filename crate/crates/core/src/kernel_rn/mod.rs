//! Kernels of radial multipliers on ℝⁿ, the L¹ estimates built on them, and L^p probes.

mod fs;
mod kernel;
mod key;
mod lp;
mod maximal;
mod operator;

pub use fs::{dyadic_shifts, fefferman_stein_condition, FsReport};
pub use kernel::{kernel_of_piece, kernel_of_radial_multiplier, piece_symbol, radial_symbol, PieceKernelGrid, RadialKernel};
pub use key::{
    cauchy_schwarz_constant, key_estimate_audit, key_estimate_ratio, large_part_l1, random_smooth_symbol, KeyAudit,
    KeyEstimate, LargePartReport, LargePartRow,
};
pub use lp::{lp_scan, p_grid_from_distances, LpLine, LpRow, LpScanConfig, LpScanReport, LpVerdict};
pub use maximal::{ball_indicator, fefferman_stein_vector, hl_maximal, maximal_char_comparison, CharComparison};
pub use operator::{ConvolutionOperator, MultiplierOperator};
