//! The Heisenberg group H¹ on ℝ³: group law, Korányi norm, kernels of h(√𝓛) by Laguerre synthesis,
//! and the L² diagnostics built on them.

mod analysis;
mod group;
mod synthesis;

pub use analysis::{
    default_key_lie_family, default_plancherel_family, dilated_grid, dyadic_l2_scaling, haar_homogeneity,
    horizontal_derivatives, key_lie_probe, mean_value_check, mean_value_samples, plancherel_check, spectral_moment,
    weighted_l2_group, DyadicScaling, HorizontalDerivatives, KeyLieMember, KeyLieReport, KeyLieRow, PlancherelReport,
    PlancherelRow, SpectralFn, SpectralMember,
};
pub use group::{HeisenbergPoint, KORANYI_CONSTANT, Q};
pub use synthesis::{
    default_group_grid, heat_kernel, heat_kernel_oracle, spectral_cutoff, sublaplacian_kernel, HeisenbergKernel,
    KernelSidecar, SynthesisConfig,
};
