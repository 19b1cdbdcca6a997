use crate::cz_hardy::{AtomProfile, LambdaParams, Split, TailSumConfig};
use crate::heisenberg::SynthesisConfig;
use crate::kernel_rn::{LpScanConfig, PieceKernelGrid};
use crate::multiplier::{ClassTolerances, CutoffDoc, MultiplierDoc, PieceGrid, Verdict};
use serde::{Deserialize, Serialize};

fn osc(theta: f64, beta: f64) -> MultiplierDoc {
    MultiplierDoc::Oscillating {
        theta,
        beta,
        cutoff: CutoffDoc::Auto,
    }
}

/// A cube [−extent, extent)ⁿ with `points` samples per axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub points: usize,
    pub extent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassCheckParams {
    /// Defaults to m_{θ,β} with the class parameters below.
    pub multiplier: Option<MultiplierDoc>,
    pub theta: f64,
    pub beta: f64,
    pub s: f64,
    pub n: usize,
    /// Defaults to ±⌊16/|θ|⌋ capped at 36.
    pub j_min: Option<i32>,
    pub j_max: Option<i32>,
    pub piece_grid: PieceGrid,
    pub tolerances: ClassTolerances,
    /// Tolerance on the fitted large-j slopes of m_{θ,β} against −θβ/2 and θ(2s−β)/2.
    pub slope_tolerance: f64,
    pub expect: Option<Verdict>,
}

impl Default for ClassCheckParams {
    fn default() -> Self {
        ClassCheckParams {
            multiplier: None,
            theta: 0.5,
            beta: 1.0,
            s: 1.0,
            n: 1,
            j_min: None,
            j_max: None,
            piece_grid: PieceGrid::default(),
            tolerances: ClassTolerances::default(),
            slope_tolerance: 0.05,
            expect: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelParams {
    pub multiplier: MultiplierDoc,
    pub n: usize,
    /// Upper frequency truncation Λ.
    pub band_hi: f64,
    pub grid: GridParams,
    /// Binary dump of the kernel.
    pub dump: Option<String>,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams {
            multiplier: osc(0.5, 1.0),
            n: 1,
            band_hi: 64.0,
            grid: GridParams { points: 1 << 14, extent: 256.0 },
            dump: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FsConditionParams {
    pub multiplier: MultiplierDoc,
    pub n: usize,
    pub band_hi: f64,
    pub grid: GridParams,
    /// |y| = 2^{−k}, k = 1..=shifts.
    pub shifts: u32,
    /// Largest admissible integral, if any.
    pub bound: Option<f64>,
}

impl Default for FsConditionParams {
    fn default() -> Self {
        FsConditionParams {
            multiplier: osc(0.5, 1.0),
            n: 1,
            band_hi: 16.0,
            grid: GridParams { points: 1 << 14, extent: 64.0 },
            shifts: 6,
            bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LargePartParams {
    pub multiplier: MultiplierDoc,
    pub s_prime: f64,
    pub j_max: i32,
    pub kernel_grid: PieceKernelGrid,
    /// Relative tolerance of the fitted rate against θ(β−2s′)/2.
    pub rate_tolerance: f64,
    /// Largest admissible remainder beyond j_max.
    pub tail_tolerance: f64,
}

impl Default for LargePartParams {
    fn default() -> Self {
        LargePartParams {
            multiplier: osc(0.5, 2.0),
            s_prime: 0.75,
            j_max: 40,
            kernel_grid: PieceKernelGrid::default(),
            rate_tolerance: 0.25,
            tail_tolerance: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KeyEstimateParams {
    pub count: usize,
    pub s: f64,
    pub n: usize,
    /// Frequency grid of the random symbols.
    pub grid: GridParams,
    pub large_part: Option<LargePartParams>,
}

impl Default for KeyEstimateParams {
    fn default() -> Self {
        KeyEstimateParams {
            count: 100,
            s: 0.75,
            n: 1,
            grid: GridParams { points: 1 << 12, extent: 8.0 },
            large_part: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LpScanParams {
    pub multiplier: MultiplierDoc,
    /// Its `seed` is replaced by the config seed.
    pub scan: LpScanConfig,
    /// Lines with |1/p − 1/2| at most this must be stable.
    pub stable_distance: f64,
    /// Lines with |1/p − 1/2| at least this must grow.
    pub growth_distance: f64,
}

impl Default for LpScanParams {
    fn default() -> Self {
        LpScanParams {
            multiplier: osc(0.5, 0.5),
            scan: LpScanConfig::default(),
            stable_distance: 0.25,
            growth_distance: 0.35,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralFamily {
    #[default]
    Default,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlancherelParams {
    pub family: SpectralFamily,
    pub synthesis: SynthesisConfig,
    /// max/min of the ratios, minus one.
    pub spread_tolerance: f64,
    /// j values for the ‖Φ_j‖₂² scaling fit; empty skips it.
    pub scaling_js: Vec<i32>,
    pub slope_tolerance: f64,
}

impl Default for PlancherelParams {
    fn default() -> Self {
        PlancherelParams {
            family: SpectralFamily::Default,
            synthesis: SynthesisConfig::default(),
            spread_tolerance: 0.02,
            scaling_js: vec![-2, -1, 0, 1, 2],
            slope_tolerance: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeatOracleParams {
    pub synthesis: SynthesisConfig,
    /// Compare on ρ² + |t| ≤ region.
    pub region: f64,
    pub tolerance: f64,
    pub mass_tolerance: f64,
    /// Binary dump of the kernel plus a JSON sidecar.
    pub dump: Option<String>,
}

impl Default for HeatOracleParams {
    fn default() -> Self {
        HeatOracleParams {
            synthesis: SynthesisConfig::default(),
            region: 4.0,
            tolerance: 1e-6,
            mass_tolerance: 1e-3,
            dump: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeightedL2Params {
    pub multiplier: MultiplierDoc,
    pub s: f64,
    pub js: Vec<i32>,
    pub with_derivative: bool,
    pub synthesis: SynthesisConfig,
    /// Largest admissible max/min of ‖|g|^s 𝒦‖₂ / ‖m^j‖_{L²_s} over the pieces.
    pub max_spread: f64,
}

impl Default for WeightedL2Params {
    fn default() -> Self {
        WeightedL2Params {
            multiplier: osc(0.5, 4.0),
            s: 2.1,
            js: vec![1, 2, 3, 4],
            with_derivative: false,
            synthesis: SynthesisConfig::default(),
            max_spread: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeanValueParams {
    /// Decay exponent N of the test function's derivative bound.
    pub n_exp: f64,
    pub densities: Vec<usize>,
    /// Largest admissible relative change between successive densities.
    pub tolerance: f64,
}

impl Default for MeanValueParams {
    fn default() -> Self {
        MeanValueParams {
            n_exp: 4.0,
            densities: vec![2, 4],
            tolerance: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KeyLieParams {
    pub s_grid: Vec<f64>,
    pub synthesis: SynthesisConfig,
}

impl Default for KeyLieParams {
    fn default() -> Self {
        KeyLieParams {
            s_grid: vec![1.0, 1.5, 2.0, 2.5],
            synthesis: SynthesisConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CzParams {
    pub cases: usize,
    pub dims: Vec<usize>,
    /// Cells per axis for each dimension, in the order of `dims`.
    pub points: Vec<usize>,
}

impl Default for CzParams {
    fn default() -> Self {
        CzParams {
            cases: 1000,
            dims: vec![1, 2],
            points: vec![1024, 64],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakFamily {
    #[default]
    Spike,
    Default,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderExpectation {
    #[default]
    Stable,
    Growing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeakTypeParams {
    pub multiplier: MultiplierDoc,
    pub ladder: Vec<f64>,
    pub grid: GridParams,
    pub family: WeakFamily,
    pub expect: LadderExpectation,
    pub max_spread: f64,
}

impl Default for WeakTypeParams {
    fn default() -> Self {
        WeakTypeParams {
            multiplier: osc(0.5, 1.0),
            ladder: vec![16.0, 64.0, 256.0, 1024.0],
            grid: GridParams { points: 1 << 16, extent: 16.0 },
            family: WeakFamily::Spike,
            expect: LadderExpectation::Stable,
            max_spread: 1.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtomTestParams {
    pub multiplier: MultiplierDoc,
    pub levels: Vec<f64>,
    pub truncation: f64,
    pub profile: AtomProfile,
    /// Far field starts at dilate·2^L.
    pub dilate: f64,
    pub grid: GridParams,
    pub max_spread: f64,
    pub min_ablation: f64,
}

impl Default for AtomTestParams {
    fn default() -> Self {
        AtomTestParams {
            multiplier: osc(0.5, 1.0),
            levels: (-6..=6).map(f64::from).collect(),
            truncation: 1024.0,
            profile: AtomProfile::Sine,
            dilate: 8.0,
            grid: GridParams { points: 1 << 20, extent: 1024.0 },
            max_spread: 1.5,
            min_ablation: 3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TailSumParams {
    pub multiplier: MultiplierDoc,
    pub config: TailSumConfig,
    pub slope_tolerance: f64,
}

impl Default for TailSumParams {
    fn default() -> Self {
        TailSumParams {
            multiplier: osc(0.5, 1.0),
            config: TailSumConfig::default(),
            slope_tolerance: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LambdaExperimentParams {
    pub j: i32,
    pub level: f64,
    /// Defaults to the literal rule j + threshold ≤ 0.
    pub split: Option<Split>,
    /// Defaults to the homogeneous dimension `params.q`.
    pub threshold: Option<f64>,
    pub params: LambdaParams,
    /// Pair grid for the near/far partition.
    pub js: Vec<i32>,
    pub levels: Vec<f64>,
}

impl Default for LambdaExperimentParams {
    fn default() -> Self {
        LambdaExperimentParams {
            j: 4,
            level: -3.0,
            split: None,
            threshold: None,
            params: LambdaParams {
                theta: 0.5,
                q: 1.0,
                s: 0.75,
                s_low: 0.25,
            },
            js: (1..=8).collect(),
            levels: (-8..=4).map(f64::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteParams {
    /// Criterion numbers to run; empty runs all ten.
    pub only: Vec<u8>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { only: Vec::new() }
    }
}
