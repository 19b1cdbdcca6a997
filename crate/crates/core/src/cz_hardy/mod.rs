//! Calderón–Zygmund decomposition, the (j, B) pair bookkeeping, atoms, and the weak-type and tail probes.

mod atom;
mod cz;
mod pairs;
mod tail;
mod weak;

pub use atom::{atom_test, make_atom, Atom, AtomProfile, AtomReport, AtomRow};
pub use cz::{cz_decompose, random_cz_input, CzDecomposition, CzInvariants, DyadicCube};
pub use pairs::{
    classify_split, optimal_lambda, pair_exponent, partition_pairs, split_exponents, LambdaChoice, LambdaParams,
    PairPartition, Split,
};
pub use tail::{tail_sum_criterion, TailRow, TailSumConfig, TailSumReport};
pub use weak::{default_weak_family, spike, weak_norm, weak_type_ladder, weak_type_probe, WeakLadder, WeakProbe};
