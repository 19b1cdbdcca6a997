//! Multiplier families, dyadic pieces m^j(λ) = m(2^jλ)φ(λ), and the class-condition diagnostics.

mod class;
mod piece;
mod spec;

pub use class::{
    check_condition_neg, check_condition_pos, class_membership, default_s_grid, modulate_and_fit,
    split_small_large, ClassReport, ClassRow, ClassTolerances, ConditionNeg, ConditionPos,
    ModulationFit, PosRow, SequenceCheck, Status, Verdict,
};
pub use piece::{dyadic_piece, DyadicPiece, PieceGrid};
pub use spec::{
    boundedness_threshold, Cutoff, CutoffDoc, Evaluator, MultiplierDoc, MultiplierKind,
    MultiplierSpec,
};
