//! Discrete commutative hypergroups: convolution tables built from
//! orthogonal-polynomial recursions, joins, Fourier analysis and
//! amenability diagnostics for characters.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amen;
pub mod error;
pub mod hypercore;
pub mod joins;
pub mod multivar;
pub mod numeric;
pub mod polyfam;
pub mod quadrature;

pub use amen::{classify, Thresholds, Verdict};
pub use error::{Error, Result};
pub use hypercore::{
    Character, FiniteHypergroup, FnCharacter, Hypergroup, IndexKind, PointMeasure, TableCharacter, TrivialCharacter,
    WeightedSequence,
};
pub use joins::{join, JoinIndex, JoinTable};
pub use polyfam::{build_table, FamilySpec, PolyCharacter, PolyTable, RecursionFamily};
