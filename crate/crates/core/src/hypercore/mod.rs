//! Algebraic kernel for discrete commutative hypergroups.
//!
//! A [`Hypergroup`] exposes the identity, the involution, the point-measure
//! convolution `p(x, y)` and Haar weights. Everything else here (translation,
//! convolution of sequences, Fourier transform, weighted norm profiles) is
//! written once against that trait.

mod character;
mod export;
mod finite;
mod measure;
mod ops;
mod profile;
mod sequence;

use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::Result;

pub use character::{Character, FnCharacter, TableCharacter, TrivialCharacter};
pub use export::{ExportEntry, TableExport};
pub use finite::{finite_dual, finite_elements, verify_multiplicative, FiniteHypergroup, FiniteSpec, ProductEntry};
pub use measure::{measure_distance, PointMeasure, MASS_TOLERANCE, NEGATIVITY_TOLERANCE};
pub use ops::{convolve, convolve_measures, fourier, translate};
pub use profile::{norm_profile, window_summability, NormProfile, Summability, CONVERGENT_RATIO, DIVERGENT_RATIO};
pub use sequence::WeightedSequence;

/// Shape of an index set, used in exports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexKind {
    Naturals,
    NaturalsPairs,
    Finite,
    Join,
}

/// Index types usable in tables.
pub trait IndexLike: Copy + Ord + Hash + Debug + Send + Sync + Serialize + 'static {}
impl<T: Copy + Ord + Hash + Debug + Send + Sync + Serialize + 'static> IndexLike for T {}

/// A discrete commutative hypergroup.
///
/// Implementations must make `convolve_points` symmetric and return a
/// probability measure; `haar` is a Haar weight (any positive multiple of the
/// Haar measure is acceptable, normally `haar(identity) == 1`).
pub trait Hypergroup: Send + Sync {
    type Index: IndexLike;

    fn identity(&self) -> Self::Index;

    fn involution(&self, x: Self::Index) -> Self::Index;

    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>>;

    fn haar(&self, x: Self::Index) -> Result<f64>;

    /// `ln h(x)`; overridden where the weights can leave the f64 range.
    fn log_haar(&self, x: Self::Index) -> Result<f64> {
        Ok(self.haar(x)?.ln())
    }

    /// Elements at exhaustion level `r`; level 0 contains the identity and
    /// the union of all levels is the index set.
    fn shell(&self, r: usize) -> Vec<Self::Index>;

    /// The level whose shell contains `x`.
    fn level(&self, x: Self::Index) -> usize;

    /// `Some(n)` for finite index sets.
    fn cardinality(&self) -> Option<usize>;

    fn index_kind(&self) -> IndexKind;

    fn label(&self, x: Self::Index) -> String {
        format!("{x:?}")
    }

    /// All elements with level `<= radius`.
    fn ball(&self, radius: usize) -> Vec<Self::Index> {
        let mut out = Vec::new();
        for r in 0..=radius {
            let s = self.shell(r);
            if s.is_empty() && self.cardinality().is_some() && r > 0 {
                break;
            }
            out.extend(s);
        }
        out
    }
}

impl<K: Hypergroup + ?Sized> Hypergroup for &K {
    type Index = K::Index;
    fn identity(&self) -> Self::Index {
        (**self).identity()
    }
    fn involution(&self, x: Self::Index) -> Self::Index {
        (**self).involution(x)
    }
    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>> {
        (**self).convolve_points(x, y)
    }
    fn haar(&self, x: Self::Index) -> Result<f64> {
        (**self).haar(x)
    }
    fn log_haar(&self, x: Self::Index) -> Result<f64> {
        (**self).log_haar(x)
    }
    fn shell(&self, r: usize) -> Vec<Self::Index> {
        (**self).shell(r)
    }
    fn level(&self, x: Self::Index) -> usize {
        (**self).level(x)
    }
    fn cardinality(&self) -> Option<usize> {
        (**self).cardinality()
    }
    fn index_kind(&self) -> IndexKind {
        (**self).index_kind()
    }
    fn label(&self, x: Self::Index) -> String {
        (**self).label(x)
    }
}

impl<K: Hypergroup + ?Sized> Hypergroup for Arc<K> {
    type Index = K::Index;
    fn identity(&self) -> Self::Index {
        (**self).identity()
    }
    fn involution(&self, x: Self::Index) -> Self::Index {
        (**self).involution(x)
    }
    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>> {
        (**self).convolve_points(x, y)
    }
    fn haar(&self, x: Self::Index) -> Result<f64> {
        (**self).haar(x)
    }
    fn log_haar(&self, x: Self::Index) -> Result<f64> {
        (**self).log_haar(x)
    }
    fn shell(&self, r: usize) -> Vec<Self::Index> {
        (**self).shell(r)
    }
    fn level(&self, x: Self::Index) -> usize {
        (**self).level(x)
    }
    fn cardinality(&self) -> Option<usize> {
        (**self).cardinality()
    }
    fn index_kind(&self) -> IndexKind {
        (**self).index_kind()
    }
    fn label(&self, x: Self::Index) -> String {
        (**self).label(x)
    }
}
