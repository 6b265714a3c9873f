use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::error::{Error, Result};

/// Coefficients in `[-NEGATIVITY_TOLERANCE, 0)` are clamped to zero; anything
/// lower is a structure failure.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-12;

/// Tolerance on the total mass of a point measure.
pub const MASS_TOLERANCE: f64 = 1e-10;

/// A finitely supported measure on the index set, stored sorted by index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointMeasure<I> {
    atoms: Vec<(I, f64)>,
}

impl<I: Copy + Ord + Debug> PointMeasure<I> {
    pub fn dirac(i: I) -> Self {
        PointMeasure { atoms: vec![(i, 1.0)] }
    }

    /// Builds a measure from raw weights: duplicates are merged, weights in
    /// `[-tol, 0)` clamp to zero, exact zeros are dropped and anything below
    /// `-tol` is rejected.
    pub fn from_weights<It: IntoIterator<Item = (I, f64)>>(weights: It, tol: f64) -> Result<Self> {
        let mut merged: BTreeMap<I, f64> = BTreeMap::new();
        for (i, w) in weights {
            *merged.entry(i).or_insert(0.0) += w;
        }
        let mut atoms = Vec::with_capacity(merged.len());
        for (i, w) in merged {
            if w.is_nan() {
                return Err(Error::Structure(format!("NaN weight at {i:?}")));
            }
            if w < -tol {
                return Err(Error::Structure(format!("negative weight {w:e} at {i:?}")));
            }
            if w > 0.0 {
                atoms.push((i, w));
            }
        }
        Ok(PointMeasure { atoms })
    }

    /// No clamping or validation; used for signed intermediate results.
    pub fn from_raw(mut atoms: Vec<(I, f64)>) -> Self {
        atoms.sort_by_key(|a| a.0);
        PointMeasure { atoms }
    }

    pub fn atoms(&self) -> &[(I, f64)] {
        &self.atoms
    }

    pub fn support(&self) -> impl Iterator<Item = I> + '_ {
        self.atoms.iter().map(|a| a.0)
    }

    pub fn mass_at(&self, i: I) -> f64 {
        match self.atoms.binary_search_by(|a| a.0.cmp(&i)) {
            Ok(k) => self.atoms[k].1,
            Err(_) => 0.0,
        }
    }

    pub fn total(&self) -> f64 {
        crate::numeric::compensated_sum(self.atoms.iter().map(|a| a.1))
    }

    pub fn min_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).fold(f64::INFINITY, f64::min)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `∫ f dμ`.
    pub fn integrate<T, F>(&self, f: F) -> T
    where
        F: Fn(I) -> T,
        T: std::ops::Mul<f64, Output = T> + std::iter::Sum<T>,
    {
        self.atoms.iter().map(|&(i, w)| f(i) * w).sum()
    }

    pub fn map_index<J: Copy + Ord + Debug, F: Fn(I) -> J>(&self, f: F) -> PointMeasure<J> {
        let mut merged: BTreeMap<J, f64> = BTreeMap::new();
        for &(i, w) in &self.atoms {
            *merged.entry(f(i)).or_insert(0.0) += w;
        }
        PointMeasure {
            atoms: merged.into_iter().collect(),
        }
    }

    pub fn is_probability(&self, tol: f64) -> bool {
        self.atoms.iter().all(|a| a.1 >= 0.0) && (self.total() - 1.0).abs() <= tol
    }
}

/// Largest pointwise difference between two measures over the union of supports.
pub fn measure_distance<I: Copy + Ord + Debug>(a: &PointMeasure<I>, b: &PointMeasure<I>) -> f64 {
    let mut diff: BTreeMap<I, f64> = BTreeMap::new();
    for &(i, w) in a.atoms() {
        *diff.entry(i).or_insert(0.0) += w;
    }
    for &(i, w) in b.atoms() {
        *diff.entry(i).or_insert(0.0) -= w;
    }
    diff.values().fold(0.0_f64, |m, v| m.max(v.abs()))
}
