use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::Hypergroup;
use crate::error::Result;
use crate::numeric::compensated_sum;

/// A finitely supported real function on the index set (an element of ℓ¹(K)).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSequence<I: Ord> {
    values: BTreeMap<I, f64>,
}

impl<I: Copy + Ord> Default for WeightedSequence<I> {
    fn default() -> Self {
        WeightedSequence {
            values: BTreeMap::new(),
        }
    }
}

impl<I: Copy + Ord> WeightedSequence<I> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The indicator `ε_i` of a single point.
    pub fn delta(i: I) -> Self {
        let mut s = Self::new();
        s.set(i, 1.0);
        s
    }

    pub fn get(&self, i: I) -> f64 {
        self.values.get(&i).copied().unwrap_or(0.0)
    }

    /// Sets `f(i)`; zero values are removed from the support.
    pub fn set(&mut self, i: I, v: f64) {
        if v == 0.0 {
            self.values.remove(&i);
        } else {
            self.values.insert(i, v);
        }
    }

    pub fn add(&mut self, i: I, v: f64) {
        let cur = self.get(i);
        self.set(i, cur + v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (I, f64)> + '_ {
        self.values.iter().map(|(&i, &v)| (i, v))
    }

    pub fn support(&self) -> impl Iterator<Item = I> + '_ {
        self.values.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.iter().map(|(i, v)| (i, c * v)).collect()
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: f64, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, v) in other.iter() {
            out.add(i, c * v);
        }
        out
    }

    /// Haar-weighted ℓ¹ norm `Σ h(n)|f(n)|`.
    pub fn l1_norm<K: Hypergroup<Index = I>>(&self, k: &K) -> Result<f64> {
        let terms = self
            .iter()
            .map(|(i, v)| Ok(k.haar(i)? * v.abs()))
            .collect::<Result<Vec<f64>>>()?;
        Ok(compensated_sum(terms))
    }

    /// Haar-weighted ℓ² norm squared.
    pub fn l2_norm_sq<K: Hypergroup<Index = I>>(&self, k: &K) -> Result<f64> {
        let terms = self
            .iter()
            .map(|(i, v)| Ok(k.haar(i)? * v * v))
            .collect::<Result<Vec<f64>>>()?;
        Ok(compensated_sum(terms))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.axpy(-1.0, other).iter().fold(0.0_f64, |m, (_, v)| m.max(v.abs()))
    }
}

impl<I: Copy + Ord> FromIterator<(I, f64)> for WeightedSequence<I> {
    fn from_iter<T: IntoIterator<Item = (I, f64)>>(iter: T) -> Self {
        let mut s = Self::new();
        for (i, v) in iter {
            s.add(i, v);
        }
        s
    }
}
