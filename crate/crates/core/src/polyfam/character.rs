use num_complex::Complex64;
use parking_lot::RwLock;
use std::sync::Arc;

use super::{FamilyKind, RecursionFamily};
use crate::hypercore::Character;

/// The character `n ↦ P_n(x)` of a one-variable family. Values are computed
/// by forward recursion and cached; the cache grows on demand.
pub struct PolyCharacter {
    family: Arc<RecursionFamily>,
    x: f64,
    values: RwLock<Vec<f64>>,
}

impl PolyCharacter {
    pub fn new(family: Arc<RecursionFamily>, x: f64) -> Self {
        PolyCharacter {
            family,
            x,
            values: RwLock::new(Vec::new()),
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn family(&self) -> &Arc<RecursionFamily> {
        &self.family
    }

    /// `P_n(x)`.
    pub fn at(&self, n: usize) -> f64 {
        if let Some(v) = self.values.read().get(n) {
            return *v;
        }
        let len = (n + 1).max(64).next_power_of_two();
        let vals = self.family.eval(self.x, len);
        let v = vals[n];
        *self.values.write() = vals;
        v
    }
}

impl Character<usize> for PolyCharacter {
    fn value(&self, n: usize) -> Complex64 {
        Complex64::new(self.at(n), 0.0)
    }

    fn describe(&self) -> String {
        format!("{} at x={}", self.family.name(), self.x)
    }

    fn asymptotic_slope(&self) -> Option<f64> {
        match self.family.kind() {
            FamilyKind::Jacobi { alpha, .. } if self.x.abs() < 1.0 => Some(-(alpha + 0.5)),
            FamilyKind::Chebyshev if self.x.abs() < 1.0 => Some(0.0),
            _ => None,
        }
    }
}
