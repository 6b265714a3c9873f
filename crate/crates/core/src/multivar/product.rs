use num_complex::Complex64;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercore::{Character, Hypergroup, IndexKind, PointMeasure};

/// Direct product `K1 × K2`: pair indices, tensor-product convolution and
/// multiplicative Haar weights.
pub struct ProductTable<A, B> {
    pub first: A,
    pub second: B,
}

impl<A: Hypergroup, B: Hypergroup> ProductTable<A, B> {
    pub fn new(first: A, second: B) -> Self {
        ProductTable { first, second }
    }
}

impl<A: Hypergroup, B: Hypergroup> Hypergroup for ProductTable<A, B> {
    type Index = (A::Index, B::Index);

    fn identity(&self) -> Self::Index {
        (self.first.identity(), self.second.identity())
    }

    fn involution(&self, x: Self::Index) -> Self::Index {
        (self.first.involution(x.0), self.second.involution(x.1))
    }

    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>> {
        let p = self.first.convolve_points(x.0, y.0)?;
        let q = self.second.convolve_points(x.1, y.1)?;
        let mut atoms = Vec::with_capacity(p.len() * q.len());
        for &(s, w) in p.atoms() {
            for &(t, v) in q.atoms() {
                atoms.push(((s, t), w * v));
            }
        }
        Ok(Arc::new(PointMeasure::from_raw(atoms)))
    }

    fn haar(&self, x: Self::Index) -> Result<f64> {
        Ok(self.first.haar(x.0)? * self.second.haar(x.1)?)
    }

    fn log_haar(&self, x: Self::Index) -> Result<f64> {
        Ok(self.first.log_haar(x.0)? + self.second.log_haar(x.1)?)
    }

    /// Pairs whose component levels add up to `r`.
    fn shell(&self, r: usize) -> Vec<Self::Index> {
        let mut out = Vec::new();
        for i in 0..=r {
            let s1 = self.first.shell(i);
            if s1.is_empty() {
                continue;
            }
            let s2 = self.second.shell(r - i);
            for &a in &s1 {
                for &b in &s2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn level(&self, x: Self::Index) -> usize {
        self.first.level(x.0) + self.second.level(x.1)
    }

    fn cardinality(&self) -> Option<usize> {
        Some(self.first.cardinality()? * self.second.cardinality()?)
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::NaturalsPairs
    }

    fn label(&self, x: Self::Index) -> String {
        format!("({},{})", self.first.label(x.0), self.second.label(x.1))
    }
}

/// `α ⊗ β`, the character `(x, y) ↦ α(x) β(y)` of a product.
pub struct ProductCharacter<C1, C2> {
    pub first: C1,
    pub second: C2,
}

impl<I: Copy, J: Copy, C1: Character<I>, C2: Character<J>> Character<(I, J)> for ProductCharacter<C1, C2> {
    fn value(&self, x: (I, J)) -> Complex64 {
        self.first.value(x.0) * self.second.value(x.1)
    }

    fn is_real(&self) -> bool {
        self.first.is_real() && self.second.is_real()
    }

    fn describe(&self) -> String {
        format!("{} ⊗ {}", self.first.describe(), self.second.describe())
    }
}

/// Koornwinder class V index `(n, k)`, `n >= k`, to the product pair `(n - k, k)`.
pub fn koornwinder_to_pair(n: usize, k: usize) -> Result<(usize, usize)> {
    if k > n {
        return Err(Error::Index(format!("({n}, {k}) has k > n")));
    }
    Ok((n - k, k))
}

/// Inverse of [`koornwinder_to_pair`].
pub fn pair_to_koornwinder(p: (usize, usize)) -> (usize, usize) {
    (p.0 + p.1, p.1)
}

/// The admissible-parameter inequality for class V, evaluated as written:
/// `(α+β+1)(α+β+4)²(α+β+6) >= (α-β)²(α² - 2αβ + β² - 5α - 5β - 30)`.
pub fn koornwinder_region(alpha: f64, beta: f64) -> Result<bool> {
    if beta <= -1.0 || alpha < beta {
        return Err(Error::Domain(format!("need alpha >= beta > -1, got ({alpha}, {beta})")));
    }
    let s = alpha + beta;
    let d = alpha - beta;
    let lhs = (s + 1.0) * (s + 4.0).powi(2) * (s + 6.0);
    let rhs = d * d * (alpha * alpha - 2.0 * alpha * beta + beta * beta - 5.0 * alpha - 5.0 * beta - 30.0);
    Ok(lhs >= rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_examples() {
        assert!(koornwinder_region(-0.5, -0.5).unwrap());
        assert!(koornwinder_region(0.0, 0.0).unwrap());
        assert!(koornwinder_region(-1.0, 0.0).is_err());
        assert!(koornwinder_region(0.0, 0.5).is_err());
    }

    #[test]
    fn relabel_round_trip() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(pair_to_koornwinder(koornwinder_to_pair(n, k).unwrap()), (n, k));
            }
        }
        assert!(koornwinder_to_pair(1, 2).is_err());
    }
}
