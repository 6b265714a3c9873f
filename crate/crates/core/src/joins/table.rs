use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercore::{Character, FiniteHypergroup, Hypergroup, IndexKind, PointMeasure};

/// Elements of `H ∨ J`. `H(e)` is the shared identity; `J(j)` never holds
/// the identity of `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum JoinIndex<I> {
    H(usize),
    J(I),
}

/// The join of a finite hypergroup `H` and a discrete hypergroup `J`.
pub struct JoinTable<J: Hypergroup> {
    h: FiniteHypergroup,
    j: J,
    /// Normalized Haar measure of `H`.
    m_h: Vec<f64>,
}

impl<J: Hypergroup> JoinTable<J> {
    pub fn h(&self) -> &FiniteHypergroup {
        &self.h
    }

    pub fn j(&self) -> &J {
        &self.j
    }

    /// Normalized Haar measure `m_H` of `H`.
    pub fn m_h(&self) -> &[f64] {
        &self.m_h
    }

    /// The Haar measure `m_K = m_H + 1_{J∖{e}} m_J`, unscaled.
    pub fn m_k(&self, x: JoinIndex<J::Index>) -> Result<f64> {
        match x {
            JoinIndex::H(i) => self.m_h.get(i).copied().ok_or_else(|| Error::Index(format!("H({i})"))),
            JoinIndex::J(j) => self.j.haar(j),
        }
    }

    fn embed_j(&self, w: J::Index) -> JoinIndex<J::Index> {
        if w == self.j.identity() {
            JoinIndex::H(self.h.identity())
        } else {
            JoinIndex::J(w)
        }
    }

    fn check_index(&self, x: JoinIndex<J::Index>) -> Result<()> {
        match x {
            JoinIndex::H(i) if i >= self.h.len() => Err(Error::Index(format!("H({i})"))),
            JoinIndex::J(j) if j == self.j.identity() => {
                Err(Error::Index("the identity of J is addressed as H(e)".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Builds `H ∨ J`. `J` must have `h_J(e) = 1`, and labels of `H ∖ {e}` must
/// not occur among the labels of `J` (checked on the ball of radius `label_radius`).
pub fn join<J: Hypergroup>(h: FiniteHypergroup, j: J, label_radius: usize) -> Result<JoinTable<J>> {
    let he = j.haar(j.identity())?;
    if (he - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("J must satisfy h_J(e) = 1, got {he}")));
    }
    let h_labels: HashSet<String> = (0..h.len())
        .filter(|&i| i != h.identity())
        .map(|i| h.label(i))
        .collect();
    for y in j.ball(label_radius) {
        if y != j.identity() && h_labels.contains(&j.label(y)) {
            return Err(Error::Precondition(format!(
                "label {} occurs in both H and J",
                j.label(y)
            )));
        }
    }
    let m_h = h.normalized_haar();
    Ok(JoinTable { h, j, m_h })
}

impl<J: Hypergroup> Hypergroup for JoinTable<J> {
    type Index = JoinIndex<J::Index>;

    fn identity(&self) -> Self::Index {
        JoinIndex::H(self.h.identity())
    }

    fn involution(&self, x: Self::Index) -> Self::Index {
        match x {
            JoinIndex::H(i) => JoinIndex::H(self.h.involution(i)),
            JoinIndex::J(j) => JoinIndex::J(self.j.involution(j)),
        }
    }

    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>> {
        self.check_index(x)?;
        self.check_index(y)?;
        match (x, y) {
            (JoinIndex::H(a), JoinIndex::H(b)) => Ok(Arc::new(self.h.convolve_points(a, b)?.map_index(JoinIndex::H))),
            (JoinIndex::H(_), JoinIndex::J(_)) => Ok(Arc::new(PointMeasure::dirac(y))),
            (JoinIndex::J(_), JoinIndex::H(_)) => Ok(Arc::new(PointMeasure::dirac(x))),
            (JoinIndex::J(a), JoinIndex::J(b)) => {
                let p = self.j.convolve_points(a, b)?;
                let e = self.j.identity();
                let ce = p.mass_at(e);
                let mut atoms: Vec<(Self::Index, f64)> = Vec::with_capacity(p.len() + self.h.len());
                for &(w, c) in p.atoms() {
                    if w != e {
                        atoms.push((self.embed_j(w), c));
                    }
                }
                if ce > 0.0 {
                    for (i, &m) in self.m_h.iter().enumerate() {
                        atoms.push((JoinIndex::H(i), ce * m));
                    }
                }
                Ok(Arc::new(PointMeasure::from_raw(atoms)))
            }
        }
    }

    /// `m_K(x) / m_K(e)`, so that `h(e) = 1` and `h(x) p(x, x̃)({e}) = 1`.
    fn haar(&self, x: Self::Index) -> Result<f64> {
        self.check_index(x)?;
        Ok(self.m_k(x)? / self.m_h[self.h.identity()])
    }

    fn log_haar(&self, x: Self::Index) -> Result<f64> {
        self.check_index(x)?;
        let base = self.m_h[self.h.identity()].ln();
        match x {
            JoinIndex::H(i) => Ok(self.m_h[i].ln() - base),
            JoinIndex::J(j) => Ok(self.j.log_haar(j)? - base),
        }
    }

    /// Shell 0 is all of `H`; shell `r >= 1` is shell `r` of `J`.
    fn shell(&self, r: usize) -> Vec<Self::Index> {
        if r == 0 {
            (0..self.h.len()).map(JoinIndex::H).collect()
        } else {
            let e = self.j.identity();
            self.j
                .shell(r)
                .into_iter()
                .filter(|&w| w != e)
                .map(JoinIndex::J)
                .collect()
        }
    }

    fn level(&self, x: Self::Index) -> usize {
        match x {
            JoinIndex::H(_) => 0,
            JoinIndex::J(j) => self.j.level(j),
        }
    }

    fn cardinality(&self) -> Option<usize> {
        Some(self.h.len() + self.j.cardinality()? - 1)
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Join
    }

    fn label(&self, x: Self::Index) -> String {
        match x {
            JoinIndex::H(i) => self.h.label(i),
            JoinIndex::J(j) => self.j.label(j),
        }
    }
}

/// `γ` on `H ∨ J` with `γ|_H = 1` and `γ|_J = α`.
pub struct ExtendedCharacter<C> {
    pub inner: C,
}

/// Extends a character of `J` to `H ∨ J` by `1` on `H`.
pub fn extend_character<C>(alpha: C) -> ExtendedCharacter<C> {
    ExtendedCharacter { inner: alpha }
}

impl<I: Copy, C: Character<I>> Character<JoinIndex<I>> for ExtendedCharacter<C> {
    fn value(&self, x: JoinIndex<I>) -> Complex64 {
        match x {
            JoinIndex::H(_) => Complex64::new(1.0, 0.0),
            JoinIndex::J(j) => self.inner.value(j),
        }
    }

    fn is_real(&self) -> bool {
        self.inner.is_real()
    }

    fn describe(&self) -> String {
        format!("extension of {}", self.inner.describe())
    }

    fn asymptotic_slope(&self) -> Option<f64> {
        self.inner.asymptotic_slope()
    }
}
