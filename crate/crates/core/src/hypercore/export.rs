use serde::{Deserialize, Serialize};

use super::{Hypergroup, IndexKind};
use crate::error::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportEntry<I> {
    pub n: I,
    pub m: I,
    pub measure: Vec<(I, f64)>,
}

/// JSON form of a (truncated) convolution table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableExport<I> {
    pub index_kind: IndexKind,
    pub entries: Vec<ExportEntry<I>>,
    pub haar: Vec<(I, f64)>,
}

impl<I: Serialize> TableExport<I> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

impl<I: Copy + Ord + std::fmt::Debug> TableExport<I> {
    /// Exports all entries `p(n, m)` with `n <= m` inside the ball of the
    /// given radius.
    pub fn from_table<K: Hypergroup<Index = I>>(k: &K, radius: usize) -> Result<Self> {
        let mut elems = k.ball(radius);
        elems.sort();
        let mut entries = Vec::new();
        for (i, &n) in elems.iter().enumerate() {
            for &m in &elems[i..] {
                let p = k.convolve_points(n, m)?;
                entries.push(ExportEntry {
                    n,
                    m,
                    measure: p.atoms().to_vec(),
                });
            }
        }
        let haar = elems.iter().map(|&n| Ok((n, k.haar(n)?))).collect::<Result<Vec<_>>>()?;
        Ok(TableExport {
            index_kind: k.index_kind(),
            entries,
            haar,
        })
    }
}
