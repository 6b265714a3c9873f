use serde::{Deserialize, Serialize};

use super::{extend_character, JoinTable};
use crate::amen::{classify, Thresholds, Verdict};
use crate::error::Result;
use crate::hypercore::{Character, Hypergroup};

/// Verdicts for `α` on `J` and for its extension on `H ∨ J`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferReport {
    pub verdict_j: Verdict,
    pub verdict_k: Verdict,
    /// Equal tags, or at least one side inconclusive.
    pub agree: bool,
}

/// Runs the classifier on `J` with `α` and on `K = H ∨ J` with the
/// extension of `α` by `1` on `H`.
pub fn transfer_check<J: Hypergroup, C: Character<J::Index>>(
    k: &JoinTable<J>,
    alpha: C,
    n: usize,
    th: &Thresholds,
) -> Result<TransferReport> {
    let verdict_j = classify(k.j(), &alpha, n, th)?;
    let verdict_k = classify(k, &extend_character(&alpha), n, th)?;
    let agree = verdict_j.tag() == verdict_k.tag() || verdict_j.is_inconclusive() || verdict_k.is_inconclusive();
    Ok(TransferReport {
        verdict_j,
        verdict_k,
        agree,
    })
}
