use super::verdict::{C0Report, DecayVerdict, PointMassEstimate, Thresholds};
use crate::error::{Error, Result};
use crate::hypercore::{norm_profile, Character, Hypergroup};
use crate::multivar::decay_report;

/// `π({α})` from the Haar-weighted ℓ² profile over levels `0..=N`.
pub fn point_mass<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    n: usize,
) -> Result<PointMassEstimate> {
    if n < 32 {
        return Err(Error::Precondition(format!("point mass needs N >= 32, got {n}")));
    }
    let profile = norm_profile(k, alpha, n)?;
    Ok(estimate_from(profile.l2, n))
}

pub(crate) fn estimate_from(s: crate::hypercore::Summability, n: usize) -> PointMassEstimate {
    let value = if s.convergent { (-s.log_limit).exp() } else { 0.0 };
    PointMassEstimate {
        n,
        value,
        convergent: s.convergent,
        divergent: s.divergent,
        inconclusive: !s.convergent && !s.divergent,
        summability: s,
    }
}

/// Whether `α` vanishes at infinity, judged from the shell maxima of `|α|`.
pub fn c0_probe<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    n: usize,
    th: &Thresholds,
) -> Result<C0Report> {
    if n < 32 {
        return Err(Error::Precondition(format!("C0 probe needs N >= 32, got {n}")));
    }
    let shell_max: Vec<f64> = (0..=n)
        .map(|r| {
            k.shell(r)
                .into_iter()
                .map(|x| alpha.value(x).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(c0_from_shells(shell_max, alpha.asymptotic_slope(), th))
}

pub(crate) fn c0_from_shells(shell_max: Vec<f64>, closed_form_slope: Option<f64>, th: &Thresholds) -> C0Report {
    let n = shell_max.len() - 1;
    let rep = decay_report(shell_max).expect("length checked by caller");
    let slope = closed_form_slope.unwrap_or(rep.slope);
    let verdict = if rep.tail_max < th.decay_tail_max && slope < th.decay_slope {
        DecayVerdict::Decays
    } else if rep.tail_max >= th.decay_tail_max && !(slope < th.decay_slope) {
        DecayVerdict::BoundedAway
    } else {
        DecayVerdict::Inconclusive
    };
    C0Report {
        n,
        verdict,
        tail_max: rep.tail_max,
        slope: rep.slope,
        closed_form_slope,
    }
}
