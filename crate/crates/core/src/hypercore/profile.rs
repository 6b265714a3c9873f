use serde::{Deserialize, Serialize};

use super::{Character, Hypergroup};
use crate::error::{Error, Result};
use crate::numeric::{log_sum, lsq_slope, safe_ln};

/// Window ratio at or below which a series is called convergent.
pub const CONVERGENT_RATIO: f64 = 0.5;
/// Window ratio at or above which a series is called divergent.
pub const DIVERGENT_RATIO: f64 = 0.9;

/// Doubling-window summability test on a series of nonnegative terms.
///
/// With `d1, d2, d3` the sums over shells `(N/8, N/4]`, `(N/4, N/2]` and
/// `(N/2, N]`, the ratio `d3 / d2` decides: `<= 1/2` is convergent, `>= 0.9`
/// is divergent, anything in between is left open.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summability {
    pub convergent: bool,
    pub divergent: bool,
    /// `d3 / d2`.
    pub ratio: f64,
    /// `d2 / d1`.
    pub previous_ratio: f64,
    /// `ln` of the partial sum up to `N`.
    pub log_partial: f64,
    /// `ln` of the extrapolated limit (partial sum plus a geometric tail);
    /// infinite when not convergent.
    pub log_limit: f64,
}

impl Summability {
    pub fn limit(&self) -> f64 {
        self.log_limit.exp()
    }

    pub fn partial(&self) -> f64 {
        self.log_partial.exp()
    }
}

fn window(log_terms: &[f64], lo: usize, hi: usize) -> f64 {
    log_sum(
        log_terms[(lo + 1).min(log_terms.len())..=hi.min(log_terms.len() - 1)]
            .iter()
            .copied(),
    )
}

fn log_ratio(num: f64, den: f64) -> f64 {
    match (num == f64::NEG_INFINITY, den == f64::NEG_INFINITY) {
        (true, _) => 0.0,
        (false, true) => f64::INFINITY,
        _ => (num - den).exp(),
    }
}

/// Runs the doubling-window test on `ln` of the per-shell terms `0..=N`.
pub fn window_summability(log_terms: &[f64]) -> Summability {
    let n = log_terms.len().saturating_sub(1);
    let log_partial = log_sum(log_terms.iter().copied());
    if n < 8 {
        return Summability {
            convergent: false,
            divergent: false,
            ratio: f64::NAN,
            previous_ratio: f64::NAN,
            log_partial,
            log_limit: f64::INFINITY,
        };
    }
    let d1 = window(log_terms, n / 8, n / 4);
    let d2 = window(log_terms, n / 4, n / 2);
    let d3 = window(log_terms, n / 2, n);
    let ratio = log_ratio(d3, d2);
    let previous_ratio = log_ratio(d2, d1);
    let convergent = ratio <= CONVERGENT_RATIO;
    let divergent = ratio >= DIVERGENT_RATIO;
    let log_limit = if convergent {
        // Geometric tail fitted through the terms at N/2 and N.
        let (a, b) = (log_terms[n / 2], log_terms[n]);
        if b == f64::NEG_INFINITY || a == f64::NEG_INFINITY {
            log_partial
        } else {
            let lq = (b - a) / (n - n / 2) as f64;
            if lq < 0.0 {
                let tail = b + lq - (-(lq.exp_m1())).ln();
                crate::numeric::log_add(log_partial, tail)
            } else {
                log_partial
            }
        }
    } else {
        f64::INFINITY
    };
    Summability {
        convergent,
        divergent,
        ratio,
        previous_ratio,
        log_partial,
        log_limit,
    }
}

/// Haar-weighted ℓ¹ and ℓ² profiles of a character over shells `0..=N`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormProfile {
    pub n: usize,
    /// `ln Σ_{level(x) = r} h(x)|α(x)|`.
    pub log_l1_terms: Vec<f64>,
    /// `ln Σ_{level(x) = r} h(x)|α(x)|²`.
    pub log_l2_terms: Vec<f64>,
    /// `max_{level(x) = r} |α(x)|`.
    pub shell_max: Vec<f64>,
    pub l1: Summability,
    pub l2: Summability,
    /// Least-squares slope of `ln max|α|` against `ln r` over `[N/2, N]`.
    pub tail_slope: f64,
}

impl NormProfile {
    /// Partial ℓ¹ sums through each shell (may overflow to `inf`).
    pub fn l1_partials(&self) -> Vec<f64> {
        cumulative(&self.log_l1_terms)
    }

    pub fn l2_partials(&self) -> Vec<f64> {
        cumulative(&self.log_l2_terms)
    }
}

fn cumulative(log_terms: &[f64]) -> Vec<f64> {
    let mut acc = f64::NEG_INFINITY;
    log_terms
        .iter()
        .map(|&t| {
            acc = crate::numeric::log_add(acc, t);
            acc.exp()
        })
        .collect()
}

/// Computes the norm profile of `α` on shells `0..=N`, in log space.
pub fn norm_profile<K: Hypergroup, C: Character<K::Index> + ?Sized>(k: &K, alpha: &C, n: usize) -> Result<NormProfile> {
    if n < 8 {
        return Err(Error::Precondition(format!("profile length {n} < 8")));
    }
    let mut log_l1_terms = Vec::with_capacity(n + 1);
    let mut log_l2_terms = Vec::with_capacity(n + 1);
    let mut shell_max = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut l1 = Vec::new();
        let mut l2 = Vec::new();
        let mut mx = 0.0_f64;
        for x in k.shell(r) {
            let lh = k.log_haar(x)?;
            let a = alpha.value(x).norm();
            mx = mx.max(a);
            let la = safe_ln(a);
            l1.push(lh + la);
            l2.push(lh + 2.0 * la);
        }
        log_l1_terms.push(log_sum(l1));
        log_l2_terms.push(log_sum(l2));
        shell_max.push(mx);
    }
    let tail_slope = log_log_slope(&shell_max, n / 2, n);
    Ok(NormProfile {
        n,
        l1: window_summability(&log_l1_terms),
        l2: window_summability(&log_l2_terms),
        log_l1_terms,
        log_l2_terms,
        shell_max,
        tail_slope,
    })
}

/// Least-squares slope of `ln v[r]` against `ln r` for `r` in `[lo, hi]`, `r >= 1`.
pub(crate) fn log_log_slope(v: &[f64], lo: usize, hi: usize) -> f64 {
    let (xs, ys): (Vec<f64>, Vec<f64>) = (lo.max(1)..=hi.min(v.len() - 1))
        .map(|r| ((r as f64).ln(), safe_ln(v[r])))
        .unzip();
    lsq_slope(&xs, &ys)
}
