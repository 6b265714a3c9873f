use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeric::{fmt_num, lsq_slope, safe_ln};

/// Threshold on the tail maximum for "decays".
pub const DECAY_TAIL_MAX: f64 = 0.5;
/// Threshold on the log-log slope for "decays".
pub const DECAY_SLOPE: f64 = -0.1;

/// `|P|` along a lattice ray with its tail slope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayReport {
    pub n: usize,
    pub values: Vec<f64>,
    /// Running maximum over a trailing window of width `max(4, N/16)`.
    pub envelope: Vec<f64>,
    /// Least-squares slope of `ln envelope` against `ln n` on `[N/2, N]`.
    pub slope: f64,
    /// `max |P|` over `[N/2, N]`.
    pub tail_max: f64,
    pub decays: bool,
}

impl DecayReport {
    /// CSV with columns `n,abs,envelope,log_slope` (slope repeated on every row).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,abs,envelope,log_slope\n");
        for (i, (v, e)) in self.values.iter().zip(&self.envelope).enumerate() {
            let _ = writeln!(out, "{i},{},{},{}", fmt_num(*v), fmt_num(*e), fmt_num(self.slope));
        }
        out
    }
}

/// Envelope of `v` over trailing windows of width `w`.
pub fn running_max(v: &[f64], w: usize) -> Vec<f64> {
    (0..v.len())
        .map(|i| v[i.saturating_sub(w - 1)..=i].iter().copied().fold(0.0, f64::max))
        .collect()
}

/// Decay classification of `n ↦ |value(n)|` for `n = 0..=N`.
pub fn decay_report(values: Vec<f64>) -> Result<DecayReport> {
    let n = values.len().saturating_sub(1);
    if n < 16 {
        return Err(Error::Precondition(format!("decay probe needs N >= 16, got {n}")));
    }
    let envelope = running_max(&values, (n / 16).max(4));
    let (xs, ys): (Vec<f64>, Vec<f64>) = ((n / 2).max(1)..=n)
        .map(|r| ((r as f64).ln(), safe_ln(envelope[r])))
        .unzip();
    let slope = lsq_slope(&xs, &ys);
    let tail_max = values[n / 2..].iter().copied().fold(0.0, f64::max);
    let decays = tail_max < DECAY_TAIL_MAX && slope < DECAY_SLOPE;
    Ok(DecayReport {
        n,
        values,
        envelope,
        slope,
        tail_max,
        decays,
    })
}

/// Probes `|α(p·n, q·n)|` for `n = 0..=N` along the direction `(p, q)`.
pub fn decay_probe_pairs<F>(alpha: F, direction: (usize, usize), n: usize) -> Result<DecayReport>
where
    F: Fn((usize, usize)) -> f64,
{
    if direction == (0, 0) {
        return Err(Error::Precondition("direction must be nonzero".into()));
    }
    let values = (0..=n)
        .map(|k| alpha((direction.0 * k, direction.1 * k)).abs())
        .collect();
    decay_report(values)
}
