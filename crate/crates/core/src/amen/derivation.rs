use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::error::Result;
use crate::hypercore::{convolve, Hypergroup, WeightedSequence};
use crate::multivar::running_max;
use crate::numeric::{lsq_slope, safe_ln};
use crate::polyfam::{PolyTable, RecursionFamily};

/// Outcome of [`derivation_probe`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationReport {
    pub x0: f64,
    pub n: usize,
    /// `max_{n<=N} |P_n'(x₀)|`.
    pub sup_derivative: f64,
    /// Log-log slope of the running maximum of `|P_n'(x₀)|` over `[N/2, N]`.
    pub growth_slope: f64,
    /// `true` when the growth slope is at most 0.05.
    pub appears_bounded: bool,
    /// Largest relative residual of `D(f*g) = f̂ D(g) + ĝ D(f)`.
    pub max_residual: f64,
    pub pairs: usize,
}

/// `D(f) = Σ h(n) f(n) P_n'(x₀)` and `f̂ = Σ h(n) f(n) P_n(x₀)`.
fn pair_values(t: &PolyTable, f: &WeightedSequence<usize>, p: &[f64], d: &[f64]) -> Result<(f64, f64)> {
    let mut fh = 0.0;
    let mut df = 0.0;
    for (n, v) in f.iter() {
        let h = t.haar(n)?;
        fh += h * v * p[n];
        df += h * v * d[n];
    }
    Ok((fh, df))
}

/// Probes the point derivation `D` at `x₀`: growth of `P_n'(x₀)` and the
/// product rule on `pairs` random sparse `f, g` (seeded).
pub fn derivation_probe(
    family: Arc<RecursionFamily>,
    x0: f64,
    n: usize,
    pairs: usize,
    seed: u64,
) -> Result<DerivationReport> {
    let (p, d) = family.eval_with_derivative(x0, 2 * n + 2);
    let abs: Vec<f64> = d[..=n].iter().map(|v| v.abs()).collect();
    let sup_derivative = abs.iter().copied().fold(0.0, f64::max);
    let env = running_max(&abs, (n / 16).max(4));
    let (xs, ys): (Vec<f64>, Vec<f64>) = ((n / 2).max(1)..=n).map(|r| ((r as f64).ln(), safe_ln(env[r]))).unzip();
    let growth_slope = lsq_slope(&xs, &ys);

    let table = PolyTable::new(family);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = n.min(12);
    let random_seq = |rng: &mut ChaCha8Rng| -> WeightedSequence<usize> {
        let k = rng.gen_range(1..=4);
        (0..k)
            .map(|_| (rng.gen_range(0..=span), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let mut max_residual = 0.0_f64;
    for _ in 0..pairs {
        let f = random_seq(&mut rng);
        let g = random_seq(&mut rng);
        let fg = convolve(&table, &f, &g)?;
        let (fh, df) = pair_values(&table, &f, &p, &d)?;
        let (gh, dg) = pair_values(&table, &g, &p, &d)?;
        let (_, dfg) = pair_values(&table, &fg, &p, &d)?;
        let rhs = fh * dg + gh * df;
        let scale = dfg.abs().max((fh * dg).abs()).max((gh * df).abs()).max(1.0);
        max_residual = max_residual.max((dfg - rhs).abs() / scale);
    }
    Ok(DerivationReport {
        x0,
        n,
        sup_derivative,
        growth_slope,
        appears_bounded: growth_slope <= 0.05,
        max_residual,
        pairs,
    })
}
