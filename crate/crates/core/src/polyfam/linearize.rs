use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

use super::RecursionFamily;
use crate::error::{Error, Result};
use crate::hypercore::{Hypergroup, IndexKind, PointMeasure, NEGATIVITY_TOLERANCE};

/// Dense rows `g(k, m, ·)` for `k = 0..=kmax`, each of length `m + kmax + 1`.
///
/// `g(k+1, m, ·) = [P_1·g(k, m, ·) - b_k g(k, m, ·) - c_k g(k-1, m, ·)] / a_k`
/// with `(P_1 v)(s) = a_{s-1} v(s-1) + b_s v(s) + c_{s+1} v(s+1)`.
pub fn linearization_rows(f: &RecursionFamily, m: usize, kmax: usize) -> Vec<Vec<f64>> {
    let len = m + kmax + 2;
    let co = f.coeffs(len);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(kmax + 1);
    let mut cur = vec![0.0; len];
    cur[m] = 1.0;
    let mut prev = vec![0.0; len];
    rows.push(cur.clone());
    for k in 0..kmax {
        let (ak, bk, ck) = co[k];
        let mut next = vec![0.0; len];
        let lo = m.saturating_sub(k + 1);
        let hi = (m + k + 1).min(len - 1);
        for s in lo..=hi {
            let mut v = co[s].1 * cur[s];
            if s > 0 {
                v += co[s - 1].0 * cur[s - 1];
            }
            if s + 1 < len {
                v += co[s + 1].2 * cur[s + 1];
            }
            v -= bk * cur[s] + ck * prev[s];
            next[s] = v / ak;
        }
        prev = std::mem::replace(&mut cur, next);
        rows.push(cur.clone());
    }
    rows
}

/// Linearization coefficients of `P_n P_m`, validated against the
/// negativity tolerance and restricted to `[|n-m|, n+m]`.
pub fn linearize(f: &RecursionFamily, n: usize, m: usize) -> Result<PointMeasure<usize>> {
    let (n, m) = if n <= m { (n, m) } else { (m, n) };
    let rows = linearization_rows(f, m, n);
    row_to_measure(&rows[n], n, m)
}

fn row_to_measure(row: &[f64], n: usize, m: usize) -> Result<PointMeasure<usize>> {
    let lo = m.abs_diff(n);
    let w = (lo..=(n + m)).map(|t| (t, row[t]));
    PointMeasure::from_weights(w, NEGATIVITY_TOLERANCE).map_err(|e| match e {
        Error::Structure(msg) => Error::Structure(format!("linearization of P_{n} P_{m}: {msg}")),
        other => other,
    })
}

type EntryCache = HashMap<(usize, usize), Arc<PointMeasure<usize>>>;

/// Convolution table of a polynomial hypergroup on ℕ₀ (involution = identity).
///
/// Entries are computed on demand and memoized; computing `p(n, m)` also
/// stores every `p(k, m)` with `k <= n` produced along the way.
pub struct PolyTable {
    family: Arc<RecursionFamily>,
    cache: RwLock<EntryCache>,
    haar: RwLock<HashMap<usize, f64>>,
}

impl PolyTable {
    pub fn new(family: Arc<RecursionFamily>) -> Self {
        PolyTable {
            family,
            cache: RwLock::new(HashMap::new()),
            haar: RwLock::new(HashMap::new()),
        }
    }

    pub fn family(&self) -> &Arc<RecursionFamily> {
        &self.family
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().len()
    }

    fn fill_column(&self, m: usize, kmax: usize) -> Result<()> {
        let rows = linearization_rows(&self.family, m, kmax);
        let mut built = Vec::with_capacity(rows.len());
        for (k, row) in rows.iter().enumerate().take(m + 1) {
            built.push(((k, m), Arc::new(row_to_measure(row, k, m)?)));
        }
        let mut cache = self.cache.write();
        for (key, v) in built {
            cache.entry(key).or_insert(v);
        }
        Ok(())
    }
}

/// Builds a table and materializes every entry with `n, m <= N`.
pub fn build_table(family: Arc<RecursionFamily>, n: usize) -> Result<PolyTable> {
    if n < 1 {
        return Err(Error::Precondition("table size must be at least 1".into()));
    }
    let t = PolyTable::new(family);
    for m in 0..=n {
        t.fill_column(m, m)?;
    }
    Ok(t)
}

impl Hypergroup for PolyTable {
    type Index = usize;

    fn identity(&self) -> usize {
        0
    }

    fn involution(&self, x: usize) -> usize {
        x
    }

    fn convolve_points(&self, x: usize, y: usize) -> Result<Arc<PointMeasure<usize>>> {
        let key = if x <= y { (x, y) } else { (y, x) };
        if let Some(v) = self.cache.read().get(&key) {
            return Ok(Arc::clone(v));
        }
        self.fill_column(key.1, key.0)?;
        Ok(Arc::clone(&self.cache.read()[&key]))
    }

    /// `h(n) = 1 / g(n, n, 0)`.
    fn haar(&self, x: usize) -> Result<f64> {
        if let Some(h) = self.haar.read().get(&x) {
            return Ok(*h);
        }
        let g = self.convolve_points(x, x)?.mass_at(0);
        if g <= 0.0 {
            return Err(Error::Structure(format!("p({x}, {x}) does not charge 0")));
        }
        let h = 1.0 / g;
        self.haar.write().insert(x, h);
        Ok(h)
    }

    /// From the coefficient product formula, which stays finite in log
    /// space where `g(n, n, 0)` underflows.
    fn log_haar(&self, x: usize) -> Result<f64> {
        Ok(self.family.log_haar_product(x))
    }

    fn shell(&self, r: usize) -> Vec<usize> {
        vec![r]
    }

    fn level(&self, x: usize) -> usize {
        x
    }

    fn cardinality(&self) -> Option<usize> {
        None
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Naturals
    }
}

/// Outcome of [`verify_hypergroup`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergroupReport {
    pub family: String,
    pub n: usize,
    pub passed: bool,
    /// Smallest linearization coefficient inside `[|n-m|, n+m]`, with its `(n, m, t)`.
    pub min_coefficient: f64,
    pub min_witness: (usize, usize, usize),
    pub max_row_sum_deviation: f64,
    pub row_sum_witness: (usize, usize),
    /// `max_{1<=n<=N} |a_n + b_n + c_n - 1|`.
    pub max_coefficient_sum_deviation: f64,
    /// `max_n |P_n(x★) - 1|`.
    pub normalization_deviation: f64,
    /// First `n` with `a_n <= 0` or `c_n <= 0`, if any.
    pub nonpositive_coefficient: Option<usize>,
}

/// Checks nonnegativity and row sums of all `g(n, m, ·)` with `n, m <= N`,
/// and the coefficient identities. Report only; never fails.
pub fn verify_hypergroup(f: &RecursionFamily, n: usize) -> HypergroupReport {
    let mut min_coefficient = f64::INFINITY;
    let mut min_witness = (0, 0, 0);
    let mut max_row = 0.0_f64;
    let mut row_witness = (0, 0);
    for m in 0..=n {
        let rows = linearization_rows(f, m, m);
        for (k, row) in rows.iter().enumerate() {
            let lo = m - k;
            let mut sum = 0.0;
            for (t, &v) in row.iter().enumerate().take(m + k + 1).skip(lo) {
                sum += v;
                if v < min_coefficient || v.is_nan() {
                    min_coefficient = v;
                    min_witness = (k, m, t);
                }
            }
            let dev = (sum - 1.0).abs();
            if dev > max_row || dev.is_nan() {
                max_row = dev;
                row_witness = (k, m);
            }
        }
    }
    let co = f.coeffs(n.max(1));
    let max_coefficient_sum_deviation = co[1..]
        .iter()
        .map(|(a, b, c)| (a + b + c - 1.0).abs())
        .fold(0.0, f64::max);
    let nonpositive_coefficient = (1..co.len()).find(|&k| co[k].0 <= 0.0 || co[k].2 <= 0.0);
    let normalization_deviation = f
        .eval(f.x_star(), n)
        .iter()
        .map(|p| (p - 1.0).abs())
        .fold(0.0, f64::max);
    let passed = min_coefficient >= -NEGATIVITY_TOLERANCE
        && max_row <= crate::hypercore::MASS_TOLERANCE
        && max_coefficient_sum_deviation <= 1e-12
        && nonpositive_coefficient.is_none()
        && normalization_deviation <= 1e-9;
    HypergroupReport {
        family: f.name(),
        n,
        passed,
        min_coefficient,
        min_witness,
        max_row_sum_deviation: max_row,
        row_sum_witness: row_witness,
        max_coefficient_sum_deviation,
        normalization_deviation,
        nonpositive_coefficient,
    }
}
