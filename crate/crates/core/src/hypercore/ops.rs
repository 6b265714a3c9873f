use num_complex::Complex64;
use std::collections::{BTreeMap, BTreeSet};

use super::{Character, Hypergroup, PointMeasure, WeightedSequence};
use crate::error::Result;

/// `(T_x f)(y) = Σ_t p(x, y)({t}) f(t)`.
///
/// `p(x, y)` charges `t` exactly when `y` lies in the support of `p(x̃, t)`,
/// so the output support is the union of those supports.
pub fn translate<K: Hypergroup>(
    k: &K,
    x: K::Index,
    f: &WeightedSequence<K::Index>,
) -> Result<WeightedSequence<K::Index>> {
    if x == k.identity() {
        return Ok(f.clone());
    }
    let xt = k.involution(x);
    let mut ys = BTreeSet::new();
    for t in f.support() {
        ys.extend(k.convolve_points(xt, t)?.support());
    }
    let mut out = WeightedSequence::new();
    for y in ys {
        let p = k.convolve_points(x, y)?;
        let v: f64 = p.atoms().iter().map(|&(t, w)| w * f.get(t)).sum();
        out.set(y, v);
    }
    Ok(out)
}

/// `(f * g)(x) = Σ_y h(y) f(y) (T_ỹ g)(x)`.
pub fn convolve<K: Hypergroup>(
    k: &K,
    f: &WeightedSequence<K::Index>,
    g: &WeightedSequence<K::Index>,
) -> Result<WeightedSequence<K::Index>> {
    let mut acc: BTreeMap<K::Index, f64> = BTreeMap::new();
    for (y, fy) in f.iter() {
        let coeff = k.haar(y)? * fy;
        let tg = translate(k, k.involution(y), g)?;
        for (x, v) in tg.iter() {
            *acc.entry(x).or_insert(0.0) += coeff * v;
        }
    }
    Ok(acc.into_iter().collect())
}

/// `f̂(α) = Σ_n h(n) f(n) conj(α(n))`.
pub fn fourier<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    f: &WeightedSequence<K::Index>,
    alpha: &C,
) -> Result<Complex64> {
    let mut re = Vec::with_capacity(f.len());
    let mut im = Vec::with_capacity(f.len());
    for (n, v) in f.iter() {
        let term = alpha.value(n).conj() * (k.haar(n)? * v);
        re.push(term.re);
        im.push(term.im);
    }
    Ok(Complex64::new(
        crate::numeric::compensated_sum(re),
        crate::numeric::compensated_sum(im),
    ))
}

/// Convolution of two finitely supported measures, `μ * ν = Σ μ(x)ν(y) p(x, y)`.
/// Weights are returned without clamping.
pub fn convolve_measures<K: Hypergroup>(
    k: &K,
    mu: &PointMeasure<K::Index>,
    nu: &PointMeasure<K::Index>,
) -> Result<PointMeasure<K::Index>> {
    let mut acc: BTreeMap<K::Index, f64> = BTreeMap::new();
    for &(x, wx) in mu.atoms() {
        for &(y, wy) in nu.atoms() {
            for &(t, w) in k.convolve_points(x, y)?.atoms() {
                *acc.entry(t).or_insert(0.0) += wx * wy * w;
            }
        }
    }
    Ok(PointMeasure::from_raw(acc.into_iter().collect()))
}
