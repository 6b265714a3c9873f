use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{JoinIndex, JoinTable};
use crate::error::Result;
use crate::hypercore::{convolve_measures, measure_distance, translate, Hypergroup, PointMeasure, WeightedSequence};

/// Per-axiom maximal deviations of a (truncated) join table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JoinReport {
    /// Radius of the `J` window; every element of `H` is always included.
    pub depth: usize,
    pub elements: usize,
    pub triples: usize,
    pub commutativity: f64,
    pub associativity: f64,
    pub involution: f64,
    /// `max(|mass - 1|, -min weight)` over all entries.
    pub probability: f64,
    pub identity: f64,
    /// `|Σ m_K T_x f - Σ m_K f|` over random `f` and window `x`.
    pub haar_invariance: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl JoinReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.commutativity,
            self.associativity,
            self.involution,
            self.probability,
            self.identity,
            self.haar_invariance,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn point<I: Copy + Ord + std::fmt::Debug>(x: I) -> PointMeasure<I> {
    PointMeasure::dirac(x)
}

/// Checks the hypergroup axioms of `H ∨ J` on the window `H ∪ ball_J(depth)`.
/// Associativity is checked on all triples of the window.
pub fn verify_join_axioms<J: Hypergroup>(k: &JoinTable<J>, depth: usize, tolerance: f64) -> Result<JoinReport> {
    let mut elems = k.shell(0);
    for r in 1..=depth {
        let s = k.shell(r);
        if s.is_empty() && k.cardinality().is_some() {
            break;
        }
        elems.extend(s);
    }
    let e = k.identity();
    let mut commutativity = 0.0_f64;
    let mut involution = 0.0_f64;
    let mut probability = 0.0_f64;
    let mut identity = 0.0_f64;
    for &x in &elems {
        identity = identity.max(measure_distance(&*k.convolve_points(e, x)?, &point(x)));
        for &y in &elems {
            let p = k.convolve_points(x, y)?;
            commutativity = commutativity.max(measure_distance(&p, &*k.convolve_points(y, x)?));
            probability = probability.max((p.total() - 1.0).abs()).max(-p.min_weight().min(0.0));
            let lhs = p.map_index(|t| k.involution(t));
            let rhs = k.convolve_points(k.involution(y), k.involution(x))?;
            involution = involution.max(measure_distance(&lhs, &rhs));
        }
    }
    let mut associativity = 0.0_f64;
    let mut triples = 0;
    for &x in &elems {
        for &y in &elems {
            let xy = k.convolve_points(x, y)?;
            for &z in &elems {
                let left = convolve_measures(k, &xy, &point(z))?;
                let yz = k.convolve_points(y, z)?;
                let right = convolve_measures(k, &point(x), &yz)?;
                associativity = associativity.max(measure_distance(&left, &right));
                triples += 1;
            }
        }
    }
    let haar_invariance = haar_invariance(k, &elems, 8, 0x5eed)?;
    let report = JoinReport {
        depth,
        elements: elems.len(),
        triples,
        commutativity,
        associativity,
        involution,
        probability,
        identity,
        haar_invariance,
        tolerance,
        passed: false,
    };
    let passed = report.max_deviation() <= tolerance;
    Ok(JoinReport { passed, ..report })
}

/// `max |Σ_y m_K(y)(T_x f)(y) - Σ_y m_K(y) f(y)|` over `trials` random `f`
/// supported on the window and every `x` in the window.
pub fn haar_invariance<J: Hypergroup>(
    k: &JoinTable<J>,
    window: &[JoinIndex<J::Index>],
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let f: WeightedSequence<_> = window.iter().map(|&y| (y, rng.gen_range(-1.0..1.0))).collect();
        let base: f64 = f.iter().map(|(y, v)| Ok(k.m_k(y)? * v)).sum::<Result<f64>>()?;
        for &x in window {
            let tf = translate(k, x, &f)?;
            let s: f64 = tf.iter().map(|(y, v)| Ok(k.m_k(y)? * v)).sum::<Result<f64>>()?;
            worst = worst.max((s - base).abs());
        }
    }
    Ok(worst)
}
