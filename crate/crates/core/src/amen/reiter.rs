use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypercore::{fourier, translate, Character, Hypergroup, WeightedSequence};

/// Tolerance of the independent residual checks.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Recomputed feasibility residuals of a Reiter certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Residuals {
    /// `|ĝ(α) - 1|`.
    pub normalization: f64,
    /// `‖g‖₁`.
    pub norm: f64,
    /// `‖T_x g - α(x) g‖₁` for each `x ∈ C`.
    pub translation: Vec<(String, f64)>,
    /// `max_x ‖T_x g - α(x) g‖₁ - ε` (nonpositive when within ε).
    pub max_translation_excess: f64,
    pub passed: bool,
}

/// A solution of the modified Reiter program on a finite support.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReiterCertificate<I> {
    pub support: Vec<I>,
    /// `g` as `[[n, value], …]`.
    pub g: Vec<(I, f64)>,
    pub bound: f64,
    pub compact: Vec<I>,
    pub epsilon: f64,
    pub residuals: Residuals,
}

/// Minimizes `ε` subject to `ĝ(α) = 1`, `‖g‖₁ <= M` and
/// `‖T_x g - α(x) g‖₁ <= ε` for `x ∈ C`, over `g` supported on `S`.
///
/// Variables are the Haar-weighted values `G(t) = h(t) g(t)`. With
/// `h(y) p(x, y)({t}) = h(t) p(x̃, t)({y})` the weighted translation residual is
/// `h(y)[(T_x g)(y) - α(x) g(y)] = Σ_t p(x̃, t)({y}) G(t) - α(x) G(y)`.
/// The returned `g` is re-verified independently through the table.
pub fn reiter_lp<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    compact: &[K::Index],
    support: &[K::Index],
    bound: f64,
) -> Result<ReiterCertificate<K::Index>> {
    if !(bound > 0.0) {
        return Err(Error::Precondition(format!("bound M must be positive, got {bound}")));
    }
    let s: BTreeSet<K::Index> = support.iter().copied().collect();
    if !s.contains(&k.identity()) {
        return Err(Error::Precondition("support must contain the identity".into()));
    }
    let c: BTreeSet<K::Index> = compact.iter().copied().collect();
    for &x in s.iter().chain(c.iter()) {
        if alpha.value(x).im.abs() > 1e-12 {
            return Err(Error::Precondition(format!("character is not real at {x:?}")));
        }
    }
    let alpha_s: Vec<f64> = s.iter().map(|&t| alpha.value(t).re).collect();
    if alpha_s.iter().all(|a| a.abs() < 1e-300) {
        return Err(Error::Infeasible("character vanishes on the support".into()));
    }

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let eps = lp.add_var(1.0, (0.0, f64::INFINITY));
    let gvars: BTreeMap<K::Index, minilp::Variable> = s
        .iter()
        .map(|&t| (t, lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))))
        .collect();

    let mut norm_expr = LinearExpr::empty();
    for (&t, &a) in s.iter().zip(&alpha_s) {
        if a != 0.0 {
            norm_expr.add(gvars[&t], a);
        }
    }
    lp.add_constraint(norm_expr, ComparisonOp::Eq, 1.0);

    let mut bound_expr = LinearExpr::empty();
    for &t in &s {
        let u = lp.add_var(0.0, (0.0, f64::INFINITY));
        lp.add_constraint([(u, 1.0), (gvars[&t], -1.0)], ComparisonOp::Ge, 0.0);
        lp.add_constraint([(u, 1.0), (gvars[&t], 1.0)], ComparisonOp::Ge, 0.0);
        bound_expr.add(u, 1.0);
    }
    lp.add_constraint(bound_expr, ComparisonOp::Le, bound);

    for &x in &c {
        let ax = alpha.value(x).re;
        let xt = k.involution(x);
        // rows[y][t] = p(x̃, t)({y}) - α(x) δ_{yt}
        let mut rows: BTreeMap<K::Index, BTreeMap<K::Index, f64>> = BTreeMap::new();
        for &t in &s {
            for &(y, w) in k.convolve_points(xt, t)?.atoms() {
                *rows.entry(y).or_default().entry(t).or_insert(0.0) += w;
            }
            *rows.entry(t).or_default().entry(t).or_insert(0.0) -= ax;
        }
        let mut sum_expr = LinearExpr::empty();
        for (_, row) in rows {
            let tv = lp.add_var(0.0, (0.0, f64::INFINITY));
            let mut plus = vec![(tv, 1.0)];
            let mut minus = vec![(tv, 1.0)];
            for (t, coef) in row {
                if coef != 0.0 {
                    plus.push((gvars[&t], -coef));
                    minus.push((gvars[&t], coef));
                }
            }
            lp.add_constraint(plus, ComparisonOp::Ge, 0.0);
            lp.add_constraint(minus, ComparisonOp::Ge, 0.0);
            sum_expr.add(tv, 1.0);
        }
        sum_expr.add(eps, -1.0);
        lp.add_constraint(sum_expr, ComparisonOp::Le, 0.0);
    }

    let sol = lp.solve().map_err(|e| match e {
        minilp::Error::Infeasible => Error::Infeasible("normalization cannot be met on the support".into()),
        other => Error::Solver(other.to_string()),
    })?;
    let epsilon = sol[eps];
    let mut g = Vec::with_capacity(s.len());
    for &t in &s {
        g.push((t, sol[gvars[&t]] / k.haar(t)?));
    }
    let residuals = check_residuals(k, alpha, &c.iter().copied().collect::<Vec<_>>(), &g, bound, epsilon)?;
    Ok(ReiterCertificate {
        support: s.into_iter().collect(),
        g,
        bound,
        compact: c.into_iter().collect(),
        epsilon,
        residuals,
    })
}

/// Recomputes `ĝ(α)`, `‖g‖₁` and `‖T_x g - α(x) g‖₁` through the table.
pub fn check_residuals<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    compact: &[K::Index],
    g: &[(K::Index, f64)],
    bound: f64,
    epsilon: f64,
) -> Result<Residuals> {
    let gs: WeightedSequence<K::Index> = g.iter().copied().collect();
    let normalization = (fourier(k, &gs, alpha)? - 1.0).norm();
    let norm = gs.l1_norm(k)?;
    let mut translation = Vec::with_capacity(compact.len());
    let mut excess = f64::NEG_INFINITY;
    for &x in compact {
        let tg = translate(k, x, &gs)?;
        let r = tg.axpy(-alpha.value(x).re, &gs).l1_norm(k)?;
        excess = excess.max(r - epsilon);
        translation.push((k.label(x), r));
    }
    let passed = normalization <= RESIDUAL_TOL && norm <= bound + RESIDUAL_TOL && excess <= RESIDUAL_TOL;
    Ok(Residuals {
        normalization,
        norm,
        translation,
        max_translation_excess: excess,
        passed,
    })
}

/// `ε` of the Reiter program for the supports `ball(r)`, `r` in `radii`.
pub fn reiter_curve<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    compact: &[K::Index],
    radii: &[usize],
    bound: f64,
) -> Result<Vec<(usize, f64, bool)>> {
    radii
        .iter()
        .map(|&r| {
            let cert = reiter_lp(k, alpha, compact, &k.ball(r), bound)?;
            Ok((r, cert.epsilon, cert.residuals.passed))
        })
        .collect()
}
