use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

use super::{FamilyKind, RecursionFamily};
use crate::error::{Error, Result};
use crate::quadrature::{ln_gamma_abs_sq, GaussRule};

type AngleDensity = dyn Fn(f64) -> f64 + Send + Sync;

/// Orthogonality measure `dπ` of a family on `[-1, 1]` plus atoms.
///
/// The absolutely continuous part is stored in the angle variable
/// `x = cos t` as `t ↦ A(cos t) sin t` (unnormalized) and rescaled
/// numerically so that its mass is `1 - Σ atoms`. Families without a
/// closed-form density fall back to Gauss rules built from the Jacobi matrix.
#[derive(Clone)]
pub struct MeasureDescriptor {
    angle_density: Option<Arc<AngleDensity>>,
    pub atoms: Vec<(f64, f64)>,
}

impl std::fmt::Debug for MeasureDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeasureDescriptor")
            .field("has_density", &self.angle_density.is_some())
            .field("atoms", &self.atoms)
            .finish()
    }
}

impl MeasureDescriptor {
    fn density<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, atoms: Vec<(f64, f64)>) -> Self {
        MeasureDescriptor {
            angle_density: Some(Arc::new(f)),
            atoms,
        }
    }

    pub fn has_density(&self) -> bool {
        self.angle_density.is_some()
    }

    /// Unnormalized density `A(x)` at `x ∈ (-1, 1)`.
    pub fn density_at(&self, x: f64) -> Option<f64> {
        let t = x.clamp(-1.0, 1.0).acos();
        let s = t.sin();
        self.angle_density
            .as_ref()
            .map(|d| if s > 0.0 { d(t) / s } else { 0.0 })
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// A quadrature rule in `x` for `π` with the given number of nodes in the
    /// continuous part; atoms are appended with their exact masses.
    pub fn rule(&self, family: &RecursionFamily, nodes: usize) -> Result<GaussRule> {
        match &self.angle_density {
            Some(d) => {
                let g = GaussRule::legendre(nodes, 0.0, PI);
                let w: Vec<f64> = g.nodes.iter().zip(&g.weights).map(|(&t, &w)| w * d(t)).collect();
                let z: f64 = crate::numeric::compensated_sum(w.iter().copied());
                if !(z.is_finite() && z > 0.0) {
                    return Err(Error::Quadrature(format!(
                        "density mass {z} is not positive and finite"
                    )));
                }
                let scale = (1.0 - self.atom_mass()) / z;
                let mut xs: Vec<f64> = g.nodes.iter().map(|t| t.cos()).collect();
                let mut ws: Vec<f64> = w.iter().map(|v| v * scale).collect();
                for &(x, m) in &self.atoms {
                    xs.push(x);
                    ws.push(m);
                }
                Ok(GaussRule { nodes: xs, weights: ws })
            }
            None => {
                let co = family.coeffs(nodes);
                let (a0, b0) = (family.a0(), family.b0());
                let diag: Vec<f64> = (0..nodes)
                    .map(|n| if n == 0 { b0 } else { a0 * co[n].1 + b0 })
                    .collect();
                let off: Vec<f64> = (0..nodes - 1).map(|n| a0 * (co[n].0 * co[n + 1].2).sqrt()).collect();
                Ok(GaussRule::from_jacobi_matrix(&diag, &off, 1.0))
            }
        }
    }

    /// `∫ f dπ` with the given node budget.
    pub fn integrate<F: Fn(f64) -> f64>(&self, family: &RecursionFamily, nodes: usize, f: F) -> Result<f64> {
        Ok(self.rule(family, nodes)?.integrate(f))
    }
}

/// The orthogonality measure of a family.
pub fn orthogonality_measure(f: &RecursionFamily) -> MeasureDescriptor {
    match f.kind().clone() {
        FamilyKind::Chebyshev => MeasureDescriptor::density(|_| 1.0, Vec::new()),
        FamilyKind::Jacobi { alpha, beta } => MeasureDescriptor::density(
            move |t: f64| {
                let (s, c) = ((t / 2.0).sin(), (t / 2.0).cos());
                (2.0 * s * s).powf(alpha) * (2.0 * c * c).powf(beta) * t.sin()
            },
            Vec::new(),
        ),
        FamilyKind::Pollaczek { eta, mu } => MeasureDescriptor::density(
            move |t: f64| {
                let s = t.sin();
                if s <= 0.0 {
                    return 0.0;
                }
                let cot = t.cos() / s;
                let l = 2.0 * eta * s.ln() + ln_gamma_abs_sq(eta + 0.5, mu * cot) + (2.0 * t - PI) * mu * cot;
                l.exp() * s
            },
            Vec::new(),
        ),
        FamilyKind::Soradi { k } => {
            let x0 = -(k + 1.0 / k) / 2.0;
            MeasureDescriptor::density(
                move |t: f64| {
                    let s = t.sin();
                    s * s / (1.0 + k * k + 2.0 * k * t.cos())
                },
                vec![(x0, 1.0 - 1.0 / (k * k))],
            )
        }
        FamilyKind::Graph { a, b } => {
            let sq = ((a - 1.0) * (b - 1.0)).sqrt();
            let s1 = (a * b - a - b + 2.0) / (2.0 * sq);
            let s0 = (2.0 - a - b) / (2.0 * sq);
            let atoms = if b > a { vec![(s0, (b - a) / b)] } else { Vec::new() };
            MeasureDescriptor::density(
                move |t: f64| {
                    let (s, x) = (t.sin(), t.cos());
                    let den = (s1 - x) * (x - s0);
                    if den <= 0.0 {
                        0.0
                    } else {
                        s * s / den
                    }
                },
                atoms,
            )
        }
        FamilyKind::AssocLegendre { .. } | FamilyKind::Custom { .. } => MeasureDescriptor {
            angle_density: None,
            atoms: Vec::new(),
        },
    }
}

/// Result of [`orthogonality_check`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthogonalityReport {
    pub family: String,
    pub n: usize,
    /// `max_{n,m<=N} |√(h(n)h(m)) ∫ P_n P_m dπ - δ_{nm}|`.
    pub deviation: f64,
    pub nodes: usize,
    pub closed_form_density: bool,
}

fn gram_deviation(f: &RecursionFamily, rule: &GaussRule, n: usize) -> f64 {
    let mut g = vec![vec![0.0; n + 1]; n + 1];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let p = f.eval(x, n);
        for i in 0..=n {
            for j in i..=n {
                g[i][j] += w * p[i] * p[j];
            }
        }
    }
    let sh: Vec<f64> = (0..=n).map(|k| (0.5 * f.log_haar_product(k)).exp()).collect();
    let mut dev = 0.0_f64;
    for i in 0..=n {
        for j in i..=n {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((sh[i] * sh[j] * g[i][j] - target).abs());
        }
    }
    dev
}

/// Gram-matrix check of `∫ P_n P_m dπ = δ_{nm}/h(n)` for `n, m <= N`.
///
/// Starts from `max(nodes, 4N)` nodes and doubles until two successive
/// deviations agree to `1e-8`.
pub fn orthogonality_check(f: &RecursionFamily, n: usize, nodes: usize) -> Result<OrthogonalityReport> {
    let measure = orthogonality_measure(f);
    let mut q = nodes.max(4 * n).max(8);
    let mut prev = f64::NAN;
    for _ in 0..10 {
        let dev = gram_deviation(f, &measure.rule(f, q)?, n);
        if !dev.is_finite() {
            return Err(Error::Quadrature(format!("non-finite Gram deviation at {q} nodes")));
        }
        if (dev - prev).abs() < 1e-8 {
            return Ok(OrthogonalityReport {
                family: f.name(),
                n,
                deviation: dev,
                nodes: q,
                closed_form_density: measure.has_density(),
            });
        }
        prev = dev;
        q *= 2;
    }
    Err(Error::Quadrature(format!(
        "Gram deviation did not settle up to {q} nodes"
    )))
}
