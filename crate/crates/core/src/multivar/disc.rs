use num_complex::Complex64;
use parking_lot::RwLock;
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypercore::{Character, Hypergroup, IndexKind, PointMeasure};
use crate::quadrature::GaussRule;

/// Tolerance below which disc linearization coefficients are dropped.
pub const DISC_FILTER: f64 = 1e-10;
/// Clamp tolerance for disc linearization coefficients (quadrature noise).
pub const DISC_NEGATIVITY: f64 = 1e-8;

/// Jacobi polynomials `P_0 … P_N` at `x`, normalized by `P_n(1) = 1`, for
/// any `α, β > -1`.
pub fn jacobi_normalized(alpha: f64, beta: f64, x: f64, n: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    if n == 0 {
        return p;
    }
    let s0 = alpha + beta + 2.0;
    p.push((x - (beta - alpha) / s0) / (2.0 * (alpha + 1.0) / s0));
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + alpha + beta;
        let a = 2.0 * (kf + alpha + beta + 1.0) * (kf + alpha + 1.0) / ((s + 1.0) * (s + 2.0));
        let c = 2.0 * kf * (kf + beta) / (s * (s + 1.0));
        let b = 1.0 - a - c;
        p.push(((x - b) * p[k] - c * p[k - 1]) / a);
    }
    p
}

/// Disc polynomial `P_{m,n}(z, z̄)` of parameter `α' >= 0`:
/// `P_n^{(α', m-n)}(2|z|²-1) z^{m-n}` for `m >= n` and
/// `P_m^{(α', n-m)}(2|z|²-1) z̄^{n-m}` for `m < n`.
pub fn disc_character(alpha: f64, m: usize, n: usize, z: Complex64) -> Complex64 {
    let u = 2.0 * z.norm_sqr() - 1.0;
    if m >= n {
        let j = jacobi_normalized(alpha, (m - n) as f64, u, n)[n];
        z.powu((m - n) as u32) * j
    } else {
        let j = jacobi_normalized(alpha, (n - m) as f64, u, m)[m];
        z.conj().powu((n - m) as u32) * j
    }
}

/// Polar quadrature on the unit disc for `c (1 - |z|²)^{α'} dA`, with
/// Gauss–Legendre in `u = r²` and the trapezoid rule in the angle.
#[derive(Clone, Debug)]
pub struct DiscQuadrature {
    pub radial: GaussRule,
    pub angles: Vec<f64>,
    /// Weight of node `(i, j)` is `radial_weight[i] * angle_weight`.
    pub radial_weight: Vec<f64>,
    pub angle_weight: f64,
}

impl DiscQuadrature {
    pub fn new(alpha: f64, radial_nodes: usize, angular_nodes: usize) -> Self {
        let radial = GaussRule::legendre(radial_nodes, 0.0, 1.0);
        let raw: Vec<f64> = radial
            .nodes
            .iter()
            .zip(&radial.weights)
            .map(|(&u, &w)| 0.5 * w * (1.0 - u).powf(alpha))
            .collect();
        let angle_weight = 2.0 * PI / angular_nodes as f64;
        let total: f64 = raw.iter().sum::<f64>() * angle_weight * angular_nodes as f64;
        let radial_weight = raw.iter().map(|w| w / total).collect();
        let angles = (0..angular_nodes).map(|j| j as f64 * angle_weight).collect();
        DiscQuadrature {
            radial,
            angles,
            radial_weight,
            angle_weight,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.radial
            .nodes
            .iter()
            .zip(&self.radial_weight)
            .flat_map(move |(&u, &w)| {
                let r = u.sqrt();
                self.angles
                    .iter()
                    .map(move |&phi| (Complex64::from_polar(r, phi), w * self.angle_weight))
            })
    }
}

fn quadrature_for(alpha: f64, cutoff: usize) -> DiscQuadrature {
    // Integrands are polynomials of degree <= 3·cutoff in u (times the weight),
    // and trigonometric polynomials of order <= 3·cutoff in the angle.
    let radial = (2 * cutoff + 16).max(32);
    DiscQuadrature::new(alpha, radial, 8 * cutoff.max(1))
}

/// Linearization of `P_{m,n} P_{m',n'}` in the disc-polynomial basis,
/// `g(k,l) = h(k,l) ∫ P_{mn} P_{m'n'} conj(P_{kl}) dπ`, by polar quadrature.
pub fn disc_linearize(
    alpha: f64,
    p: (usize, usize),
    q: (usize, usize),
    cutoff: usize,
) -> Result<PointMeasure<(usize, usize)>> {
    DiscTable::new(alpha, cutoff)?.linearize(p, q)
}

type Pair = (usize, usize);
type EntryCache = HashMap<(Pair, Pair), Arc<PointMeasure<Pair>>>;

/// Disc-polynomial hypergroup on ℕ₀² up to a total-degree cutoff.
pub struct DiscTable {
    alpha: f64,
    cutoff: usize,
    quad: DiscQuadrature,
    haar: RwLock<HashMap<(usize, usize), f64>>,
    cache: RwLock<EntryCache>,
}

impl DiscTable {
    /// Accepts indices with `m + n <= cutoff`; products may reach `2·cutoff`.
    pub fn new(alpha: f64, cutoff: usize) -> Result<Self> {
        if !(alpha >= 0.0) {
            return Err(Error::Domain(format!("disc parameter must be >= 0, got {alpha}")));
        }
        Ok(DiscTable {
            alpha,
            cutoff,
            quad: quadrature_for(alpha, 2 * cutoff),
            haar: RwLock::new(HashMap::new()),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn check(&self, p: (usize, usize)) -> Result<()> {
        if p.0 + p.1 > 2 * self.cutoff {
            Err(Error::Index(format!("{p:?} exceeds degree cutoff {}", self.cutoff)))
        } else {
            Ok(())
        }
    }

    fn linearize(&self, p: (usize, usize), q: (usize, usize)) -> Result<PointMeasure<(usize, usize)>> {
        self.check(p)?;
        self.check(q)?;
        let (deg, degq) = (p.0 + p.1, q.0 + q.1);
        let shift = (p.0 as isize - p.1 as isize) + (q.0 as isize - q.1 as isize);
        let mut candidates = Vec::new();
        for total in deg.abs_diff(degq)..=(deg + degq) {
            // k - l = shift and k + l = total.
            let twice_k = total as isize + shift;
            if twice_k < 0 || twice_k % 2 != 0 || twice_k as usize > 2 * total {
                continue;
            }
            let k = twice_k as usize / 2;
            candidates.push((k, total - k));
        }
        let mut acc: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for (z, w) in self.quad.points() {
            let pq = disc_character(self.alpha, p.0, p.1, z) * disc_character(self.alpha, q.0, q.1, z) * w;
            for &c in &candidates {
                *acc.entry(c).or_default() += pq * disc_character(self.alpha, c.0, c.1, z).conj();
            }
        }
        let mut weights = Vec::new();
        for (c, v) in acc {
            let g = v.re * self.haar_inner(c)?;
            if g.abs() >= DISC_FILTER {
                weights.push((c, g));
            }
        }
        PointMeasure::from_weights(weights, DISC_NEGATIVITY)
    }

    fn haar_inner(&self, p: (usize, usize)) -> Result<f64> {
        if let Some(h) = self.haar.read().get(&p) {
            return Ok(*h);
        }
        let norm: f64 = self
            .quad
            .points()
            .map(|(z, w)| disc_character(self.alpha, p.0, p.1, z).norm_sqr() * w)
            .sum();
        if norm <= 0.0 {
            return Err(Error::Quadrature(format!("zero norm for {p:?}")));
        }
        let h = 1.0 / norm;
        self.haar.write().insert(p, h);
        Ok(h)
    }
}

impl Hypergroup for DiscTable {
    type Index = (usize, usize);

    fn identity(&self) -> Self::Index {
        (0, 0)
    }

    fn involution(&self, x: Self::Index) -> Self::Index {
        (x.1, x.0)
    }

    fn convolve_points(&self, x: Self::Index, y: Self::Index) -> Result<Arc<PointMeasure<Self::Index>>> {
        let key = if x <= y { (x, y) } else { (y, x) };
        if let Some(v) = self.cache.read().get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(self.linearize(key.0, key.1)?);
        self.cache.write().entry(key).or_insert_with(|| Arc::clone(&v));
        Ok(v)
    }

    /// `1 / ∫ |P_{m,n}|² dπ`.
    fn haar(&self, x: Self::Index) -> Result<f64> {
        self.check(x)?;
        self.haar_inner(x)
    }

    fn shell(&self, r: usize) -> Vec<Self::Index> {
        (0..=r).map(|m| (m, r - m)).collect()
    }

    fn level(&self, x: Self::Index) -> usize {
        x.0 + x.1
    }

    fn cardinality(&self) -> Option<usize> {
        None
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::NaturalsPairs
    }
}

/// The character `(m, n) ↦ P_{m,n}(z, z̄)`; complex off the diagonal.
#[derive(Clone, Copy, Debug)]
pub struct DiscCharacter {
    pub alpha: f64,
    pub z: Complex64,
}

impl Character<(usize, usize)> for DiscCharacter {
    fn value(&self, x: (usize, usize)) -> Complex64 {
        disc_character(self.alpha, x.0, x.1, self.z)
    }

    fn is_real(&self) -> bool {
        self.z.im == 0.0
    }

    fn describe(&self) -> String {
        format!("disc({}) at z={}", self.alpha, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_monomial() {
        let z = Complex64::from_polar(1.0, 0.4);
        let v = disc_character(1.0, 3, 0, z);
        assert!((v - z.powu(3)).norm() < 1e-14);
    }

    #[test]
    fn hermitian_symmetry() {
        let z = Complex64::new(0.3, -0.5);
        for (m, n) in [(2, 5), (4, 1), (3, 3)] {
            let d = disc_character(0.7, m, n, z) - disc_character(0.7, n, m, z).conj();
            assert!(d.norm() < 1e-12);
        }
    }

    #[test]
    fn small_linearization() {
        let g = disc_linearize(0.0, (1, 0), (0, 1), 3).unwrap();
        let keys: Vec<_> = g.support().collect();
        assert_eq!(keys, vec![(0, 0), (1, 1)]);
        assert!((g.total() - 1.0).abs() < 1e-10);
        // For α' = 0: |z|² = 1/2 + (1/2) P_{1,1}, and P_{1,1} = 2|z|² - 1.
        assert!((g.mass_at((0, 0)) - 0.5).abs() < 1e-10);
    }
}
