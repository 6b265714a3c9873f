use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Character, Hypergroup, IndexKind, PointMeasure, TableCharacter, MASS_TOLERANCE, NEGATIVITY_TOLERANCE};
use crate::error::{Error, Result};

/// A finite commutative hypergroup given by its full multiplication table.
/// Elements are `0..len`, labelled by strings.
#[derive(Clone, Debug)]
pub struct FiniteHypergroup {
    labels: Vec<String>,
    identity: usize,
    inv: Vec<usize>,
    conv: Vec<Vec<Arc<PointMeasure<usize>>>>,
    haar: Vec<f64>,
}

/// JSON description of a finite hypergroup.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiniteSpec {
    Cyclic {
        cyclic: usize,
        #[serde(default = "default_prefix")]
        prefix: String,
    },
    Table {
        labels: Vec<String>,
        identity: String,
        /// Pairs `x -> x̃`; unlisted elements are self-inverse.
        #[serde(default)]
        involution: BTreeMap<String, String>,
        products: Vec<ProductEntry>,
    },
}

fn default_prefix() -> String {
    String::from("g")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub n: String,
    pub m: String,
    pub measure: Vec<(String, f64)>,
}

impl FiniteHypergroup {
    /// The group hypergroup `ℤ_n`. Element `i` is labelled `e` for `i = 0`,
    /// `prefix` for `i = 1` and `prefix{i}` otherwise.
    pub fn cyclic(n: usize, prefix: &str) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cyclic order must be positive".into()));
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => prefix.to_string(),
                _ => format!("{prefix}{i}"),
            })
            .collect();
        let inv = (0..n).map(|i| (n - i) % n).collect();
        Self::from_fn(labels, 0, inv, |a, b| vec![((a + b) % n, 1.0)])
    }

    /// Builds and validates a table from a product rule.
    pub fn from_fn<F>(labels: Vec<String>, identity: usize, inv: Vec<usize>, product: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Vec<(usize, f64)>,
    {
        let n = labels.len();
        if inv.len() != n || identity >= n {
            return Err(Error::Precondition(
                "involution or identity does not match the label set".into(),
            ));
        }
        for i in 0..n {
            if inv[i] >= n || inv[inv[i]] != i {
                return Err(Error::Structure(format!(
                    "involution is not involutive at {}",
                    labels[i]
                )));
            }
        }
        if inv[identity] != identity {
            return Err(Error::Structure("identity is not self-inverse".into()));
        }
        let mut conv = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let m = PointMeasure::from_weights(product(a, b), NEGATIVITY_TOLERANCE)?;
                if (m.total() - 1.0).abs() > MASS_TOLERANCE {
                    return Err(Error::Structure(format!(
                        "p({}, {}) has mass {}",
                        labels[a],
                        labels[b],
                        m.total()
                    )));
                }
                row.push(Arc::new(m));
            }
            conv.push(row);
        }
        for a in 0..n {
            for b in 0..a {
                if super::measure_distance(&conv[a][b], &conv[b][a]) > MASS_TOLERANCE {
                    return Err(Error::Structure(format!(
                        "p({}, {}) is not symmetric",
                        labels[a], labels[b]
                    )));
                }
            }
            if super::measure_distance(&conv[identity][a], &PointMeasure::dirac(a)) > MASS_TOLERANCE {
                return Err(Error::Structure(format!(
                    "identity does not act trivially on {}",
                    labels[a]
                )));
            }
        }
        let mut haar = Vec::with_capacity(n);
        for a in 0..n {
            let pe = conv[a][inv[a]].mass_at(identity);
            if pe <= 0.0 {
                return Err(Error::Structure(format!("p({0}, {0}~) does not charge e", labels[a])));
            }
            haar.push(1.0 / pe);
        }
        Ok(FiniteHypergroup {
            labels,
            identity,
            inv,
            conv,
            haar,
        })
    }

    pub fn from_spec(spec: &FiniteSpec) -> Result<Self> {
        match spec {
            FiniteSpec::Cyclic { cyclic, prefix } => Self::cyclic(*cyclic, prefix),
            FiniteSpec::Table {
                labels,
                identity,
                involution,
                products,
            } => {
                let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
                if pos.len() != labels.len() {
                    return Err(Error::Precondition("duplicate labels".into()));
                }
                let find = |l: &str| pos.get(l).copied().ok_or_else(|| Error::Index(l.to_string()));
                let e = find(identity)?;
                let mut inv: Vec<usize> = (0..labels.len()).collect();
                for (a, b) in involution {
                    inv[find(a)?] = find(b)?;
                }
                let mut table: HashMap<(usize, usize), Vec<(usize, f64)>> = HashMap::new();
                for entry in products {
                    let (a, b) = (find(&entry.n)?, find(&entry.m)?);
                    let w = entry
                        .measure
                        .iter()
                        .map(|(t, w)| Ok((find(t)?, *w)))
                        .collect::<Result<Vec<_>>>()?;
                    table.insert((a, b), w.clone());
                    table.entry((b, a)).or_insert(w);
                }
                let missing = (0..labels.len())
                    .flat_map(|a| (0..labels.len()).map(move |b| (a, b)))
                    .find(|&(a, b)| a != e && b != e && !table.contains_key(&(a, b)));
                if let Some((a, b)) = missing {
                    return Err(Error::Precondition(format!(
                        "missing product {} * {}",
                        labels[a], labels[b]
                    )));
                }
                Self::from_fn(labels.clone(), e, inv, |a, b| {
                    if a == e {
                        vec![(b, 1.0)]
                    } else if b == e {
                        vec![(a, 1.0)]
                    } else {
                        table[&(a, b)].clone()
                    }
                })
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_spec(&serde_json::from_str(text)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Haar weights scaled to total mass 1.
    pub fn normalized_haar(&self) -> Vec<f64> {
        let total: f64 = self.haar.iter().sum();
        self.haar.iter().map(|h| h / total).collect()
    }
}

impl Hypergroup for FiniteHypergroup {
    type Index = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn involution(&self, x: usize) -> usize {
        self.inv[x]
    }

    fn convolve_points(&self, x: usize, y: usize) -> Result<Arc<PointMeasure<usize>>> {
        self.conv
            .get(x)
            .and_then(|r| r.get(y))
            .cloned()
            .ok_or_else(|| Error::Index(format!("({x}, {y})")))
    }

    fn haar(&self, x: usize) -> Result<f64> {
        self.haar.get(x).copied().ok_or_else(|| Error::Index(x.to_string()))
    }

    fn shell(&self, r: usize) -> Vec<usize> {
        match r {
            0 => vec![self.identity],
            1 => (0..self.len()).filter(|&i| i != self.identity).collect(),
            _ => Vec::new(),
        }
    }

    fn level(&self, x: usize) -> usize {
        usize::from(x != self.identity)
    }

    fn cardinality(&self) -> Option<usize> {
        Some(self.len())
    }

    fn index_kind(&self) -> IndexKind {
        IndexKind::Finite
    }

    fn label(&self, x: usize) -> String {
        self.labels.get(x).cloned().unwrap_or_else(|| format!("#{x}"))
    }
}

/// All elements of a finite hypergroup, collected shell by shell.
pub fn finite_elements<K: Hypergroup>(k: &K) -> Result<Vec<K::Index>> {
    let n = k
        .cardinality()
        .ok_or_else(|| Error::Precondition("hypergroup is not finite".into()))?;
    let mut out = Vec::with_capacity(n);
    let mut r = 0;
    while out.len() < n {
        let s = k.shell(r);
        if s.is_empty() && r > n {
            return Err(Error::Structure("shells do not exhaust the index set".into()));
        }
        out.extend(s);
        r += 1;
    }
    Ok(out)
}

/// Largest deviation `|Σ_t p(x, y)(t) χ(t) - χ(x)χ(y)|` over all pairs.
pub fn verify_multiplicative<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    elements: &[K::Index],
    chi: &C,
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (i, &x) in elements.iter().enumerate() {
        for &y in &elements[i..] {
            let lhs: Complex64 = k
                .convolve_points(x, y)?
                .atoms()
                .iter()
                .map(|&(t, w)| chi.value(t) * w)
                .sum();
            worst = worst.max((lhs - chi.value(x) * chi.value(y)).norm());
        }
    }
    Ok(worst)
}

/// Enumerates the characters of a finite commutative hypergroup.
///
/// Characters are the joint eigenvectors of the translation operators. A
/// generic self-adjoint combination of them (in `ℓ²(h)`) is diagonalized;
/// each eigenvector is rescaled to `χ(e) = 1` and checked for
/// multiplicativity within `tol`.
pub fn finite_dual<K: Hypergroup>(k: &K, tol: f64) -> Result<Vec<TableCharacter<K::Index>>> {
    let elems = finite_elements(k)?;
    let n = elems.len();
    let pos: HashMap<K::Index, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut b = DMatrix::<Complex64>::zeros(n, n);
    for (xi, &x) in elems.iter().enumerate() {
        let r = ((xi + 1) as f64 * 2f64.sqrt()).fract();
        let s = ((xi + 1) as f64 * 3f64.sqrt()).fract();
        let xt = k.involution(x);
        let cp = Complex64::new(r, s);
        let cm = Complex64::new(r, -s);
        for (yi, &y) in elems.iter().enumerate() {
            for &(t, w) in k.convolve_points(x, y)?.atoms() {
                b[(yi, pos[&t])] += cp * w;
            }
            for &(t, w) in k.convolve_points(xt, y)?.atoms() {
                b[(yi, pos[&t])] += cm * w;
            }
        }
    }
    let sq: Vec<f64> = elems.iter().map(|&x| k.haar(x).map(f64::sqrt)).collect::<Result<_>>()?;
    let mut hmat = b.clone();
    for i in 0..n {
        for j in 0..n {
            hmat[(i, j)] = b[(i, j)] * (sq[i] / sq[j]);
        }
    }
    // Symmetrize away rounding before the Hermitian solver.
    let hmat = (&hmat + hmat.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(hmat);
    let e = pos[&k.identity()];
    let mut out = Vec::with_capacity(n);
    for c in 0..n {
        let v: Vec<Complex64> = (0..n).map(|i| eig.eigenvectors[(i, c)] / sq[i]).collect();
        if v[e].norm() < 1e-12 {
            return Err(Error::Verification("eigenvector vanishes at the identity".into()));
        }
        let scale = v[e];
        let chi = TableCharacter::new(
            format!("dual#{c}"),
            elems.iter().zip(&v).map(|(&x, &val)| {
                let z = val / scale;
                (x, Complex64::new(clean(z.re), clean(z.im)))
            }),
        );
        let dev = verify_multiplicative(k, &elems, &chi)?;
        if dev > tol {
            return Err(Error::Verification(format!(
                "dual candidate {c} fails multiplicativity by {dev:e}"
            )));
        }
        out.push(chi);
    }
    Ok(out)
}

fn clean(v: f64) -> f64 {
    if v.abs() < 1e-14 {
        0.0
    } else {
        v
    }
}
