use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeric::fmt_num;

/// Which one-variable family a [`RecursionFamily`] belongs to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyKind {
    Chebyshev,
    Jacobi {
        alpha: f64,
        beta: f64,
    },
    AssocLegendre {
        nu: f64,
    },
    Pollaczek {
        eta: f64,
        mu: f64,
    },
    Soradi {
        k: f64,
    },
    Graph {
        a: f64,
        b: f64,
    },
    /// Explicit coefficients `(a_n, b_n, c_n)` for `n = 1, 2, …`; the last row
    /// repeats beyond the list.
    Custom {
        a0: f64,
        b0: f64,
        rows: Vec<(f64, f64, f64)>,
    },
}

/// JSON family spec, e.g. `{"family":"graph","params":{"a":2,"b":4}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl FamilySpec {
    pub fn new(family: &str, params: &[(&str, f64)]) -> Self {
        FamilySpec {
            family: family.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn build(&self) -> Result<RecursionFamily> {
        let p = |name: &str| {
            self.params
                .get(name)
                .copied()
                .ok_or_else(|| Error::Domain(format!("family {} needs parameter {name}", self.family)))
        };
        match self.family.to_ascii_lowercase().replace('-', "_").as_str() {
            "chebyshev" => Ok(RecursionFamily::chebyshev()),
            "jacobi" => RecursionFamily::jacobi(p("alpha")?, p("beta")?),
            "assoc_legendre" | "associated_legendre" => RecursionFamily::assoc_legendre(p("nu")?),
            "pollaczek" => RecursionFamily::pollaczek(p("eta")?, p("mu")?),
            "soradi" => RecursionFamily::soradi(p("k")?),
            "graph" => RecursionFamily::graph(p("a")?, p("b")?),
            other => Err(Error::Domain(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Default)]
struct CoeffCache {
    /// `rows[n] = (a_n, b_n, c_n)` in hypergroup form; `rows[0] = (1, 0, 0)`.
    rows: Vec<[f64; 3]>,
    /// Family-specific running state (Pollaczek ratios, Legendre partial sums).
    aux: Vec<f64>,
}

/// A one-variable polynomial hypergroup given by its three-term recursion
///
/// `P_0 = 1`, `P_1(x) = (x - b_0)/a_0`,
/// `P_1 P_n = a_n P_{n+1} + b_n P_n + c_n P_{n-1}` for `n >= 1`.
///
/// Coefficients are produced lazily and cached.
pub struct RecursionFamily {
    kind: FamilyKind,
    a0: f64,
    b0: f64,
    x_star: f64,
    cache: RwLock<CoeffCache>,
}

impl Clone for RecursionFamily {
    fn clone(&self) -> Self {
        let c = self.cache.read();
        RecursionFamily {
            kind: self.kind.clone(),
            a0: self.a0,
            b0: self.b0,
            x_star: self.x_star,
            cache: RwLock::new(CoeffCache {
                rows: c.rows.clone(),
                aux: c.aux.clone(),
            }),
        }
    }
}

impl std::fmt::Debug for RecursionFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RecursionFamily")
            .field("kind", &self.kind)
            .field("a0", &self.a0)
            .field("b0", &self.b0)
            .field("x_star", &self.x_star)
            .finish()
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

fn finite(v: &[f64]) -> Result<()> {
    check(v.iter().all(|x| x.is_finite()), || "parameters must be finite".into())
}

impl RecursionFamily {
    fn with(kind: FamilyKind, a0: f64, b0: f64) -> Self {
        RecursionFamily {
            kind,
            a0,
            b0,
            x_star: a0 + b0,
            cache: RwLock::new(CoeffCache {
                rows: vec![[1.0, 0.0, 0.0]],
                aux: Vec::new(),
            }),
        }
    }

    /// Chebyshev polynomials of the first kind: `a_n = c_n = 1/2`.
    pub fn chebyshev() -> Self {
        Self::with(FamilyKind::Chebyshev, 1.0, 0.0)
    }

    /// Jacobi polynomials normalized by `P_n(1) = 1`; requires `α >= β > -1`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        finite(&[alpha, beta])?;
        check(beta > -1.0 && alpha >= beta, || {
            format!("jacobi needs alpha >= beta > -1, got ({alpha}, {beta})")
        })?;
        let s = alpha + beta + 2.0;
        Ok(Self::with(
            FamilyKind::Jacobi { alpha, beta },
            2.0 * (alpha + 1.0) / s,
            (beta - alpha) / s,
        ))
    }

    pub fn assoc_legendre(nu: f64) -> Result<Self> {
        finite(&[nu])?;
        check(nu >= 0.0, || format!("associated Legendre needs nu >= 0, got {nu}"))?;
        Ok(Self::with(FamilyKind::AssocLegendre { nu }, 1.0, 0.0))
    }

    pub fn pollaczek(eta: f64, mu: f64) -> Result<Self> {
        finite(&[eta, mu])?;
        let ok = (eta >= 0.0 && mu > 0.0) || (eta > -0.5 && eta < 0.0 && mu >= 0.0 && mu < eta + 0.5);
        check(ok, || {
            format!("pollaczek parameters ({eta}, {mu}) outside the admissible domain")
        })?;
        Ok(Self::with(FamilyKind::Pollaczek { eta, mu }, 1.0, 0.0))
    }

    /// Generalized Soradi family; requires `k > 1`.
    pub fn soradi(k: f64) -> Result<Self> {
        finite(&[k])?;
        check(k > 1.0, || format!("soradi needs k > 1, got {k}"))?;
        Ok(Self::with(FamilyKind::Soradi { k }, (k + 2.0) / 2.0, -k / 2.0))
    }

    /// Distance-transitive graph family with parameters `a, b >= 2`.
    pub fn graph(a: f64, b: f64) -> Result<Self> {
        finite(&[a, b])?;
        check(a >= 2.0 && b >= 2.0, || {
            format!("graph family needs a, b >= 2, got ({a}, {b})")
        })?;
        let sq = ((a - 1.0) * (b - 1.0)).sqrt();
        Ok(Self::with(
            FamilyKind::Graph { a, b },
            a * sq / (2.0 * (a - 1.0)),
            -(b - 2.0) / (2.0 * sq),
        ))
    }

    /// A family with explicitly listed coefficients.
    pub fn custom(a0: f64, b0: f64, rows: Vec<(f64, f64, f64)>) -> Result<Self> {
        check(!rows.is_empty(), || {
            "custom family needs at least one coefficient row".into()
        })?;
        check(a0 != 0.0, || "a0 must be nonzero".into())?;
        Ok(Self::with(FamilyKind::Custom { a0, b0, rows }, a0, b0))
    }

    pub fn from_spec(spec: &FamilySpec) -> Result<Self> {
        spec.build()
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FamilyKind::Chebyshev => "chebyshev".into(),
            FamilyKind::Jacobi { alpha, beta } => format!("jacobi({alpha},{beta})"),
            FamilyKind::AssocLegendre { nu } => format!("assoc_legendre({nu})"),
            FamilyKind::Pollaczek { eta, mu } => format!("pollaczek({eta},{mu})"),
            FamilyKind::Soradi { k } => format!("soradi({k})"),
            FamilyKind::Graph { a, b } => format!("graph({a},{b})"),
            FamilyKind::Custom { .. } => "custom".into(),
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    /// The point where every `P_n` equals 1 (`a_0 + b_0`).
    pub fn x_star(&self) -> f64 {
        self.x_star
    }

    /// Distinguished evaluation points: `xstar` everywhere, `s0`/`s1` for
    /// the graph family, `x0` (the atom of the orthogonality measure) for
    /// Soradi.
    pub fn named_point(&self, name: &str) -> Option<f64> {
        match (name, &self.kind) {
            ("xstar" | "x*", _) => Some(self.x_star),
            ("s1", FamilyKind::Graph { .. }) => Some(self.x_star),
            ("s0", FamilyKind::Graph { a, b }) => Some((2.0 - a - b) / (2.0 * ((a - 1.0) * (b - 1.0)).sqrt())),
            ("x0", FamilyKind::Soradi { k }) => Some(-(k + 1.0 / k) / 2.0),
            _ => None,
        }
    }

    /// Hypergroup-form coefficients `(a_n, b_n, c_n)`; `n = 0` gives `(1, 0, 0)`.
    pub fn coeff(&self, n: usize) -> (f64, f64, f64) {
        {
            let c = self.cache.read();
            if let Some(r) = c.rows.get(n) {
                return (r[0], r[1], r[2]);
            }
        }
        self.extend(n);
        let r = self.cache.read().rows[n];
        (r[0], r[1], r[2])
    }

    /// Rows `0..=n` of the coefficient table.
    pub fn coeffs(&self, n: usize) -> Vec<(f64, f64, f64)> {
        self.coeff(n);
        self.cache.read().rows[..=n]
            .iter()
            .map(|r| (r[0], r[1], r[2]))
            .collect()
    }

    fn extend(&self, upto: usize) {
        let mut c = self.cache.write();
        while c.rows.len() <= upto {
            let n = c.rows.len();
            let row = self.compute_row(n, &mut c.aux);
            c.rows.push(row);
        }
    }

    fn compute_row(&self, n: usize, aux: &mut Vec<f64>) -> [f64; 3] {
        let nf = n as f64;
        match &self.kind {
            FamilyKind::Chebyshev => [0.5, 0.0, 0.5],
            FamilyKind::Jacobi { alpha, beta } => {
                let (al, be) = (*alpha, *beta);
                let s = 2.0 * nf + al + be;
                let big_a = 2.0 * (nf + al + be + 1.0) * (nf + al + 1.0) / ((s + 1.0) * (s + 2.0));
                let big_c = 2.0 * nf * (nf + be) / (s * (s + 1.0));
                let big_b = 1.0 - big_a - big_c;
                [big_a / self.a0, (big_b - self.b0) / self.a0, big_c / self.a0]
            }
            FamilyKind::AssocLegendre { nu } => {
                // aux[k] = S_k = Σ_{j<=k} ν/(j+ν).
                if aux.is_empty() {
                    aux.push(0.0);
                }
                while aux.len() <= n + 1 {
                    let k = aux.len() as f64;
                    let last = *aux.last().unwrap_or(&0.0);
                    aux.push(last + nu / (k + nu));
                }
                let a = (nf + nu + 1.0) / (2.0 * nf + 2.0 * nu + 1.0) * (1.0 + aux[n + 1]) / (1.0 + aux[n]);
                [a, 0.0, 1.0 - a]
            }
            FamilyKind::Pollaczek { eta, mu } => {
                // aux[k] = ρ_k, the ratio sequence of the standard normalization at 1.
                let lam = eta + 0.5;
                let a = 2.0 * mu;
                while aux.len() <= n {
                    let k = aux.len() as f64;
                    let rho = match aux.last() {
                        None => 2.0 * (lam + a),
                        Some(prev) => (2.0 * (k + lam + a) - (k + 2.0 * lam + a - 1.0) / prev) / (k + 1.0),
                    };
                    aux.push(rho);
                }
                let an = (nf + 1.0) * aux[n] / (2.0 * (nf + lam + a));
                let cn = (nf + 2.0 * lam + a - 1.0) / (2.0 * (nf + lam + a) * aux[n - 1]);
                [an, 0.0, cn]
            }
            FamilyKind::Soradi { k } => {
                let d = |m: f64| m * (k + 1.0) + 1.0;
                [
                    d(nf + 1.0) / ((k + 2.0) * d(nf)),
                    k / (k + 2.0),
                    d(nf - 1.0) / ((k + 2.0) * d(nf)),
                ]
            }
            FamilyKind::Graph { a, b } => graph_row(*a, *b, n),
            FamilyKind::Custom { rows, .. } => {
                let r = rows[(n - 1).min(rows.len() - 1)];
                [r.0, r.1, r.2]
            }
        }
    }

    /// `ln h(n)` from `h(n) = Π_{k<n} a_k / Π_{k<=n} c_k`.
    pub fn log_haar_product(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let rows = self.coeffs(n);
        let num: f64 = rows[1..n].iter().map(|r| r.0.ln()).sum();
        let den: f64 = rows[1..=n].iter().map(|r| r.2.ln()).sum();
        num - den
    }

    /// `P_0(x), …, P_N(x)`.
    ///
    /// Forward recursion, except where `(P_n(x))` is the minimal solution of
    /// the recursion (atoms of the orthogonality measure); there the
    /// forward pass loses all relative accuracy and the values are taken from
    /// the backward continued fraction instead.
    pub fn eval(&self, x: f64, n: usize) -> Vec<f64> {
        let p = self.eval_forward(x, n);
        if n >= 8 && p[1] != 0.0 {
            if let Some(m) = self.minimal_solution(x, n) {
                return m;
            }
        }
        p
    }

    /// Plain forward recursion.
    pub fn eval_forward(&self, x: f64, n: usize) -> Vec<f64> {
        let mut p = Vec::with_capacity(n + 1);
        p.push(1.0);
        if n == 0 {
            return p;
        }
        let p1 = (x - self.b0) / self.a0;
        p.push(p1);
        let rows = self.coeffs(n);
        for k in 1..n {
            let (a, b, c) = rows[k];
            p.push(((p1 - b) * p[k] - c * p[k - 1]) / a);
        }
        p
    }

    /// Ratios `r_k = y_k / y_{k-1}`, `k = 1..=n`, of the minimal solution,
    /// from `r_k = c_k / (P_1 - b_k - a_k r_{k+1})` started at `r_{depth+1} = 0`.
    fn backward_ratios(&self, p1: f64, n: usize, depth: usize) -> Option<Vec<f64>> {
        let rows = self.coeffs(depth + 1);
        let mut r = vec![0.0; depth + 2];
        for k in (1..=depth).rev() {
            let (a, b, c) = rows[k];
            let den = p1 - b - a * r[k + 1];
            if den == 0.0 || !den.is_finite() {
                return None;
            }
            r[k] = c / den;
        }
        r.truncate(n + 1);
        Some(r)
    }

    /// `P_n(x)` as the minimal solution, if it is one.
    fn minimal_solution(&self, x: f64, n: usize) -> Option<Vec<f64>> {
        let p1 = (x - self.b0) / self.a0;
        let r = self.backward_ratios(p1, n, n + 64)?;
        let r2 = self.backward_ratios(p1, n, 2 * n + 128)?;
        let agree = |u: f64, v: f64| (u - v).abs() <= 1e-10 * u.abs().max(v.abs());
        if !agree(r[1], r2[1]) || !agree(r[1], p1) || !agree(r[n], r2[n]) {
            return None;
        }
        let mut p = Vec::with_capacity(n + 1);
        p.push(1.0);
        p.push(p1);
        for k in 2..=n {
            p.push(p[k - 1] * r2[k]);
        }
        Some(p)
    }

    /// Values and first derivatives `P_n'(x)` from the differentiated recursion.
    pub fn eval_with_derivative(&self, x: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
        let p = self.eval(x, n);
        let mut d = Vec::with_capacity(n + 1);
        d.push(0.0);
        if n == 0 {
            return (p, d);
        }
        let p1 = p[1];
        let dp1 = 1.0 / self.a0;
        d.push(dp1);
        let rows = self.coeffs(n);
        for k in 1..n {
            let (a, b, c) = rows[k];
            d.push((dp1 * p[k] + (p1 - b) * d[k] - c * d[k - 1]) / a);
        }
        (p, d)
    }

    /// Coefficient dump `n,a,b,c,h`. Row 0 lists `a_0, b_0` of the native
    /// variable; later rows are in hypergroup form.
    pub fn coefficient_csv(&self, n: usize) -> String {
        let mut out = String::from("n,a,b,c,h\n");
        let _ = writeln!(out, "0,{},{},0,1", self.a0, self.b0);
        let rows = self.coeffs(n);
        for (k, r) in rows.iter().enumerate().skip(1) {
            let _ = writeln!(
                out,
                "{k},{},{},{},{}",
                fmt_num(r.0),
                fmt_num(r.1),
                fmt_num(r.2),
                fmt_num(self.log_haar_product(k).exp())
            );
        }
        out
    }
}

/// `U_n(cos θ) = sin((n+1)θ)/sin θ`, with `U_{-1} = 0`.
fn cheb_u(n: isize, theta: f64) -> f64 {
    if n < 0 {
        0.0
    } else {
        ((n + 1) as f64 * theta).sin() / theta.sin()
    }
}

/// Closed-form graph character scaled by `q^{n/2}`, `q = (a-1)(b-1)`, at `x = cos θ`.
fn graph_scaled(a: f64, b: f64, n: usize, theta: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let sq = ((a - 1.0) * (b - 1.0)).sqrt();
    let n = n as isize;
    (a - 1.0) / a * (cheb_u(n, theta) + (b - 2.0) / sq * cheb_u(n - 1, theta) - cheb_u(n - 2, theta) / (a - 1.0))
}

/// Closed-form graph character `P_n(cos θ)`, valid for `n >= 1` (and `P_0 = 1`).
pub fn graph_closed_form(a: f64, b: f64, n: usize, theta: f64) -> f64 {
    let q = (a - 1.0) * (b - 1.0);
    graph_scaled(a, b, n, theta) / q.powf(n as f64 / 2.0)
}

/// Recovers `(a_n, b_n, c_n)` by solving the scaled recursion
/// `P_1 Q_n = (a_n/√q) Q_{n+1} + b_n Q_n + (c_n √q) Q_{n-1}` at three points.
fn graph_row(a: f64, b: f64, n: usize) -> [f64; 3] {
    let sq = ((a - 1.0) * (b - 1.0)).sqrt();
    let thetas = [0.7_f64, 1.3, 2.1];
    let mut m = nalgebra::Matrix3::<f64>::zeros();
    let mut rhs = nalgebra::Vector3::<f64>::zeros();
    for (i, &t) in thetas.iter().enumerate() {
        let p1 = graph_scaled(a, b, 1, t) / sq;
        m[(i, 0)] = graph_scaled(a, b, n + 1, t);
        m[(i, 1)] = graph_scaled(a, b, n, t);
        m[(i, 2)] = graph_scaled(a, b, n - 1, t);
        rhs[i] = p1 * graph_scaled(a, b, n, t);
    }
    let sol = m.lu().solve(&rhs).unwrap_or_else(nalgebra::Vector3::zeros);
    [sol[0] * sq, sol[1], sol[2] / sq]
}

/// Closed-form Soradi character at `x = cos θ`.
pub fn soradi_closed_form(k: f64, n: usize, theta: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    (((nf + 1.0) * theta).sin() + k * (nf * theta).sin()) / ((nf * k + nf + 1.0) * theta.sin())
}
