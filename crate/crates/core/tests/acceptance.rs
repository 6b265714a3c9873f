//! Acceptance criteria, one PASS/FAIL line per check.
//!
//! Run with `cargo test -p hyplab-core --release --test acceptance -- --nocapture`.
//!
//! Lines listed in `KNOWN_RED` are implemented exactly as stated and are
//! expected to print FAIL: the stated expectation contradicts the algebra
//! (see the notes next to each id). Any other FAIL fails the test.

use num_complex::Complex64;
use std::collections::BTreeSet;
use std::sync::Arc;

use hyplab_core::amen::{classify, derivation_probe, point_mass, reiter_lp, Thresholds};
use hyplab_core::hypercore::{finite_elements, fourier, verify_multiplicative, Character, WeightedSequence};
use hyplab_core::joins::{join, join_dual_enumerate, transfer_check, verify_join_axioms};
use hyplab_core::multivar::{decay_probe_pairs, disc_character, DiscTable, ProductCharacter, ProductTable};
use hyplab_core::polyfam::{linearize, orthogonality_check, verify_hypergroup};
use hyplab_core::{FiniteHypergroup, Hypergroup, PolyCharacter, PolyTable, RecursionFamily};

/// Checks whose stated expectation is contradicted by the mathematics:
///
/// * `2/assoc_legendre`: the stated weight `(1 + Σ ν/(k+ν)²)²` differs from
///   `1/g(n,n,0)` of the stated recursion, which is `(1 + Σ ν/(k+ν))²` times
///   the same prefactor (line `2/assoc_legendre_corrected`).
/// * `4/graph(2,4)/s0`, `5/graph(2,4)/s0`: `Σ h(n)|α_{s0}(n)|` diverges, so no
///   α-mean exists; the Reiter minimum stays at 2/3 for any norm bound.
/// * `4/graph(4,2)/s0`: `α_{s0}(n) = (-1)^n` on a bipartite table, which
///   twists a 1-mean into an α-mean.
const KNOWN_RED: &[&str] = &[
    "2/assoc_legendre",
    "4/graph(2,4)/s0",
    "4/graph(4,2)/s0",
    "5/graph(2,4)/s0",
];

struct Report {
    lines: Vec<(String, bool)>,
}

impl Report {
    fn check(&mut self, id: &str, ok: bool, detail: String) {
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), ok));
    }
}

fn families() -> Vec<RecursionFamily> {
    vec![
        RecursionFamily::chebyshev(),
        RecursionFamily::jacobi(0.0, 0.0).unwrap(),
        RecursionFamily::jacobi(0.5, 0.5).unwrap(),
        RecursionFamily::assoc_legendre(1.0).unwrap(),
        RecursionFamily::pollaczek(0.5, 1.0).unwrap(),
        RecursionFamily::soradi(2.0).unwrap(),
        RecursionFamily::graph(2.0, 4.0).unwrap(),
        RecursionFamily::graph(4.0, 2.0).unwrap(),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).map(|k| x + k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

fn structure(r: &mut Report) {
    for f in families() {
        let rep = verify_hypergroup(&f, 32);
        let ok = rep.min_coefficient >= -1e-12
            && rep.max_row_sum_deviation <= 1e-10
            && rep.max_coefficient_sum_deviation <= 1e-12;
        r.check(
            &format!("1/{}", f.name()),
            ok,
            format!(
                "N=32 min coefficient {:.3e} (>= -1e-12), row sums ±{:.1e} (<= 1e-10), a+b+c ±{:.1e} (<= 1e-12)",
                rep.min_coefficient, rep.max_row_sum_deviation, rep.max_coefficient_sum_deviation
            ),
        );
    }
}

fn haar(r: &mut Report) {
    let worst = |f: RecursionFamily, oracle: &dyn Fn(usize) -> f64| -> f64 {
        let t = PolyTable::new(Arc::new(f));
        (1..=20).map(|n| rel(t.haar(n).unwrap(), oracle(n))).fold(0.0, f64::max)
    };
    for (a, b) in [(2.0, 4.0), (4.0, 2.0)] {
        let e = worst(RecursionFamily::graph(a, b).unwrap(), &|n| {
            a * (a - 1.0_f64).powi(n as i32 - 1) * (b - 1.0_f64).powi(n as i32)
        });
        r.check(
            &format!("2/graph({a},{b})"),
            e <= 1e-8,
            format!("max rel err {e:.2e} for n <= 20 (<= 1e-8)"),
        );
    }
    let nu = 1.0;
    let prefactor = |n: usize| (2.0 * nu + 2.0 * n as f64 + 1.0) / (2.0 * nu + 1.0);
    let e = worst(RecursionFamily::assoc_legendre(nu).unwrap(), &|n| {
        let s: f64 = (1..=n).map(|k| nu / (k as f64 + nu).powi(2)).sum();
        prefactor(n) * (1.0 + s).powi(2)
    });
    r.check(
        "2/assoc_legendre",
        e <= 1e-8,
        format!("stated form, max rel err {e:.2e} (<= 1e-8)"),
    );
    let e = worst(RecursionFamily::assoc_legendre(nu).unwrap(), &|n| {
        let s: f64 = (1..=n).map(|k| nu / (k as f64 + nu)).sum();
        prefactor(n) * (1.0 + s).powi(2)
    });
    r.check(
        "2/assoc_legendre_corrected",
        e <= 1e-8,
        format!("max rel err {e:.2e} (<= 1e-8)"),
    );
    let (eta, mu) = (0.5, 1.0);
    let e = worst(RecursionFamily::pollaczek(eta, mu).unwrap(), &|n| {
        let nf = n as f64;
        let s: f64 = (0..=n)
            .map(|k| binomial(n, k) * (2.0 * mu).powi(k as i32) / pochhammer(2.0 * eta + 1.0, k))
            .sum();
        (2.0 * nf + 2.0 * eta + 2.0 * mu + 1.0) * pochhammer(2.0 * eta + 1.0, n)
            / ((2.0 * eta + 2.0 * mu + 1.0) * pochhammer(1.0, n))
            * s
            * s
    });
    r.check(
        "2/pollaczek(0.5,1)",
        e <= 1e-8,
        format!("max rel err {e:.2e} (<= 1e-8)"),
    );
}

fn graph_constants(r: &mut Report) {
    for (a, b) in [(2.0, 4.0), (4.0, 2.0)] {
        let f = RecursionFamily::graph(a, b).unwrap();
        let s0 = f.named_point("s0").unwrap();
        let s1 = f.named_point("s1").unwrap();
        let p1 = f.eval(s1, 40);
        let p0 = f.eval(s0, 40);
        let d1 = p1.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
        let d0 = p0
            .iter()
            .enumerate()
            .map(|(n, v)| (v - (1.0 - b).powi(-(n as i32))).abs())
            .fold(0.0, f64::max);
        r.check(
            &format!("3/graph({a},{b})/P(s1)"),
            d1 <= 1e-10,
            format!("max |P_n(s1) - 1| = {d1:.2e}, n <= 40"),
        );
        r.check(
            &format!("3/graph({a},{b})/P(s0)"),
            d0 <= 1e-10,
            format!("max |P_n(s0) - (1-b)^-n| = {d0:.2e}, n <= 40"),
        );
    }
    let f = Arc::new(RecursionFamily::graph(2.0, 4.0).unwrap());
    let t = PolyTable::new(f.clone());
    let pm = point_mass(&t, &PolyCharacter::new(f.clone(), f.named_point("s0").unwrap()), 200).unwrap();
    r.check(
        "3/graph(2,4)/point_mass",
        (pm.value - 0.5).abs() <= 1e-6,
        format!("{:.9} (0.5 ± 1e-6)", pm.value),
    );
    let f = Arc::new(RecursionFamily::graph(4.0, 2.0).unwrap());
    let t = PolyTable::new(f.clone());
    let pm = point_mass(&t, &PolyCharacter::new(f.clone(), f.named_point("s0").unwrap()), 200).unwrap();
    r.check(
        "3/graph(4,2)/point_mass",
        pm.value == 0.0 && pm.divergent,
        format!("{} (0, divergent = {})", pm.value, pm.divergent),
    );
}

fn classification(r: &mut Report) {
    let th = Thresholds::default();
    let n = 256;
    let mut inconclusive = 0;
    let mut run = |r: &mut Report, id: String, f: &Arc<RecursionFamily>, x: f64, amenable: bool| {
        let t = PolyTable::new(f.clone());
        let v = classify(&t, &PolyCharacter::new(f.clone(), x), n, &th).unwrap();
        if v.is_inconclusive() {
            inconclusive += 1;
        }
        let ok = if amenable { v.is_amenable() } else { v.is_not_amenable() };
        let want = if amenable { "Amenable" } else { "NotAmenable" };
        r.check(&id, ok, format!("x = {x:.6}: {} (expected {want})", v.tag()));
    };
    let interior = [-0.9, -0.5, 0.0, 0.3, 0.7, 0.9];
    for f in [
        RecursionFamily::assoc_legendre(1.0).unwrap(),
        RecursionFamily::pollaczek(0.5, 1.0).unwrap(),
        RecursionFamily::soradi(2.0).unwrap(),
    ] {
        let f = Arc::new(f);
        for x in interior {
            run(r, format!("4/{}/{x}", f.name()), &f, x, false);
        }
    }
    for f in families() {
        let f = Arc::new(f);
        let xs = f.x_star();
        run(r, format!("4/{}/xstar", f.name()), &f, xs, true);
    }
    for (a, b) in [(4.0, 2.0), (2.0, 4.0)] {
        let f = Arc::new(RecursionFamily::graph(a, b).unwrap());
        let name = f.name();
        let s0 = f.named_point("s0").unwrap();
        let s1 = f.named_point("s1").unwrap();
        run(r, format!("4/{name}/s1"), &f, s1, true);
        run(r, format!("4/{name}/s0"), &f, s0, b > a);
        for x in [0.0, 0.3, -0.3] {
            run(r, format!("4/{name}/{x}"), &f, x, false);
        }
    }
    r.check(
        "4/no_inconclusive",
        inconclusive == 0,
        format!("{inconclusive} inconclusive verdicts"),
    );
}

/// `‖T_x g - α(x) g‖₁` through the linearization coefficients directly.
fn translation_residual(f: &RecursionFamily, g: &[(usize, f64)], alpha: &dyn Fn(usize) -> f64, x: usize) -> f64 {
    let t = PolyTable::new(Arc::new(f.clone()));
    let gmap: std::collections::BTreeMap<usize, f64> = g.iter().copied().collect();
    let top = g.iter().map(|p| p.0).max().unwrap_or(0) + x;
    let mut total = 0.0;
    for y in 0..=top {
        let p = linearize(f, x, y).unwrap();
        let ty: f64 = p
            .atoms()
            .iter()
            .map(|&(s, w)| w * gmap.get(&s).copied().unwrap_or(0.0))
            .sum();
        total += t.haar(y).unwrap() * (ty - alpha(x) * gmap.get(&y).copied().unwrap_or(0.0)).abs();
    }
    total
}

fn reiter(r: &mut Report) {
    let cheb = RecursionFamily::chebyshev();
    let t = PolyTable::new(Arc::new(cheb.clone()));
    let c: Vec<usize> = (0..=4).collect();
    let mut eps = Vec::new();
    let mut residuals_ok = true;
    for n in [8usize, 16, 32] {
        let s: Vec<usize> = (0..=n).collect();
        let cert = reiter_lp(&t, &hyplab_core::TrivialCharacter, &c, &s, 10.0).unwrap();
        let worst = c
            .iter()
            .map(|&x| translation_residual(&cheb, &cert.g, &|_| 1.0, x) - cert.epsilon)
            .fold(f64::NEG_INFINITY, f64::max);
        residuals_ok &= cert.residuals.passed && worst <= 1e-8;
        eps.push(cert.epsilon);
    }
    let mono = eps.windows(2).all(|w| w[1] <= w[0] + 1e-9);
    r.check(
        "5/chebyshev/monotone",
        mono,
        format!("ε(8, 16, 32) = {:.4}, {:.4}, {:.4}", eps[0], eps[1], eps[2]),
    );
    r.check(
        "5/chebyshev/eps32",
        eps[2] < 0.2,
        format!("ε(32) = {:.4} (< 0.2)", eps[2]),
    );

    let g = RecursionFamily::graph(2.0, 4.0).unwrap();
    let f = Arc::new(g.clone());
    let gt = PolyTable::new(f.clone());
    let s0 = f.named_point("s0").unwrap();
    let alpha = PolyCharacter::new(f.clone(), s0);
    let s: Vec<usize> = (0..=24).collect();
    let cert = reiter_lp(&gt, &alpha, &[0, 1, 2], &s, 10.0).unwrap();
    let worst = [0usize, 1, 2]
        .iter()
        .map(|&x| translation_residual(&g, &cert.g, &|n| alpha.at(n), x) - cert.epsilon)
        .fold(f64::NEG_INFINITY, f64::max);
    residuals_ok &= cert.residuals.passed && worst <= 1e-8;
    r.check(
        "5/graph(2,4)/s0",
        cert.epsilon <= 0.1,
        format!("ε(24) = {:.5} (<= 0.1)", cert.epsilon),
    );
    r.check(
        "5/residuals",
        residuals_ok,
        "all certificates within 1e-8 of their ε, norm and normalization".into(),
    );
}

fn joins(r: &mut Report) {
    let z2 = FiniteHypergroup::cyclic(2, "h").unwrap();
    let z3 = FiniteHypergroup::cyclic(3, "j").unwrap();
    let k = join(z2.clone(), z3, 4).unwrap();
    let rep = verify_join_axioms(&k, 4, 1e-12).unwrap();
    r.check(
        "6/axioms",
        rep.passed && rep.max_deviation() < 1e-12,
        format!(
            "{} elements, {} triples, max deviation {:.1e} (< 1e-12)",
            rep.elements,
            rep.triples,
            rep.max_deviation()
        ),
    );
    let dual = join_dual_enumerate(&k, 1e-10).unwrap();
    let elems = finite_elements(&k).unwrap();
    let verified = dual
        .iter()
        .filter(|c| verify_multiplicative(&k, &elems, *c).unwrap() <= 1e-10)
        .count();
    // On ℤ₂ ∨ ℤ₃ the dual is {1} ∪ {sign of ℤ₂ extended by 0} ∪ {ω, ω² on ℤ₃ extended by 1}.
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let expected: Vec<Vec<Complex64>> = vec![
        vec![1.0.into(), 1.0.into(), 1.0.into(), 1.0.into()],
        vec![1.0.into(), (-1.0).into(), 0.0.into(), 0.0.into()],
        vec![1.0.into(), 1.0.into(), w, w * w],
        vec![1.0.into(), 1.0.into(), w * w, w],
    ];
    let found = expected
        .iter()
        .filter(|row| {
            dual.iter().any(|c| {
                elems
                    .iter()
                    .zip(row.iter())
                    .all(|(&x, &v)| (c.value(x) - v).norm() < 1e-9)
            })
        })
        .count();
    r.check(
        "6/dual",
        dual.len() == 4 && verified == 4 && found == 4,
        format!(
            "{} characters, {verified} multiplicative, {found}/4 match the known dual",
            dual.len()
        ),
    );
    let th = Thresholds::default();
    for (a, b, x) in [(4.0, 2.0, "xstar"), (4.0, 2.0, "0"), (2.0, 4.0, "s0")] {
        let f = Arc::new(RecursionFamily::graph(a, b).unwrap());
        let xv = f.named_point(x).unwrap_or_else(|| x.parse().unwrap());
        let kk = join(z2.clone(), PolyTable::new(f.clone()), 4).unwrap();
        let tr = transfer_check(&kk, PolyCharacter::new(f.clone(), xv), 128, &th).unwrap();
        r.check(
            &format!("6/transfer/{}/{x}", f.name()),
            tr.verdict_j.tag() == tr.verdict_k.tag(),
            format!("J: {}, K: {}", tr.verdict_j.tag(), tr.verdict_k.tag()),
        );
    }
}

fn two_variable(r: &mut Report) {
    let t = DiscTable::new(1.0, 3).unwrap();
    let idx: Vec<(usize, usize)> = (0..=3usize).flat_map(|p| (0..=3 - p).map(move |q| (p, q))).collect();
    let mut min_c = f64::INFINITY;
    let mut sum_dev = 0.0_f64;
    for &p in &idx {
        for &q in &idx {
            let m = t.convolve_points(p, q).unwrap();
            min_c = min_c.min(m.min_weight());
            sum_dev = sum_dev.max((m.total() - 1.0).abs());
        }
    }
    r.check(
        "7/disc/linearization",
        min_c >= -1e-8 && sum_dev <= 1e-6,
        format!("degrees <= 3: min coefficient {min_c:.3e} (>= -1e-8), sums ±{sum_dev:.1e} (<= 1e-6)"),
    );
    let z = Complex64::new(0.6, 0.0);
    let rep = decay_probe_pairs(|(m, n)| disc_character(1.0, m, n, z).norm(), (1, 1), 400).unwrap();
    r.check(
        "7/disc/diagonal_slope",
        (rep.slope + 1.5).abs() <= 0.3,
        format!("slope {:.3} (−1.5 ± 0.3)", rep.slope),
    );

    let fa = Arc::new(RecursionFamily::jacobi(1.0, 0.0).unwrap());
    let fb = Arc::new(RecursionFamily::jacobi(0.5, -0.5).unwrap());
    let k = ProductTable::new(PolyTable::new(fa.clone()), PolyTable::new(fb.clone()));
    let mut worst = 0.0_f64;
    for (x, y) in [(0.3, -0.2), (-1.0, -1.0), (0.9, 0.1)] {
        let ca = PolyCharacter::new(fa.clone(), x);
        let cb = PolyCharacter::new(fb.clone(), y);
        let f1: WeightedSequence<usize> = [(0, 0.5), (2, -1.25), (5, 0.75)].into_iter().collect();
        let g1: WeightedSequence<usize> = [(1, 2.0), (3, 0.5), (4, -0.3)].into_iter().collect();
        let prod: WeightedSequence<(usize, usize)> = f1
            .iter()
            .flat_map(|(i, u)| g1.iter().map(move |(j, v)| ((i, j), u * v)))
            .collect();
        let lhs = fourier(
            &k,
            &prod,
            &ProductCharacter {
                first: &ca,
                second: &cb,
            },
        )
        .unwrap();
        let rhs = fourier(&k.first, &f1, &ca).unwrap() * fourier(&k.second, &g1, &cb).unwrap();
        worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
    }
    r.check(
        "7/koornwinder/factorization",
        worst <= 1e-10,
        format!("max rel deviation {worst:.1e} (<= 1e-10)"),
    );
}

fn orthogonality(r: &mut Report) {
    for f in [
        RecursionFamily::chebyshev(),
        RecursionFamily::pollaczek(0.5, 1.0).unwrap(),
        RecursionFamily::graph(2.0, 4.0).unwrap(),
    ] {
        let rep = orthogonality_check(&f, 10, 64).unwrap();
        r.check(
            &format!("8/{}", f.name()),
            rep.deviation < 1e-6,
            format!(
                "n,m <= 10: deviation {:.1e} with {} nodes (< 1e-6)",
                rep.deviation, rep.nodes
            ),
        );
    }
    // Independent Gauss–Chebyshev rule for the arcsine measure.
    let f = RecursionFamily::chebyshev();
    let q = 64;
    let mut dev = 0.0_f64;
    let nodes: Vec<f64> = (0..q)
        .map(|j| ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * q) as f64).cos())
        .collect();
    let vals: Vec<Vec<f64>> = nodes.iter().map(|&x| f.eval(x, 10)).collect();
    for n in 0..=10 {
        for m in 0..=10 {
            let g: f64 = vals.iter().map(|p| p[n] * p[m]).sum::<f64>() / q as f64;
            let h = |k: usize| if k == 0 { 1.0_f64 } else { 2.0 };
            let target = if n == m { 1.0 } else { 0.0 };
            dev = dev.max(((h(n) * h(m)).sqrt() * g - target).abs());
        }
    }
    r.check(
        "8/chebyshev/gauss_chebyshev",
        dev < 1e-6,
        format!("independent rule deviation {dev:.1e} (< 1e-6)"),
    );
}

fn derivation(r: &mut Report) {
    for f in families() {
        let name = f.name();
        let rep = derivation_probe(Arc::new(f), 0.3, 64, 50, 11).unwrap();
        r.check(
            &format!("9/{name}"),
            rep.max_residual < 1e-8,
            format!(
                "product rule residual {:.1e} over {} pairs (< 1e-8)",
                rep.max_residual, rep.pairs
            ),
        );
    }
    let (_, d) = RecursionFamily::chebyshev().eval_with_derivative(1.0, 20);
    let bad: Vec<usize> = (0..=20).filter(|&n| d[n] != (n * n) as f64).collect();
    r.check(
        "9/chebyshev/P'(1)",
        bad.is_empty(),
        format!("P'_n(1) = n² exactly for n <= 20 (mismatches: {bad:?})"),
    );
}

#[test]
fn acceptance() {
    let mut r = Report { lines: Vec::new() };
    structure(&mut r);
    haar(&mut r);
    graph_constants(&mut r);
    classification(&mut r);
    reiter(&mut r);
    joins(&mut r);
    two_variable(&mut r);
    orthogonality(&mut r);
    derivation(&mut r);

    let known: BTreeSet<&str> = KNOWN_RED.iter().copied().collect();
    let failed: Vec<&str> = r.lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
    let unexpected: Vec<&str> = failed.iter().copied().filter(|id| !known.contains(id)).collect();
    println!(
        "acceptance: {} checks, {} passed, {} failed ({} known red)",
        r.lines.len(),
        r.lines.len() - failed.len(),
        failed.len(),
        failed.len() - unexpected.len()
    );
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}
