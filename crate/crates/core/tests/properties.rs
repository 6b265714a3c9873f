use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::Arc;

use hyplab_core::hypercore::{convolve, convolve_measures, fourier, measure_distance, translate, WeightedSequence};
use hyplab_core::joins::{extend_character, haar_invariance, join};
use hyplab_core::multivar::{disc_character, ProductCharacter, ProductTable};
use hyplab_core::polyfam::linearize;
use hyplab_core::{Character, FiniteHypergroup, Hypergroup, PointMeasure, PolyCharacter, PolyTable, RecursionFamily};

fn family(i: usize) -> RecursionFamily {
    match i {
        0 => RecursionFamily::chebyshev(),
        1 => RecursionFamily::jacobi(0.5, -0.5).unwrap(),
        2 => RecursionFamily::assoc_legendre(1.0).unwrap(),
        3 => RecursionFamily::pollaczek(0.5, 1.0).unwrap(),
        4 => RecursionFamily::soradi(2.0).unwrap(),
        5 => RecursionFamily::graph(2.0, 4.0).unwrap(),
        _ => RecursionFamily::graph(3.0, 2.0).unwrap(),
    }
}

fn sparse(max_index: usize) -> impl Strategy<Value = WeightedSequence<usize>> {
    prop::collection::vec((0..=max_index, -2.0f64..2.0), 1..5).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linearization_is_symmetric_with_band_support(fi in 0usize..7, n in 0usize..18, m in 0usize..18) {
        let f = family(fi);
        let a = linearize(&f, n, m).unwrap();
        let b = linearize(&f, m, n).unwrap();
        prop_assert!(measure_distance(&a, &b) < 1e-10);
        let lo = n.abs_diff(m);
        for &(t, w) in a.atoms() {
            prop_assert!(t >= lo && t <= n + m, "atom {t} outside [{lo}, {}]", n + m);
            prop_assert!(w >= -1e-12);
        }
        prop_assert!((a.total() - 1.0).abs() < 1e-10);
        prop_assert!(a.mass_at(n + m) > 0.0);
    }

    #[test]
    fn haar_reversal_identity(fi in 0usize..7, x in 0usize..10, y in 0usize..10, t in 0usize..20) {
        // h(y) p(x, y)({t}) = h(t) p(x, t)({y}); every index is self-inverse here.
        let k = PolyTable::new(Arc::new(family(fi)));
        let (hy, ht) = (k.haar(y).unwrap(), k.haar(t).unwrap());
        let lhs = hy * k.convolve_points(x, y).unwrap().mass_at(t);
        let rhs = ht * k.convolve_points(x, t).unwrap().mass_at(y);
        // Coefficients that vanish exactly carry round-off of order 1e-16.
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(rhs.abs()) + 1e-12 * hy.max(ht));
    }

    #[test]
    fn convolution_of_point_masses_is_associative(fi in 0usize..7, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let k = PolyTable::new(Arc::new(family(fi)));
        let da = PointMeasure::dirac(a);
        let db = PointMeasure::dirac(b);
        let dc = PointMeasure::dirac(c);
        let left = convolve_measures(&k, &convolve_measures(&k, &da, &db).unwrap(), &dc).unwrap();
        let right = convolve_measures(&k, &da, &convolve_measures(&k, &db, &dc).unwrap()).unwrap();
        prop_assert!(measure_distance(&left, &right) < 1e-10);
    }

    #[test]
    fn fourier_is_multiplicative(fi in 0usize..7, f in sparse(8), g in sparse(8), x in -1.0f64..1.0) {
        let fam = Arc::new(family(fi));
        let k = PolyTable::new(fam.clone());
        let alpha = PolyCharacter::new(fam, x);
        let fg = convolve(&k, &f, &g).unwrap();
        let lhs = fourier(&k, &fg, &alpha).unwrap();
        let rhs = fourier(&k, &f, &alpha).unwrap() * fourier(&k, &g, &alpha).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn translation_preserves_integral(fi in 0usize..7, f in sparse(8), x in 0usize..8) {
        // Σ h (T_x f) = Σ h f, the Haar invariance.
        let k = PolyTable::new(Arc::new(family(fi)));
        let tf = translate(&k, x, &f).unwrap();
        let sum = |s: &WeightedSequence<usize>| -> f64 { s.iter().map(|(n, v)| k.haar(n).unwrap() * v).sum() };
        let (a, b) = (sum(&tf), sum(&f));
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0));
    }

    #[test]
    fn characters_are_multiplicative(fi in 0usize..7, n in 0usize..15, m in 0usize..15, x in -1.0f64..1.0) {
        let fam = Arc::new(family(fi));
        let k = PolyTable::new(fam.clone());
        let alpha = PolyCharacter::new(fam, x);
        let p = k.convolve_points(n, m).unwrap();
        let lhs: f64 = p.atoms().iter().map(|&(t, w)| w * alpha.at(t)).sum();
        prop_assert!((lhs - alpha.at(n) * alpha.at(m)).abs() < 1e-10);
    }

    #[test]
    fn cyclic_groups_are_hypergroups(n in 2usize..7, a in 0usize..7, b in 0usize..7, c in 0usize..7) {
        let k = FiniteHypergroup::cyclic(n, "g").unwrap();
        let (a, b, c) = (a % n, b % n, c % n);
        let da = PointMeasure::dirac(a);
        let dc = PointMeasure::dirac(c);
        let left = convolve_measures(&k, &convolve_measures(&k, &da, &PointMeasure::dirac(b)).unwrap(), &dc).unwrap();
        let right = convolve_measures(&k, &da, &convolve_measures(&k, &PointMeasure::dirac(b), &dc).unwrap()).unwrap();
        prop_assert!(measure_distance(&left, &right) < 1e-12);
        prop_assert!((k.convolve_points(a, k.involution(a)).unwrap().mass_at(k.identity()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn join_haar_is_invariant(h in 2usize..4, j in 2usize..5, seed in 0u64..1000) {
        let k = join(FiniteHypergroup::cyclic(h, "h").unwrap(), FiniteHypergroup::cyclic(j, "j").unwrap(), 4).unwrap();
        let window = k.ball(1);
        prop_assert!(haar_invariance(&k, &window, 8, seed).unwrap() < 1e-10);
    }

    #[test]
    fn extended_characters_stay_multiplicative(x in -1.0f64..1.0) {
        let fam = Arc::new(RecursionFamily::graph(3.0, 2.0).unwrap());
        let k = join(FiniteHypergroup::cyclic(2, "h").unwrap(), PolyTable::new(fam.clone()), 4).unwrap();
        let alpha = extend_character(PolyCharacter::new(fam, x));
        let elems = k.ball(2);
        for &u in &elems {
            for &v in &elems {
                let p = k.convolve_points(u, v).unwrap();
                let lhs: Complex64 = p.atoms().iter().map(|&(t, w)| alpha.value(t) * w).sum();
                prop_assert!((lhs - alpha.value(u) * alpha.value(v)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn disc_characters_are_hermitian(alpha in 0.0f64..3.0, m in 0usize..8, n in 0usize..8, r in 0.0f64..1.0, th in 0.0f64..std::f64::consts::TAU) {
        let z = Complex64::from_polar(r, th);
        let a = disc_character(alpha, m, n, z);
        let b = disc_character(alpha, n, m, z);
        prop_assert!((a - b.conj()).norm() < 1e-12);
        prop_assert!(a.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn product_fourier_factorizes(f in sparse(6), g in sparse(6), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let fa = Arc::new(RecursionFamily::jacobi(1.0, 0.0).unwrap());
        let fb = Arc::new(RecursionFamily::jacobi(0.0, 0.0).unwrap());
        let k = ProductTable::new(PolyTable::new(fa.clone()), PolyTable::new(fb.clone()));
        let ca = PolyCharacter::new(fa, x);
        let cb = PolyCharacter::new(fb, y);
        let prod: WeightedSequence<(usize, usize)> =
            f.iter().flat_map(|(i, u)| g.iter().map(move |(j, v)| ((i, j), u * v))).collect();
        let lhs = fourier(&k, &prod, &ProductCharacter { first: &ca, second: &cb }).unwrap();
        let rhs = fourier(&k.first, &f, &ca).unwrap() * fourier(&k.second, &g, &cb).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }
}
