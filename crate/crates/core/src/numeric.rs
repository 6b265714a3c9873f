//! Small numerical helpers shared across modules.

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `ln(exp(a) + exp(b))` without overflow.
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Log-sum-exp over an iterator of log-values.
pub fn log_sum<I: IntoIterator<Item = f64>>(logs: I) -> f64 {
    let logs: Vec<f64> = logs.into_iter().collect();
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi.is_infinite() {
        return hi;
    }
    hi + compensated_sum(logs.iter().map(|l| (l - hi).exp())).ln()
}

/// Least-squares slope of `ys` against `xs`. Returns NaN for fewer than two points.
pub fn lsq_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return f64::NAN;
    }
    let mx = xs[..n].iter().sum::<f64>() / n as f64;
    let my = ys[..n].iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for i in 0..n {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}

/// Natural log clamped away from `-inf` so that slope fits stay finite.
pub fn safe_ln(v: f64) -> f64 {
    v.abs().max(f64::MIN_POSITIVE).ln()
}

/// Shortest round-trip text for `v`, switching to exponent form for very
/// small or very large magnitudes. Used for CSV cells.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let v = vec![1.0, 1e-16, 1e-16, -1.0];
        assert!((compensated_sum(v) - 2e-16).abs() < 1e-30);
    }

    #[test]
    fn log_sum_matches_direct() {
        let xs = [0.1_f64, 2.0, 3.5];
        let direct = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        assert!((log_sum(xs) - direct).abs() < 1e-14);
        assert!((log_add(1.0, 2.0) - (1f64.exp() + 2f64.exp()).ln()).abs() < 1e-14);
        assert!(log_sum(Vec::<f64>::new()) == f64::NEG_INFINITY);
    }

    #[test]
    fn slope_of_a_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        assert!((lsq_slope(&xs, &ys) - 3.0).abs() < 1e-12);
        assert!(lsq_slope(&[1.0], &[1.0]).is_nan());
    }

    #[test]
    fn fmt_num_switches_to_exponent() {
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(3e-20), "3e-20");
        assert_eq!(fmt_num(-2.5e17), "-2.5e17");
        assert_eq!(fmt_num(12.0), "12");
    }
}
