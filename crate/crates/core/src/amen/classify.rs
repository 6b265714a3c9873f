use super::probes::{c0_from_shells, estimate_from};
use super::verdict::{Certificate, DecayVerdict, Diagnostics, Thresholds, Verdict, Witness};
use crate::error::{Error, Result};
use crate::hypercore::{norm_profile, Character, Hypergroup};

/// Mass that `p(x, y)` puts on levels of the wrong parity, maximized over
/// `x, y` with level at most `radius`.
pub fn parity_leak<K: Hypergroup>(k: &K, radius: usize) -> Result<f64> {
    let elems = k.ball(radius);
    let mut leak = 0.0_f64;
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i..] {
            let parity = (k.level(x) + k.level(y)) % 2;
            let wrong: f64 = k
                .convolve_points(x, y)?
                .atoms()
                .iter()
                .filter(|(t, _)| k.level(*t) % 2 != parity)
                .map(|a| a.1)
                .sum();
            leak = leak.max(wrong);
        }
    }
    Ok(leak)
}

/// Decides α-amenability from the probe window `0..=N` (levels).
///
/// 1. `α ≡ 1` → amenable (trivial character).
/// 2. `α = (-1)^level` and the table is parity graded → amenable.
/// 3. `α ∈ ℓ¹(h)` → amenable, with the ℓ² mean as certificate.
/// 4. `α ∈ C₀` and `α ∉ ℓ¹(h)` → not amenable.
/// 5. otherwise inconclusive, with the full diagnostics.
pub fn classify<K: Hypergroup, C: Character<K::Index> + ?Sized>(
    k: &K,
    alpha: &C,
    n: usize,
    th: &Thresholds,
) -> Result<Verdict> {
    if n < 32 {
        return Err(Error::Precondition(format!("classify needs N >= 32, got {n}")));
    }
    let window: Vec<K::Index> = (0..=n).flat_map(|r| k.shell(r)).collect();
    let trivial_dev = window
        .iter()
        .map(|&x| (alpha.value(x) - 1.0).norm())
        .fold(0.0, f64::max);
    if trivial_dev <= th.trivial_tol {
        return Ok(Verdict::Amenable {
            certificate: Certificate::TrivialCharacter { window: n },
        });
    }
    let parity_dev = window
        .iter()
        .map(|&x| {
            let s = if k.level(x) % 2 == 0 { 1.0 } else { -1.0 };
            (alpha.value(x) - s).norm()
        })
        .fold(0.0, f64::max);
    if parity_dev <= th.parity_tol {
        let leak = parity_leak(k, th.parity_radius.min(n))?;
        if leak <= th.parity_leak {
            return Ok(Verdict::Amenable {
                certificate: Certificate::ParityTwist { window: n, leak },
            });
        }
    }
    let profile = norm_profile(k, alpha, n)?;
    let pm = estimate_from(profile.l2.clone(), n);
    if profile.l1.convergent {
        return Ok(Verdict::Amenable {
            certificate: Certificate::L2Mean {
                point_mass: pm.value,
                l1_sum: profile.l1.limit(),
            },
        });
    }
    let c0 = c0_from_shells(profile.shell_max.clone(), alpha.asymptotic_slope(), th);
    if c0.verdict == DecayVerdict::Decays && profile.l1.divergent {
        return Ok(Verdict::NotAmenable {
            witness: Witness {
                point_mass: pm.value,
                c0_slope: c0.closed_form_slope.unwrap_or(c0.slope),
                tail_max: c0.tail_max,
                l1_divergent: true,
                l2_divergent: pm.divergent,
            },
        });
    }
    let reason = match c0.verdict {
        DecayVerdict::BoundedAway => "character does not vanish at infinity and is not summable",
        DecayVerdict::Inconclusive => "decay evidence is mixed",
        DecayVerdict::Decays => "ℓ¹ profile is neither convergent nor divergent",
    };
    Ok(Verdict::Inconclusive {
        report: Box::new(Diagnostics {
            reason: reason.into(),
            point_mass: pm,
            c0,
            l1: profile.l1,
        }),
    })
}
